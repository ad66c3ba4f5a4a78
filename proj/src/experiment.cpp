#include "nhirota/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nhirota/io.hpp"
#include "nhirota/parallel.hpp"

namespace nh {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
}

const json& section(const json& root, const char* name) {
    if (!root.contains(name)) throw ConfigError(std::string("config: missing section '") + name + "'");
    const json& s = root.at(name);
    if (!s.is_object()) throw ConfigError(std::string("config: section '") + name + "' must be an object");
    return s;
}

double num(const json& obj, const char* key, std::optional<double> def, const std::string& where) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw ConfigError("config: missing field '" + where + "." + key + "'");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("config: field '" + where + "." + key + "' must be a number");
    return v.get<double>();
}

std::size_t count(const json& obj, const char* key, std::size_t def, const std::string& where) {
    if (!obj.contains(key)) return def;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw ConfigError("config: field '" + where + "." + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

bool flag(const json& obj, const char* key, bool def, const std::string& where) {
    if (!obj.contains(key)) return def;
    if (!obj.at(key).is_boolean()) throw ConfigError("config: field '" + where + "." + key + "' must be a boolean");
    return obj.at(key).get<bool>();
}

RVec numbers(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError("config: '" + where + "' must be an array of numbers");
    RVec out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("config: '" + where + "' must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::string resolve(const std::string& base, const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base) / p).string();
}

void ensure_dir(const std::string& d) {
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec) throw ConfigError("cannot create output directory " + d);
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    ensure_dir(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path);
    os << text;
}

void check_phase(const Params& m, double xi) {
    if (m.beta == 0.0) throw ConfigError("evaluation needs beta != 0");
    const double disc = m.alpha * m.alpha - 3.0 * m.beta * xi;
    if (!(disc > 0.0)) throw ConfigError("degenerate phase at xi = " + fmt17(xi) + " (alpha^2 - 3 beta xi <= 0)");
}

}  // namespace

std::vector<std::pair<double, double>> ExperimentConfig::evaluation_points() const {
    std::vector<std::pair<double, double>> pts;
    if (ray_xi)
        for (double t : ray_t) pts.push_back({*ray_xi * t, t});
    pts.insert(pts.end(), points.begin(), points.end());
    return pts;
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(root, "config", {"model", "datum", "spectral", "evolution", "evaluation", "strict_paper_constants",
                                    "seed", "output_dir", "scattering_csv"});
    ExperimentConfig cfg;

    const json& m = section(root, "model");
    reject_unknown(m, "model", {"alpha", "beta", "kappa"});
    cfg.model.alpha = num(m, "alpha", std::nullopt, "model");
    cfg.model.beta = num(m, "beta", std::nullopt, "model");
    if (!m.contains("kappa") || !m.at("kappa").is_number_integer()) throw ConfigError("config: missing field 'model.kappa' (+1 or -1)");
    cfg.model.kappa = m.at("kappa").get<int>();
    cfg.model.validate();

    const json& d = section(root, "datum");
    reject_unknown(d, "datum", {"kind", "amplitude", "width", "center", "chirp", "csv"});
    if (d.contains("csv")) {
        if (!d.at("csv").is_string()) throw ConfigError("config: 'datum.csv' must be a path");
        cfg.datum.csv_path = resolve(base_dir, d.at("csv").get<std::string>());
        if (!fs::exists(cfg.datum.csv_path)) throw ConfigError("config: datum file not found: " + cfg.datum.csv_path);
        cfg.datum.kind = "csv";
    } else {
        if (!d.contains("kind") || !d.at("kind").is_string()) throw ConfigError("config: missing field 'datum.kind'");
        cfg.datum.kind = d.at("kind").get<std::string>();
        static const std::set<std::string> kinds = {"zero", "gaussian", "gaussian_chirp", "sech", "constant"};
        if (!kinds.count(cfg.datum.kind)) throw ConfigError("config: unknown datum kind '" + cfg.datum.kind + "'");
        cfg.datum.amplitude = num(d, "amplitude", 0.3, "datum");
        cfg.datum.width = num(d, "width", 1.0, "datum");
        cfg.datum.center = num(d, "center", 0.0, "datum");
        cfg.datum.chirp = num(d, "chirp", 0.0, "datum");
        if (!(cfg.datum.width > 0.0)) throw ConfigError("config: datum.width must be positive");
    }

    if (root.contains("spectral")) {
        const json& s = section(root, "spectral");
        reject_unknown(s, "spectral", {"z_max", "n_z", "x_max", "n_x", "winding", "winding_box", "winding_samples"});
        cfg.z_max = num(s, "z_max", 6.0, "spectral");
        cfg.n_z = count(s, "n_z", 513, "spectral");
        const double xm = num(s, "x_max", 20.0, "spectral");
        cfg.scatter_grid = {-xm, xm, count(s, "n_x", 1024, "spectral")};
        cfg.check_winding = flag(s, "winding", true, "spectral");
        if (s.contains("winding_box")) {
            const RVec b = numbers(s.at("winding_box"), "spectral.winding_box");
            if (b.size() != 2 || !(b[0] > 0.0) || !(b[1] > 0.0))
                throw ConfigError("config: spectral.winding_box must be [half_width, height]");
            cfg.winding.half_width = b[0];
            cfg.winding.height = b[1];
        }
        cfg.winding.samples_per_edge = int(count(s, "winding_samples", 96, "spectral"));
        if (!(cfg.z_max > 0.0) || cfg.n_z < 4) throw ConfigError("config: spectral grid needs z_max > 0 and n_z >= 4");
    }
    cfg.scatter_grid.validate();

    cfg.evolution.alpha = cfg.model.alpha;
    cfg.evolution.beta = cfg.model.beta;
    cfg.evolution.kappa = cfg.model.kappa;
    if (root.contains("evolution")) {
        const json& e = section(root, "evolution");
        reject_unknown(e, "evolution", {"x_max", "n", "dt", "t_end", "dealias", "output_times", "blowup", "linear",
                                        "require_decay"});
        const double xm = num(e, "x_max", 200.0, "evolution");
        cfg.evolution.grid = {-xm, xm, count(e, "n", 8192, "evolution")};
        cfg.evolution.dt = num(e, "dt", 0.01, "evolution");
        cfg.evolution.t_end = num(e, "t_end", 1.0, "evolution");
        cfg.evolution.dealias = num(e, "dealias", 2.0 / 3.0, "evolution");
        cfg.evolution.blowup = num(e, "blowup", 1e6, "evolution");
        cfg.evolution.linear = flag(e, "linear", false, "evolution");
        cfg.evolution.require_decay = flag(e, "require_decay", true, "evolution");
        if (e.contains("output_times")) cfg.evolution.output_times = numbers(e.at("output_times"), "evolution.output_times");
        cfg.evolution.validate();
    }

    if (root.contains("evaluation")) {
        const json& v = section(root, "evaluation");
        reject_unknown(v, "evaluation", {"xi", "t", "points"});
        if (v.contains("xi")) {
            cfg.ray_xi = num(v, "xi", std::nullopt, "evaluation");
            if (!v.contains("t")) throw ConfigError("config: evaluation.xi needs evaluation.t");
            cfg.ray_t = numbers(v.at("t"), "evaluation.t");
            for (std::size_t i = 0; i < cfg.ray_t.size(); ++i) {
                if (!(cfg.ray_t[i] > 0.0)) throw ConfigError("config: evaluation times must be positive");
                if (i && cfg.ray_t[i] <= cfg.ray_t[i - 1]) throw ConfigError("config: evaluation.t must be strictly increasing");
            }
        }
        if (v.contains("points")) {
            if (!v.at("points").is_array()) throw ConfigError("config: evaluation.points must be [[x, t], ...]");
            for (const auto& p : v.at("points")) {
                const RVec xt = numbers(p, "evaluation.points");
                if (xt.size() != 2 || !(xt[1] > 0.0)) throw ConfigError("config: evaluation.points entries must be [x, t>0]");
                cfg.points.push_back({xt[0], xt[1]});
            }
        }
        for (const auto& [x, t] : cfg.evaluation_points()) check_phase(cfg.model, x / t);
    }

    cfg.strict_paper_constants = flag(root, "strict_paper_constants", true, "config");
    if (root.contains("seed")) {
        if (!root.at("seed").is_number_unsigned()) throw ConfigError("config: seed must be a nonnegative integer");
        cfg.seed = root.at("seed").get<std::uint64_t>();
    }
    if (root.contains("output_dir")) {
        if (!root.at("output_dir").is_string()) throw ConfigError("config: output_dir must be a string");
        cfg.output_dir = root.at("output_dir").get<std::string>();
    }
    if (root.contains("scattering_csv")) {
        if (!root.at("scattering_csv").is_string()) throw ConfigError("config: scattering_csv must be a path");
        cfg.scattering_csv = resolve(base_dir, root.at("scattering_csv").get<std::string>());
        if (!fs::exists(cfg.scattering_csv)) throw ConfigError("config: scattering table not found: " + cfg.scattering_csv);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    const std::string base = fs::path(path).parent_path().string();
    return parse_config(ss.str(), base.empty() ? "." : base);
}

CsvTable scattering_table(const ScatteringData& sd) {
    CsvTable t;
    t.header = {"z",      "Re_s11", "Im_s11", "Re_s12", "Im_s12", "Re_s21", "Im_s21",
                "Re_s22", "Im_s22", "Re_r",   "Im_r",   "Re_rt",  "Im_rt"};
    const bool has_r = sd.r.size() == sd.size();
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const cplx r = has_r ? sd.r[i] : cplx(std::nan(""), std::nan(""));
        const cplx rt = has_r ? sd.rtilde[i] : cplx(std::nan(""), std::nan(""));
        t.rows.push_back({sd.zgrid[i], sd.s11[i].real(), sd.s11[i].imag(), sd.s12[i].real(), sd.s12[i].imag(),
                          sd.s21[i].real(), sd.s21[i].imag(), sd.s22[i].real(), sd.s22[i].imag(), r.real(), r.imag(),
                          rt.real(), rt.imag()});
    }
    return t;
}

ScatteringData scattering_from_table(const CsvTable& t, const Params& model) {
    ScatteringData sd;
    sd.kappa = model.kappa;
    sd.alpha = model.alpha;
    sd.beta = model.beta;
    auto c = [&](const char* re, const char* im) {
        const RVec a = t.col(re), b = t.col(im);
        CVec v(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) v[i] = {a[i], b[i]};
        return v;
    };
    sd.zgrid = t.col("z");
    sd.s11 = c("Re_s11", "Im_s11");
    sd.s12 = c("Re_s12", "Im_s12");
    sd.s21 = c("Re_s21", "Im_s21");
    sd.s22 = c("Re_s22", "Im_s22");
    sd.r = c("Re_r", "Im_r");
    sd.rtilde = c("Re_rt", "Im_rt");
    sd.det_flag.assign(sd.zgrid.size(), 0);
    for (std::size_t i = 1; i < sd.zgrid.size(); ++i)
        if (!(sd.zgrid[i] > sd.zgrid[i - 1])) throw ConfigError("scattering table: z must be strictly increasing");
    return sd;
}

ScatterResult compute_scatter(const ExperimentConfig& cfg) {
    ScatterResult res;
    if (!cfg.scattering_csv.empty()) {
        res.data = scattering_from_table(read_csv(cfg.scattering_csv), cfg.model);
        res.residuals = scattering_residuals(res.data);
        res.report = validate_assumptions(res.data, nullptr);
        return res;
    }
    const ComplexField u0 = make_datum(cfg.datum, cfg.scatter_grid);
    res.potential = build_potential(u0, cfg.model.kappa);
    const JostOptions opt;
    res.data = scattering_matrix(res.potential, uniform_zgrid(cfg.z_max, cfg.n_z), cfg.model, opt);
    res.data = reflection_coefficients(std::move(res.data));
    res.residuals = scattering_residuals(res.data);
    res.report = validate_assumptions(res.data, cfg.check_winding ? &res.potential : nullptr, cfg.winding, opt);
    return res;
}

cplx spectral_sample(const ComplexField& f, double x) {
    const std::size_t n = f.grid.n;
    const double s = (x - f.grid.x_min) / f.grid.h();
    const double sr = std::round(s);
    if (std::abs(s - sr) < 1e-9 && sr >= 0.0 && sr < double(n)) return f.samples[std::size_t(sr)];
    // Periodic sinc interpolation for even n (Dirichlet kernel with split Nyquist term).
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = kPi * (s - double(j)) / double(n);
        const double w = std::sin(double(n) * d) / (double(n) * std::tan(d));
        acc += w * f.samples[j];
    }
    return acc;
}

SlopeFit loglog_slope(const RVec& x, const RVec& y) {
    SlopeFit fit;
    RVec lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) return fit;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t n = lx.size();
    if (n < 2) return fit;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.slope = sxy / sxx;
    if (n > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ly[i] - (my + fit.slope * (lx[i] - mx));
            ss += r * r;
        }
        fit.stderr_ = std::sqrt(ss / double(n - 2) / sxx);
    }
    return fit;
}

namespace {

struct AsymptoticTable {
    std::vector<AsymptoticEvaluation> evals;
    double max_im_nu = 0.0;
};

AsymptoticTable evaluate_asymptotics(const ExperimentConfig& cfg, const ScatterResult& sc) {
    if (!sc.report.pass) {
        std::string msg = "assumption check failed:";
        for (const auto& f : sc.report.failures) msg += " " + f + ";";
        throw AssumptionError(msg);
    }
    const auto pts = cfg.evaluation_points();
    if (pts.empty()) throw ConfigError("config: no evaluation points (section 'evaluation')");
    std::map<double, std::pair<PhaseGeometry, NuProfile>> cache;
    AsymptoticTable tab;
    AsymptoticOptions opt;
    opt.strict_paper_constants = cfg.strict_paper_constants;
    for (const auto& [x, t] : pts) {
        const double xi = x / t;
        auto it = cache.find(xi);
        if (it == cache.end()) {
            const PhaseGeometry g = stationary_points(xi, cfg.model.alpha, cfg.model.beta);
            it = cache.emplace(xi, std::make_pair(g, nu_profile(sc.data, g))).first;
        }
        const auto& [geom, np] = it->second;
        tab.max_im_nu = std::max({tab.max_im_nu, np.nu1.imag(), np.nu2.imag()});
        tab.evals.push_back(leading_order_q(sc.data, np, geom, x, t, opt));
    }
    return tab;
}

std::string report_text(const ScatterResult& sc) {
    std::ostringstream os;
    const auto& r = sc.residuals;
    std::size_t flagged = 0;
    for (int f : sc.data.det_flag) flagged += std::size_t(f);
    os << "det_S_residual = " << fmt17(r.det) << "\n";
    os << "det_S_flagged_points = " << flagged << "\n";
    os << "symmetry_s11_residual = " << fmt17(r.sym11) << "\n";
    os << "symmetry_s22_residual = " << fmt17(r.sym22) << "\n";
    os << "symmetry_s12_residual = " << fmt17(r.sym12) << "\n";
    os << "reflection_identity_residual = " << fmt17(r.identity) << "\n";
    os << "min_arg_margin = " << fmt17(sc.report.min_arg_margin) << "\n";
    os << "min_im_nu_margin = " << fmt17(sc.report.min_im_nu_margin) << "\n";
    os << "max_im_nu = " << fmt17(sc.report.max_im_nu) << "\n";
    if (sc.report.winding) {
        os << "winding = " << *sc.report.winding << "\n";
        os << "winding_raw = " << fmt17(sc.report.winding_raw) << "\n";
    } else {
        os << "winding = NA\n";
    }
    for (const auto& f : sc.report.failures) os << "failure = " << f << "\n";
    os << "pass = " << (sc.report.pass ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace

int run_scatter(const ExperimentConfig& cfg, std::ostream& log) {
    const ScatterResult sc = compute_scatter(cfg);
    write_csv(out_path(cfg, "scattering.csv"), scattering_table(sc.data));
    const std::string rep = report_text(sc);
    write_text(out_path(cfg, "scatter_report.txt"), rep);
    log << rep;
    return sc.report.pass ? kExitOk : kExitAssumption;
}

int run_evolve(const ExperimentConfig& cfg, std::ostream& log) {
    const ComplexField u0 = make_datum(cfg.datum, cfg.evolution.grid);
    const Trajectory tr = evolve(u0, cfg.evolution);
    ensure_dir((fs::path(cfg.output_dir) / "snapshots").string());
    std::ostringstream man;
    man << "format_version = 1\n";
    man << "frames = " << tr.frames.size() << "\n";
    man << "steps = " << tr.steps << "\n";
    man << "grid = " << fmt17(cfg.evolution.grid.x_min) << " " << fmt17(cfg.evolution.grid.x_max) << " "
        << cfg.evolution.grid.n << "\n";
    man << "quasi_power_drift = " << fmt17(tr.quasi_power_drift) << "\n";
    RVec res;
    if (tr.frames.size() >= 3) res = residual(tr, cfg.evolution);
    for (std::size_t i = 0; i < tr.frames.size(); ++i) {
        const ComplexField& f = tr.frames[i];
        char name[64];
        std::snprintf(name, sizeof name, "snapshots/u_%05zu.csv", i);
        CsvTable t;
        t.header = {"x", "Re_u", "Im_u"};
        for (std::size_t j = 0; j < f.grid.n; ++j) t.rows.push_back({f.grid.x(j), f.samples[j].real(), f.samples[j].imag()});
        write_csv(out_path(cfg, name), t);
        double mx = 0.0;
        for (const auto& s : f.samples) mx = std::max(mx, std::abs(s));
        man << "frame." << i << " = time " << fmt17(f.time) << " file " << name << " max_abs " << fmt17(mx)
            << " quasi_power " << fmt17(tr.quasi_power[i].real()) << " " << fmt17(tr.quasi_power[i].imag());
        if (i > 0 && i + 1 < tr.frames.size()) man << " residual " << fmt17(res[i - 1]);
        man << "\n";
    }
    write_text(out_path(cfg, "manifest.txt"), man.str());
    log << "evolved " << tr.frames.size() << " frames in " << tr.steps << " steps; quasi-power drift "
        << fmt17(tr.quasi_power_drift) << "\n";
    return kExitOk;
}

int run_asymptotics(const ExperimentConfig& cfg, std::ostream& log) {
    const ScatterResult sc = compute_scatter(cfg);
    const AsymptoticTable tab = evaluate_asymptotics(cfg, sc);
    CsvTable t;
    t.header = {"x", "t", "Re_q", "Im_q", "abs_q", "xi_order", "Im_nu1", "Im_nu2"};
    for (const auto& e : tab.evals)
        t.rows.push_back({e.x, e.t, e.q_leading.real(), e.q_leading.imag(), std::abs(e.q_leading), e.xi_order,
                          e.diagnostics.at("nu1").imag(), e.diagnostics.at("nu2").imag()});
    write_csv(out_path(cfg, "asymptotics.csv"), t);
    log << "evaluated " << tab.evals.size() << " points\n";
    return kExitOk;
}

CompareResult compute_compare(const ExperimentConfig& cfg, std::ostream& log) {
    const ScatterResult sc = compute_scatter(cfg);
    const AsymptoticTable tab = evaluate_asymptotics(cfg, sc);
    EvolutionConfig ec = cfg.evolution;
    std::set<double> times;
    for (const auto& e : tab.evals) times.insert(e.t);
    ec.output_times.assign(times.begin(), times.end());
    ec.t_end = std::max(ec.t_end, *times.rbegin());
    log << "evolving to t = " << fmt17(ec.t_end) << " on " << ec.grid.n << " points\n";
    const Trajectory tr = evolve(make_datum(cfg.datum, ec.grid), ec);
    CompareResult out;
    out.xi_order = -0.75;
    for (const auto& e : tab.evals) {
        std::size_t k = 0;
        while (tr.frames[k].time != e.t) ++k;
        CompareRow row;
        row.t = e.t;
        row.x = e.x;
        row.q_asy = e.q_leading;
        row.q_pde = spectral_sample(tr.frames[k], e.x);
        row.abs_err = std::abs(row.q_pde - row.q_asy);
        row.rel_err = std::abs(row.q_pde) > 0.0 ? row.abs_err / std::abs(row.q_pde) : std::nan("");
        out.rows.push_back(row);
        out.xi_order = std::max(out.xi_order, e.xi_order);
    }
    out.max_im_nu = tab.max_im_nu;
    RVec ts, ea, er, qa;
    for (const auto& r : out.rows) {
        ts.push_back(r.t);
        ea.push_back(r.abs_err);
        er.push_back(r.rel_err);
        qa.push_back(std::abs(r.q_asy));
    }
    out.err_fit = loglog_slope(ts, ea);
    out.rel_fit = loglog_slope(ts, er);
    out.amp_fit = loglog_slope(ts, qa);
    return out;
}

int run_compare(const ExperimentConfig& cfg, std::ostream& log) {
    if (!cfg.ray_xi && cfg.points.empty()) throw ConfigError("config: compare needs an evaluation section");
    const CompareResult cr = compute_compare(cfg, log);
    CsvTable t;
    t.header = {"t", "x", "abs_q_asy", "abs_q_pde", "abs_err", "rel_err"};
    for (const auto& r : cr.rows) t.rows.push_back({r.t, r.x, std::abs(r.q_asy), std::abs(r.q_pde), r.abs_err, r.rel_err});
    write_csv(out_path(cfg, "compare.csv"), t);
    std::ostringstream os;
    os << "slope_abs_err = " << fmt17(cr.err_fit.slope) << "\n";
    os << "stderr_abs_err = " << fmt17(cr.err_fit.stderr_) << "\n";
    os << "slope_rel_err = " << fmt17(cr.rel_fit.slope) << "\n";
    os << "stderr_rel_err = " << fmt17(cr.rel_fit.stderr_) << "\n";
    os << "slope_abs_q_asy = " << fmt17(cr.amp_fit.slope) << "\n";
    os << "stderr_abs_q_asy = " << fmt17(cr.amp_fit.stderr_) << "\n";
    os << "xi_order = " << fmt17(cr.xi_order) << "\n";
    os << "max_im_nu = " << fmt17(cr.max_im_nu) << "\n";
    os << "predicted_gap = " << fmt17(cr.xi_order - (-0.5 + cr.max_im_nu)) << "\n";
    write_text(out_path(cfg, "compare_fit.txt"), os.str());
    log << os.str();
    return kExitOk;
}

int run_validate(const ExperimentConfig& cfg, std::ostream& log) {
    const auto lines = run_validation_suite(cfg, cfg.seed);
    std::ostringstream os;
    bool ok = true;
    for (const auto& l : lines) {
        os << l.name << " = " << (l.pass ? "PASS" : "FAIL") << " value " << fmt17(l.value) << " tol " << fmt17(l.tol)
           << "\n";
        ok = ok && l.pass;
    }
    os << "overall = " << (ok ? "PASS" : "FAIL") << "\n";
    write_text(out_path(cfg, "validate_manifest.txt"), os.str());
    log << os.str();
    return ok ? kExitOk : kExitAssumption;
}

}  // namespace nh
