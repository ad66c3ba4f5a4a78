#pragma once

#include <utility>

#include "nhirota/types.hpp"

namespace nh {

/// Function value with an advisory absolute-error estimate.
struct SpecialValue {
    cplx value;
    double err_est = 0.0;
};

/// Complex Gamma function. Throws DomainError within 1e-12 of a pole.
SpecialValue gamma_complex(cplx z);

/// 1/Gamma(z), entire; never throws.
cplx rgamma(cplx z);

/// Parabolic cylinder function D_a(k) for |a| <= 5, |k| <= 50.
SpecialValue parabolic_cylinder_D(cplx a, cplx k);

/// D_a(k) together with its k-derivative.
std::pair<SpecialValue, SpecialValue> parabolic_cylinder_D_pair(cplx a, cplx k);

namespace detail {
// Unchecked evaluation used by the public entry points (and by recurrence tests
// that need orders slightly outside |a| <= 5).
std::pair<SpecialValue, SpecialValue> pcf_unchecked(cplx a, cplx k);
}  // namespace detail

}  // namespace nh
