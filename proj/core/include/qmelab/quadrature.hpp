// quadrature.hpp — Adaptive Gauss–Kronrod integration and Cauchy
// principal-value integrals via explicit pole subtraction. Piecewise-defined
// integrands (tabulated spectral densities) pass their breakpoints so each
// smooth segment converges independently.

#pragma once

#include <functional>
#include <vector>

#include "qmelab/types.hpp"

namespace qmelab {

struct QuadratureOptions {
    double rel_tol = 1e-9;  // target passed to the adaptive rule
    // Non-convergence is declared above this reported relative error. It sits
    // well above rel_tol because the error estimate is conservative near
    // subtracted PV poles, where evaluations carry cancellation noise.
    double fail_tol = 1e-6;
    unsigned max_depth = 17;
};

// ∫_a^b f(x) dx, adaptive G7/K15. Throws NumericError (reporting the achieved
// error) when the estimate does not meet the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {},
                 const std::vector<double>& breakpoints = {});

// PV ∫_a^b g(x)/(x - c) dx. For c inside (a, b) the singularity is removed by
// the subtraction g(x) -> g(x) - g(c), whose PV integral is g(c)·log((b-c)/(c-a)).
// Outside [a, b] this is an ordinary integral.
double pv_cauchy(const std::function<double(double)>& g, double a, double b, double c,
                 const QuadratureOptions& opt = {},
                 const std::vector<double>& breakpoints = {});

} // namespace qmelab
