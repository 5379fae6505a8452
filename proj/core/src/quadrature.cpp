#include "qmelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qmelab {

namespace {

using gk15 = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         const QuadratureOptions& opt, double* err_out) {
    double err = 0.0;
    const double val = gk15::integrate(f, a, b, opt.max_depth, opt.rel_tol, &err);
    *err_out = err;
    return val;
}

// Segment bounds of [a, b] split at the interior breakpoints.
std::vector<double> segment_bounds(double a, double b,
                                   const std::vector<double>& breakpoints) {
    std::vector<double> pts{a};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    return pts;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt, const std::vector<double>& breakpoints) {
    if (a == b) return 0.0;
    const auto pts = segment_bounds(a, b, breakpoints);
    double total = 0.0;
    double worst_err = 0.0, worst_allowed = 0.0;
    bool converged = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double e = 0.0;
        const double v = integrate_segment(f, pts[i], pts[i + 1], opt, &e);
        total += v;
        const double allowed = opt.fail_tol * std::max(1.0, std::abs(v));
        if (e > allowed && e > worst_err) {
            converged = false;
            worst_err = e;
            worst_allowed = allowed;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "integrate: quadrature did not converge, achieved error " << worst_err
            << " (allowed " << worst_allowed << ") for value " << total;
        throw NumericError(msg.str());
    }
    return total;
}

double pv_cauchy(const std::function<double(double)>& g, double a, double b, double c,
                 const QuadratureOptions& opt, const std::vector<double>& breakpoints) {
    if (a == b) return 0.0;
    if (c <= a || c >= b) {
        return integrate([&](double x) { return g(x) / (x - c); }, a, b, opt,
                         breakpoints);
    }
    const double gc = g(c);
    auto subtracted = [&](double x) {
        const double dx = x - c;
        if (std::abs(dx) < 1e-300) return 0.0; // nodes never land exactly on c
        return (g(x) - gc) / dx;
    };
    // Integrate the two sides separately so the rule refines toward c.
    const double smooth = integrate(subtracted, a, c, opt, breakpoints) +
                          integrate(subtracted, c, b, opt, breakpoints);
    return smooth + gc * std::log((b - c) / (c - a));
}

} // namespace qmelab
