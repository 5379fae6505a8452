#include "qmelab/consistency.hpp"

#include <cmath>
#include <random>

#include <Eigen/SVD>

namespace qmelab {

CheckReport CheckReport::make(std::string name, double residual, double tolerance,
                              std::vector<double> grid, std::vector<double> profile) {
    CheckReport r;
    r.check = std::move(name);
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual < tolerance;
    r.grid = std::move(grid);
    r.profile = std::move(profile);
    return r;
}

CheckReport check_gqdb(const GeneratorBuilder& builder, const std::vector<double>& s_grid,
                       double tolerance) {
    const auto& baths = builder.baths();
    const double norm0 = builder.build_zero().matrix.norm();
    std::vector<double> profile;
    profile.reserve(s_grid.size());
    double worst = 0.0;
    for (double s : s_grid) {
        std::vector<double> lam(baths.size()), lam_mapped(baths.size());
        for (std::size_t a = 0; a < baths.size(); ++a) {
            lam[a] = s * baths[a].beta;
            lam_mapped[a] = -lam[a] - baths[a].beta;
        }
        const Mat reversed = reversed_generator(builder.build_bath_tilted(lam)).matrix;
        const Mat adjoint = superop_adjoint(builder.build_bath_tilted(lam_mapped).matrix);
        const double r = (reversed - adjoint).norm() / norm0;
        profile.push_back(r);
        worst = std::max(worst, r);
    }
    return CheckReport::make("gqdb", worst, tolerance, s_grid, profile);
}

CheckReport check_strict_energy(const GeneratorBuilder& builder,
                                const std::vector<double>& chi_grid, double tolerance,
                                double base_lambda) {
    const std::size_t nb = builder.baths().size();
    const Mat base =
        builder.build(base_lambda, std::vector<double>(nb, base_lambda)).matrix;
    const double norm0 = builder.build_zero().matrix.norm();
    std::vector<double> profile;
    profile.reserve(chi_grid.size());
    double worst = 0.0;
    for (double chi : chi_grid) {
        const Mat shifted = builder
                                .build(base_lambda + chi,
                                       std::vector<double>(nb, base_lambda + chi))
                                .matrix;
        const double r = (shifted - base).norm() / norm0;
        profile.push_back(r);
        worst = std::max(worst, r);
    }
    return CheckReport::make("strict_energy", worst, tolerance, chi_grid, profile);
}

Mat random_density_matrix(Eigen::Index dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = cd(gauss(rng), gauss(rng));
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

CheckReport check_average_first_law(const GeneratorBuilder& builder, int n_samples,
                                    unsigned seed, double tolerance) {
    const double h = kFdStepFactor / builder.system().energy_scale();
    const Mat l0 = builder.build_zero().matrix;
    const double hnorm = builder.system().hamiltonian().norm();

    auto trace_rate = [&](double chi, const Vec& vrho) {
        const Mat l = builder.build_uniform(chi).matrix;
        Vec out = l * vrho;
        cd tr = 0.0;
        const auto d = builder.system().dim();
        for (Eigen::Index k = 0; k < d; ++k) tr += out(k + d * k);
        return tr.real();
    };

    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const Mat rho = random_density_matrix(builder.system().dim(), seed + 17 * s);
        const Vec vrho = vectorize(rho);
        auto central = [&](double step) {
            return (trace_rate(step, vrho) - trace_rate(-step, vrho)) / (2.0 * step);
        };
        const double d1 = central(h), d2 = central(h / 2.0);
        const double derivative = (4.0 * d2 - d1) / 3.0;
        const double scale = std::max(hnorm * (l0 * vrho).norm(), 1e-300);
        worst = std::max(worst, std::abs(derivative) / scale);
    }
    return CheckReport::make("average_first_law", worst, tolerance);
}

CheckReport check_gibbs_fixed_point(const TiltedGenerator& g, double beta,
                                    double tolerance) {
    const Mat rho = gibbs_state(g.system, beta);
    const double r = (g.matrix * vectorize(rho)).norm() / g.matrix.norm();
    return CheckReport::make("gibbs_fixed_point", r, tolerance);
}

SteadyState steady_state(const TiltedGenerator& g) {
    for (double l : g.lambda_B)
        if (l != 0.0) throw InvalidInput("steady_state: counting fields must be zero");
    if (g.lambda_S != 0.0)
        throw InvalidInput("steady_state: counting fields must be zero");

    Eigen::JacobiSVD<Mat> svd(g.matrix, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const auto n = sv.size();
    const double smax = sv(0);
    if (n >= 2 && sv(n - 2) <= 1e-12 * smax)
        throw NumericError("steady_state: kernel of the generator is degenerate");

    Mat rho = devectorize(svd.matrixV().col(n - 1));
    rho = (rho + rho.adjoint()).eval() / 2.0;
    const cd tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw NumericError("steady_state: kernel vector has vanishing trace");
    rho /= tr;

    SteadyState out;
    out.residual = (g.matrix * vectorize(rho)).norm() / g.matrix.norm();
    out.rho = std::move(rho);
    return out;
}

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace

double sinc_condition_weighted(const std::function<double(double)>& rate, double a,
                               double b, double omega1, double omega2, double delta0,
                               const QuadratureOptions& opt) {
    if (!(delta0 > 0.0)) throw InvalidInput("sinc_condition: delta0 must be positive");
    const double mid = 0.5 * (omega1 + omega2);
    auto f = [&](double w) {
        return rate(w) * (w - mid) * sinc((w - omega1) * delta0 / 2.0) *
               sinc((w - omega2) * delta0 / 2.0);
    };
    return integrate(f, a, b, opt);
}

double sinc_condition_scale(const std::function<double(double)>& rate, double a, double b,
                            double omega1, double omega2, double delta0,
                            const QuadratureOptions& opt) {
    if (!(delta0 > 0.0)) throw InvalidInput("sinc_condition: delta0 must be positive");
    const double mid = 0.5 * (omega1 + omega2);
    auto f = [&](double w) {
        const double s = sinc((w - mid) * delta0 / 2.0);
        return rate(w) * s * s;
    };
    return integrate(f, a, b, opt);
}

double sinc_condition(double omega1, double omega2, double delta0, const BathSpec& bath,
                      Sign sign, const QuadratureOptions& opt) {
    auto rate = [&](double w) { return rate_real(sign, w, 0.0, bath); };
    return sinc_condition_weighted(rate, 0.0, bath.density.cutoff, omega1, omega2, delta0,
                                   opt);
}

} // namespace qmelab
