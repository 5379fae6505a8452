#include "qmelab/counting_stats.hpp"

#include <cmath>

namespace qmelab {

TiltedState propagate(const TiltedGenerator& g, const Mat& rho0, double t) {
    if (rho0.rows() != g.dim() || rho0.cols() != g.dim())
        throw InvalidInput("propagate: state dimension mismatch");
    TiltedState out;
    out.time = t;
    out.lambda_S = g.lambda_S;
    out.lambda_B = g.lambda_B;
    if (t == 0.0) {
        // The λ_S boundary sandwiches of the tilted state cancel at t = 0.
        out.rho = rho0;
        return out;
    }
    out.rho = devectorize(matrix_exp(g.matrix, cd(t, 0.0)) * vectorize(rho0));
    return out;
}

MGFSample mgf(const TiltedGenerator& g, const Mat& rho0, double t) {
    const TiltedState s = propagate(g, rho0, t);
    MGFSample out;
    out.time = t;
    out.lambda_S = s.lambda_S;
    out.lambda_B = s.lambda_B;
    out.value = s.rho.trace();
    return out;
}

namespace {

// Richardson-refined central difference of f at 0 with base step h.
double central_derivative(const std::function<double(double)>& f, double h) {
    auto central = [&](double step) { return (f(step) - f(-step)) / (2.0 * step); };
    const double d1 = central(h), d2 = central(h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

double heat(const GeneratorBuilder& builder, const Mat& rho0, double t,
            std::size_t bath_index) {
    if (bath_index >= builder.baths().size())
        throw InvalidInput("heat: bath index out of range");
    const double h = kFdStepFactor / builder.system().energy_scale();
    auto g_of = [&](double lam) {
        std::vector<double> lb(builder.baths().size(), 0.0);
        lb[bath_index] = -lam;
        const auto sample = mgf(builder.build_bath_tilted(lb), rho0, t);
        return sample.value.real();
    };
    return central_derivative(g_of, h);
}

double work_mgf_derivative(const GeneratorBuilder& builder, const Mat& rho0, double t) {
    const double h = kFdStepFactor / builder.system().energy_scale();
    auto g_of = [&](double chi) {
        const auto gen = builder.build_uniform(chi);
        return mgf(gen, rho0, t).value.real();
    };
    return central_derivative(g_of, h);
}

FTCurve ft_curve(const GeneratorBuilder& builder, double t, double beta_S,
                 const std::vector<double>& lambda_grid) {
    const Mat rho0 = gibbs_state(builder.system(), beta_S);
    const auto& baths = builder.baths();

    FTCurve curve;
    curve.lambda = lambda_grid;
    for (double lam : lambda_grid) {
        // Forward: λ_vec = (λ, -λ, ..., -λ).
        std::vector<double> lb(baths.size(), -lam);
        const auto fwd = builder.build(lam, lb);
        const double g_fwd = mgf(fwd, rho0, t).value.real();

        // Reversed at the mapped fields -λ_vec - β.
        const double ls_rev = -lam - beta_S;
        std::vector<double> lb_rev(baths.size());
        for (std::size_t a = 0; a < baths.size(); ++a) lb_rev[a] = lam - baths[a].beta;
        auto rev = reversed_generator(builder.build_bath_tilted(lb_rev));
        rev = add_system_counting(rev, ls_rev);
        const double g_rev = mgf(rev, rho0, t).value.real();

        if (!(g_fwd > 0.0) || !(g_rev > 0.0))
            throw NumericError("ft_curve: non-positive MGF value");
        curve.log_g.push_back(std::log(g_fwd));
        curve.log_g_rev.push_back(std::log(g_rev));
    }
    return curve;
}

CheckReport check_ft_work(const GeneratorBuilder& builder, double t, double beta_S,
                          const std::vector<double>& lambda_grid, double tolerance) {
    const FTCurve curve = ft_curve(builder, t, beta_S, lambda_grid);
    std::vector<double> profile(curve.lambda.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.lambda.size(); ++i) {
        profile[i] = std::abs(curve.log_g_rev[i] - curve.log_g[i]);
        worst = std::max(worst, profile[i]);
    }
    return CheckReport::make("ft_detailed", worst, tolerance, lambda_grid, profile);
}

cd entropy_mgf(const GeneratorBuilder& builder, const Mat& rho0, double t,
               double lambda_sigma) {
    const auto& baths = builder.baths();
    // Untilted trajectory first; its endpoint enters the counting weights.
    const Mat rho_t = propagate(builder.build_zero(), rho0, t).rho;

    const Mat log0 = matrix_log_psd(rho0);
    const Mat logt = matrix_log_psd(rho_t);
    const Mat boundary0 = matrix_exp(log0, cd(lambda_sigma / 2.0, 0.0));
    const Mat inner = boundary0 * rho0 * boundary0;

    std::vector<double> lb(baths.size());
    for (std::size_t a = 0; a < baths.size(); ++a) lb[a] = lambda_sigma * baths[a].beta;
    const auto gen = builder.build_bath_tilted(lb);
    const Mat evolved = propagate(gen, inner, t).rho;

    const Mat weight_t = matrix_exp(logt, cd(-lambda_sigma, 0.0));
    return (weight_t * evolved).trace();
}

CheckReport check_integral_ft_entropy(const GeneratorBuilder& builder, const Mat& rho0,
                                      double t, double tolerance) {
    const cd g = entropy_mgf(builder, rho0, t, -1.0);
    return CheckReport::make("ft_integral_entropy", std::abs(g - cd(1.0, 0.0)), tolerance);
}

ThermoTrajectory thermo_trajectory(const GeneratorBuilder& builder, const Mat& rho0,
                                   const std::vector<double>& times) {
    const auto& baths = builder.baths();
    const Mat h = builder.system().hamiltonian();
    const auto zero = builder.build_zero();
    const bool single_bath = baths.size() == 1;
    const Mat log_gibbs =
        single_bath ? matrix_log_psd(gibbs_state(builder.system(), baths[0].beta)) : Mat();

    ThermoTrajectory tr;
    tr.times = times;
    tr.heat.assign(baths.size(), {});
    double s0 = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const Mat rho = propagate(zero, rho0, t).rho;
        tr.energy.push_back((h * rho).trace().real());
        const Mat logr = matrix_log_psd(rho);
        const double s = -(rho * logr).trace().real();
        tr.entropy.push_back(s);
        if (i == 0) s0 = s;

        double beta_q = 0.0;
        for (std::size_t a = 0; a < baths.size(); ++a) {
            const double q = heat(builder, rho0, t, a);
            tr.heat[a].push_back(q);
            beta_q += baths[a].beta * q;
        }
        tr.sigma.push_back((s - s0) - beta_q);
        if (single_bath)
            tr.d_rel.push_back((rho * (logr - log_gibbs)).trace().real());
    }
    return tr;
}

} // namespace qmelab
