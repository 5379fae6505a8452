// counting_stats.hpp — Tilted propagation, moment generating functions,
// heat/energy flows, fluctuation-theorem identities, and entropy-production
// trajectories.
//
// Propagation exponentiates the vectorized generator per time point; the
// λ_S boundary sandwiches of the tilted state are already contained in the
// generator similarity, so exp(t·L_λ) applied to vec(ρ0) is the tilted state.

#pragma once

#include <vector>

#include "qmelab/consistency.hpp"
#include "qmelab/generators.hpp"

namespace qmelab {

struct TiltedState {
    double time = 0.0;
    double lambda_S = 0.0;
    std::vector<double> lambda_B;
    Mat rho; // non-normalized once any counting field is nonzero
};

struct MGFSample {
    double time = 0.0;
    double lambda_S = 0.0;
    std::vector<double> lambda_B;
    cd value;
};

struct ThermoTrajectory {
    std::vector<double> times;
    std::vector<double> energy;            // E_S(t) = Tr[H_S ρ(t)]
    std::vector<std::vector<double>> heat; // Q_α(t), one series per bath
    std::vector<double> entropy;           // S(t) = -Tr[ρ log ρ]
    std::vector<double> sigma;             // Σ(t) = ΔS - Σ_α β_α Q_α
    std::vector<double> d_rel;             // D(ρ(t)||ρ_Gibbs), single bath only
};

TiltedState propagate(const TiltedGenerator& g, const Mat& rho0, double t);

MGFSample mgf(const TiltedGenerator& g, const Mat& rho0, double t);

// Q_α(t) = ∂_λ G(t, λ_α = -λ)|_{λ=0}: average energy change leaving bath α.
double heat(const GeneratorBuilder& builder, const Mat& rho0, double t,
            std::size_t bath_index);

// ∂_χ G(t, χ·1)|_{χ=0}: the average "work rate" integral; zero when the
// average first law holds.
double work_mgf_derivative(const GeneratorBuilder& builder, const Mat& rho0, double t);

// Forward and reversed log-MGF along the one-parameter family
// λ_vec = (λ, -λ, ..., -λ), with ρ0 forced to the Gibbs state of H_S at
// beta_S. log_g_rev holds log G^R(t, -λ_vec - β).
struct FTCurve {
    std::vector<double> lambda;
    std::vector<double> log_g;
    std::vector<double> log_g_rev;
};

FTCurve ft_curve(const GeneratorBuilder& builder, double t, double beta_S,
                 const std::vector<double>& lambda_grid);

// Detailed FT residual: max over the grid of |log G^R(t, -λ-β) - log G(t, λ)|.
CheckReport check_ft_work(const GeneratorBuilder& builder, double t, double beta_S,
                          const std::vector<double>& lambda_grid, double tolerance);

// Integral entropy-production FT: residual |G_Σ(t, -1) - 1|.
CheckReport check_integral_ft_entropy(const GeneratorBuilder& builder, const Mat& rho0,
                                      double t, double tolerance);

// G_Σ(t, λ_Σ); equals 1 identically at λ_Σ ∈ {0, -1} for GQDB generators.
cd entropy_mgf(const GeneratorBuilder& builder, const Mat& rho0, double t,
               double lambda_sigma);

ThermoTrajectory thermo_trajectory(const GeneratorBuilder& builder, const Mat& rho0,
                                   const std::vector<double>& times);

} // namespace qmelab
