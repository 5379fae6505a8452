// consistency.hpp — Quantitative residual checks for the thermodynamic
// consistency conditions: GQDB, strict/average energy conservation, Gibbs
// fixed point, sinc first-law condition, steady states.
//
// Every check returns a nonnegative residual (Frobenius norms of vectorized
// superoperators, relative to the untilted generator norm) plus a verdict
// against a declared tolerance.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmelab/generators.hpp"

namespace qmelab {

// Finite-difference step scale for λ-derivatives: h = kFdStepFactor / ||H_S||,
// refined with one Richardson level. The step is large enough that the
// roundoff floor of the MGF evaluations (~1e-14/h) stays below the 1e-10
// second-law tolerance; the Richardson level keeps the truncation error
// orders of magnitude smaller still.
inline constexpr double kFdStepFactor = 1e-3;

struct CheckReport {
    std::string check;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<double> grid;     // sampled counting-field values
    std::vector<double> profile;  // residual per grid point (empty if scalar)

    static CheckReport make(std::string name, double residual, double tolerance,
                            std::vector<double> grid = {},
                            std::vector<double> profile = {});
};

// GQDB (generalized quantum detailed balance): for each grid value s sets
// λ_α = s·β_α and measures ||L^R_{0,λ} - L†_{0,-λ-β}|| / ||L_{0,0}||.
CheckReport check_gqdb(const GeneratorBuilder& builder, const std::vector<double>& s_grid,
                       double tolerance);

// Strict energy balance: ||L_{λ+χ1} - L_λ|| / ||L_0|| over the χ grid.
CheckReport check_strict_energy(const GeneratorBuilder& builder,
                                const std::vector<double>& chi_grid, double tolerance,
                                double base_lambda = 0.0);

// Average first law at the rate level: |∂_χ Tr[L_{χ1}[ρ]]|_{χ=0}| over random
// density matrices, normalized by ||H_S||·||L_0[ρ]||.
CheckReport check_average_first_law(const GeneratorBuilder& builder, int n_samples,
                                    unsigned seed, double tolerance);

// ||L[e^{-βH}/Z]|| / ||L|| for the zero-counting generator (single bath).
CheckReport check_gibbs_fixed_point(const TiltedGenerator& g, double beta,
                                    double tolerance);

struct SteadyState {
    Mat rho;
    double residual = 0.0; // ||L[ρ_ss]|| / ||L||
};

// Unit-trace Hermitian kernel vector of the vectorized generator (smallest
// singular vector). Throws NumericError when the kernel is degenerate.
SteadyState steady_state(const TiltedGenerator& g);

// ∫ dω R(ω)·(ω - (ω1+ω2)/2)·sinc((ω-ω1)δ0/2)·sinc((ω-ω2)δ0/2) over [a, b].
double sinc_condition_weighted(const std::function<double(double)>& rate, double a,
                               double b, double omega1, double omega2, double delta0,
                               const QuadratureOptions& opt = {});

// Magnitude of the matching kept jump coefficient, ∫ R(ω)·sinc²((ω-ω̄)δ0/2)
// with ω̄ the pair midpoint: the natural scale against which the condition
// value is judged.
double sinc_condition_scale(const std::function<double(double)>& rate, double a, double b,
                            double omega1, double omega2, double delta0,
                            const QuadratureOptions& opt = {});

// Bath-backed version over the spectral density support.
double sinc_condition(double omega1, double omega2, double delta0, const BathSpec& bath,
                      Sign sign, const QuadratureOptions& opt = {});

// Random density matrix (Hilbert–Schmidt style: GG†/Tr), deterministic per seed.
Mat random_density_matrix(Eigen::Index dim, unsigned seed);

} // namespace qmelab
