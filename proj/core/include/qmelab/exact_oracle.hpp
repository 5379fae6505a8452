// exact_oracle.hpp — Exact two-point-measurement dynamics with a Gaussian
// orthogonal random-matrix bath: ground-truth MGFs and heat flows used to
// benchmark the master-equation schemes.

#pragma once

#include <cstdint>
#include <vector>

#include "qmelab/bath_model.hpp"
#include "qmelab/operator_core.hpp"
#include "qmelab/system_model.hpp"

namespace qmelab {

// GOE sample with density ∝ e^{-Tr(X²)/4}: independent Gaussians with
// variance 2 on the diagonal and 1 off the diagonal. Deterministic per seed.
RealMat sample_goe(int n, std::uint64_t seed);

struct ExactModel {
    SystemSpec system;
    int n_bath = 300;          // bath level count N
    double gamma = 0.2;        // coupling prefactor in V = γ(A+A†)⊗R
    double beta_B = 5.0;       // bath inverse temperature
    std::uint64_t seed = 1;
    double bath_min = -0.5;    // equally spaced bath levels on [bath_min, bath_max]
    double bath_max = 0.5;
    Eigen::Index dim_cap = 6000; // guard on d·N

    RealVec bath_energies() const;
    RealMat bath_coupling() const; // R = X / (4√N)
    void validate() const;
};

// Total Hamiltonian H = H_S⊗I + I⊗H_B + γ(A+A†)⊗R on the d·N composite.
Mat build_total(const ExactModel& model);

// Holds the one-time eigendecomposition of H and evaluates tilted
// two-point-measurement quantities. Counting acts on H_B only (λ_S = 0);
// the initial state is ρ_S0 ⊗ Gibbs(H_B), whose bath part is diagonal.
class ExactPropagator {
  public:
    explicit ExactPropagator(const ExactModel& model);

    const ExactModel& model() const { return model_; }

    // G(t, λ_B) = Tr[U_λ ρ̄0 U_λ†].
    cd mgf(const Mat& rho_s0, double t, double lambda_B) const;

    // Q(t) = ∂_λ G(t, -λ)|_0 by Richardson-refined central difference.
    double heat_mgf(const Mat& rho_s0, double t) const;

    // Q(t) = Tr[H_B (ρ(0) - ρ(t))], the direct route.
    double heat_direct(const Mat& rho_s0, double t) const;

    // Both heat routes over a time grid, computing each propagator once.
    struct HeatSample {
        double q_mgf = 0.0;
        double q_direct = 0.0;
    };
    std::vector<HeatSample> heat_series(const Mat& rho_s0,
                                        const std::vector<double>& times) const;

    // Reduced system state Tr_B[ρ(t)].
    Mat reduced_state(const Mat& rho_s0, double t) const;

    // Smoothed coupling-weighted level density of the sampled bath, expressed
    // as a tabulated spectral density J(ω) with J(ω)(n_B+1) matching the
    // emission side of the bath correlation function. `kernel_width` <= 0
    // defaults to four level spacings.
    SpectralDensity calibrate_density(double kernel_width = 0.0,
                                      int grid_points = 400) const;

  private:
    Mat propagator(double t) const; // e^{-iHt}
    Mat composite_initial(const Mat& rho_s0) const;
    cd mgf_with(const Mat& propagator, const Mat& rho0, double lambda_B) const;
    double heat_mgf_with(const Mat& propagator, const Mat& rho0) const;
    double heat_direct_with(const Mat& propagator, const Mat& rho0) const;

    ExactModel model_;
    RealVec bath_levels_;
    RealVec bath_weights_;   // Gibbs weights of the bath levels
    RealVec counting_diag_;  // H_B eigenvalue per composite index
    RealVec evals_;
    Mat evecs_;              // eigenvectors of H, stored complex for the gemms
};

} // namespace qmelab
