// system_model.hpp — System Hamiltonian in its eigenbasis, jump-operator
// decomposition of the coupling, and the Bohr frequency spectrum.

#pragma once

#include <vector>

#include "qmelab/operator_core.hpp"
#include "qmelab/types.hpp"

namespace qmelab {

// Bohr frequencies closer than this (relative to max|E|) are treated as
// numerically equal. The paper's "degenerate" means exact; "nearly degenerate"
// frequencies must stay distinct here.
inline constexpr double kBohrDedupTol = 1e-12;

// System eigenenergies plus the coupling amplitude matrix g, where g(m, n)
// multiplies the jump operator |E_n><E_m| inside the coupling operator A.
struct SystemSpec {
    RealVec energies;          // sorted ascending, size d >= 2
    Mat g;                     // d x d complex amplitudes, zero diagonal
    bool allow_diagonal = false; // pure-dephasing amplitudes g_nn, off by default

    Eigen::Index dim() const { return energies.size(); }
    void validate() const;     // throws InvalidInput

    Mat hamiltonian() const;   // diag(energies)
    double energy_scale() const; // max |E|, used for tolerances and FD steps
};

// One term of A = sum g_mn |E_n><E_m|; sigma has a single unit entry.
struct JumpOperator {
    int m = 0;                 // source eigenstate
    int n = 0;                 // target eigenstate
    double omega = 0.0;        // Bohr frequency E_m - E_n
    cd amplitude;              // g_mn
    Mat sigma;                 // |E_n><E_m|
    Mat a() const { return amplitude * sigma; }
};

// Deduplicated sorted Bohr frequencies with a map back to the jump operators.
struct BohrSpectrum {
    std::vector<double> frequencies;
    std::vector<std::vector<std::size_t>> members; // per frequency, indices into the jump list
};

std::vector<JumpOperator> build_jump_basis(const SystemSpec& spec);

// A = sum over jumps of amplitude · sigma.
Mat coupling_operator(const SystemSpec& spec);

// e^{-beta·H_S}/Z as a density matrix (unit trace, Hermitian positive definite).
Mat gibbs_state(const SystemSpec& spec, double beta);

BohrSpectrum bohr_spectrum(const std::vector<JumpOperator>& jumps,
                           double tol_abs);

} // namespace qmelab
