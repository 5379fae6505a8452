#include "qmelab/system_model.hpp"

#include <algorithm>
#include <cmath>

namespace qmelab {

void SystemSpec::validate() const {
    const auto d = energies.size();
    if (d < 2) throw InvalidInput("SystemSpec: need at least two levels");
    for (Eigen::Index k = 0; k + 1 < d; ++k)
        if (energies(k) > energies(k + 1))
            throw InvalidInput("SystemSpec: energies must be sorted ascending");
    if (g.rows() != d || g.cols() != d)
        throw InvalidInput("SystemSpec: coupling matrix must be d x d");
    if (!allow_diagonal) {
        for (Eigen::Index k = 0; k < d; ++k)
            if (g(k, k) != cd(0.0, 0.0))
                throw InvalidInput(
                    "SystemSpec: diagonal coupling amplitudes g_nn are disabled "
                    "(set allow_diagonal to override)");
    }
    if (!g.allFinite() || !energies.allFinite())
        throw InvalidInput("SystemSpec: non-finite entries");
}

Mat SystemSpec::hamiltonian() const {
    return energies.cast<cd>().asDiagonal();
}

double SystemSpec::energy_scale() const {
    return std::max(energies.cwiseAbs().maxCoeff(), 1e-30);
}

std::vector<JumpOperator> build_jump_basis(const SystemSpec& spec) {
    spec.validate();
    const auto d = spec.dim();
    std::vector<JumpOperator> jumps;
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            if (spec.g(m, n) == cd(0.0, 0.0)) continue;
            JumpOperator j;
            j.m = static_cast<int>(m);
            j.n = static_cast<int>(n);
            j.omega = spec.energies(m) - spec.energies(n);
            j.amplitude = spec.g(m, n);
            j.sigma = Mat::Zero(d, d);
            j.sigma(n, m) = 1.0;
            jumps.push_back(std::move(j));
        }
    }
    return jumps;
}

Mat coupling_operator(const SystemSpec& spec) {
    Mat a = Mat::Zero(spec.dim(), spec.dim());
    for (const auto& j : build_jump_basis(spec)) a += j.a();
    return a;
}

Mat gibbs_state(const SystemSpec& spec, double beta) {
    if (beta < 0.0) throw InvalidInput("gibbs_state: beta must be nonnegative");
    const double e0 = spec.energies.minCoeff();
    RealVec w = (-beta * (spec.energies.array() - e0)).exp();
    w /= w.sum();
    return w.cast<cd>().asDiagonal();
}

BohrSpectrum bohr_spectrum(const std::vector<JumpOperator>& jumps, double tol_abs) {
    std::vector<std::size_t> order(jumps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return jumps[a].omega < jumps[b].omega; });

    BohrSpectrum spec;
    for (std::size_t i : order) {
        if (!spec.frequencies.empty() &&
            std::abs(jumps[i].omega - spec.frequencies.back()) <= tol_abs) {
            spec.members.back().push_back(i);
        } else {
            spec.frequencies.push_back(jumps[i].omega);
            spec.members.push_back({i});
        }
    }
    return spec;
}

} // namespace qmelab
