// support.hpp — Shared fixtures: the near-degenerate three-level model and
// its thermal bath. The excited splitting 0.02 sits inside the near-degenerate
// window 1/delta0 ≈ 0.1 of the geometric-mean coarse-graining time
// (relaxation time ≈ 96, bath time 1), and the steady-state coherences of the
// symmetrized scheme come out at the 1e-4 scale.

#pragma once

#include "qmelab/generators.hpp"

namespace qmelab::testing {

inline SystemSpec three_level_system(double splitting = 0.02, double mean = 0.1) {
    SystemSpec s;
    s.energies =
        (RealVec(3) << 0.0, mean - splitting / 2.0, mean + splitting / 2.0).finished();
    s.g = Mat::Zero(3, 3);
    s.g(1, 0) = 1.0;
    s.g(2, 0) = 1.0;
    return s;
}

inline SystemSpec two_level_system(double omega = 0.1) {
    SystemSpec s;
    s.energies = (RealVec(2) << 0.0, omega).finished();
    s.g = Mat::Zero(2, 2);
    s.g(1, 0) = 1.0;
    return s;
}

inline BathSpec ohmic_bath(double beta = 5.0, double gamma = 0.2, double eta = 0.2) {
    BathSpec b;
    b.beta = beta;
    b.gamma = gamma;
    b.density = SpectralDensity::ohmic(eta, 0.5, 1.0);
    return b;
}

inline Scheme scheme_of(SchemeKind kind, bool lamb = true) {
    Scheme s;
    s.kind = kind;
    s.lamb_shift = lamb;
    if (kind == SchemeKind::symmetrized) s.epsilon = 0.05;
    if (kind == SchemeKind::coarse_grained) s.delta0 = 50.0;
    return s;
}

inline GeneratorBuilder paper_builder(SchemeKind kind, bool lamb = true) {
    return GeneratorBuilder(three_level_system(), {ohmic_bath()}, scheme_of(kind, lamb));
}

} // namespace qmelab::testing
