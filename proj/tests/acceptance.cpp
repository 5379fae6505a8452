// acceptance.cpp — End-to-end acceptance suite. Each criterion prints one
// pass/fail line; the exit code is the number of failed criteria.
//
// Usage: qmelab_acceptance [--skip-oracle] [--only N]

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qmelab/consistency.hpp"
#include "qmelab/counting_stats.hpp"
#include "qmelab/exact_oracle.hpp"
#include "qmelab/io.hpp"
#include "qmelab/runner.hpp"

using namespace qmelab;

namespace {

// The near-degenerate three-level model: gamma = 0.2, beta = 5/Ω, g1 = g2 = √Ω,
// excited splitting 0.02 inside the near-degenerate window of the
// geometric-mean coarse-graining time.
SystemSpec model_system(double splitting = 0.02) {
    SystemSpec s;
    s.energies =
        (RealVec(3) << 0.0, 0.1 - splitting / 2.0, 0.1 + splitting / 2.0).finished();
    s.g = Mat::Zero(3, 3);
    s.g(1, 0) = 1.0;
    s.g(2, 0) = 1.0;
    return s;
}

BathSpec model_bath(double gamma = 0.2, double eta = 0.2) {
    BathSpec b;
    b.beta = 5.0;
    b.gamma = gamma;
    b.density = SpectralDensity::ohmic(eta, 0.5, 1.0);
    return b;
}

GeneratorBuilder builder_of(SchemeKind kind, double gamma = 0.2) {
    Scheme s;
    s.kind = kind;
    s.lamb_shift = true;
    if (kind == SchemeKind::symmetrized) s.epsilon = 0.05;
    if (kind == SchemeKind::coarse_grained) s.delta0 = 25.0;
    return GeneratorBuilder(model_system(), {model_bath(gamma)}, s);
}

Mat transient_state() {
    Vec psi = Vec::Zero(3);
    psi(1) = 0.5;
    psi(2) = std::sqrt(3.0) / 2.0;
    return psi * psi.adjoint();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome criterion_gqdb() {
    const auto grid = linspace(-1.0, 1.0, 11); // λ_B = s·β over [-β, β]
    const auto sec = check_gqdb(builder_of(SchemeKind::secular), grid, 1e-8);
    const auto sym = check_gqdb(builder_of(SchemeKind::symmetrized), grid, 1e-8);
    const auto red = check_gqdb(builder_of(SchemeKind::redfield), grid, 1e-8);
    const bool ratio = red.residual > 1e3 * std::max(sec.residual, 1e-300);
    std::ostringstream d;
    d << "secular " << sec.residual << ", symmetrized " << sym.residual << " (< 1e-8); "
      << "redfield " << red.residual << " > 1e3 x secular: " << (ratio ? "yes" : "NO");
    return {sec.pass && sym.pass && ratio, d.str()};
}

Outcome criterion_strict_energy() {
    const auto chi = linspace(-5.0, 5.0, 11); // χ in [-β, β]
    const auto sec = check_strict_energy(builder_of(SchemeKind::secular), chi, 1e-10);
    bool monotone = true;
    double sym_res = 0.0, cg_res = 0.0;
    for (auto kind : {SchemeKind::symmetrized, SchemeKind::coarse_grained}) {
        const auto rep = check_strict_energy(builder_of(kind), chi, 1e-10);
        (kind == SchemeKind::symmetrized ? sym_res : cg_res) = rep.residual;
        const auto& p = rep.profile;
        const std::size_t mid = p.size() / 2;
        if (!(rep.residual > 0.0)) monotone = false;
        for (std::size_t i = mid; i + 1 < p.size(); ++i)
            if (!(p[i + 1] > p[i])) monotone = false;
        for (std::size_t i = 0; i < mid; ++i)
            if (!(p[i] > p[i + 1])) monotone = false;
    }
    std::ostringstream d;
    d << "secular " << sec.residual << " (< 1e-10); symmetrized " << sym_res
      << ", coarse-grained " << cg_res << " positive and monotone in |chi|: "
      << (monotone ? "yes" : "NO");
    return {sec.pass && monotone, d.str()};
}

Outcome criterion_average_first_law() {
    const Mat rho0 = transient_state();
    const auto times = linspace(15.0, 300.0, 20);
    double worst = 0.0;
    for (auto kind : {SchemeKind::secular, SchemeKind::symmetrized}) {
        const auto builder = builder_of(kind);
        const Mat h = builder.system().hamiltonian();
        const auto zero = builder.build_zero();
        const double e0 = (h * rho0).trace().real();
        for (double t : times) {
            const double q = heat(builder, rho0, t, 0);
            const double de = (h * propagate(zero, rho0, t).rho).trace().real() - e0;
            const double rel =
                std::abs(q - de) / std::max({std::abs(q), std::abs(de), 1e-12});
            worst = std::max(worst, rel);
        }
    }
    std::ostringstream d;
    d << "max relative |Q_mgf - Tr[H dRho]| over 20 transient times = " << worst
      << " (< 1e-6)";
    return {worst < 1e-6, d.str()};
}

Outcome criterion_detailed_ft() {
    const double t = 60.0, beta_s = 5.0;
    const auto grid = linspace(-beta_s, 0.0, 11);
    const auto sec = check_ft_work(builder_of(SchemeKind::secular), t, beta_s, grid, 1e-6);
    const auto sym =
        check_ft_work(builder_of(SchemeKind::symmetrized), t, beta_s, grid, 1e-6);
    const auto red =
        check_ft_work(builder_of(SchemeKind::redfield), t, beta_s, grid, 1e-6);
    const bool ratio = red.residual > 1e2 * std::max(sym.residual, 1e-300);
    std::ostringstream d;
    d << "secular " << sec.residual << ", symmetrized " << sym.residual << " (< 1e-6); "
      << "redfield " << red.residual << " > 1e2 x symmetrized: " << (ratio ? "yes" : "NO");
    return {sec.pass && sym.pass && ratio, d.str()};
}

Outcome criterion_integral_ft() {
    double worst = 0.0;
    for (auto kind : {SchemeKind::secular, SchemeKind::symmetrized}) {
        const auto builder = builder_of(kind);
        Mat rho0 = 0.98 * transient_state();
        rho0 += (0.02 / 3.0) * Mat::Identity(3, 3); // full rank for log ρ0
        for (double t : linspace(30.0, 300.0, 5)) {
            const auto rep = check_integral_ft_entropy(builder, rho0, t, 1e-6);
            worst = std::max(worst, rep.residual);
        }
    }
    std::ostringstream d;
    d << "max |G_Sigma(t,-1) - 1| over 5 transient times = " << worst << " (< 1e-6)";
    return {worst < 1e-6, d.str()};
}

Outcome criterion_steady_state() {
    const auto sec = steady_state(builder_of(SchemeKind::secular).build_zero());
    const Mat rho_g = gibbs_state(model_system(), 5.0);
    const double gibbs_err = (sec.rho - rho_g).norm();

    const auto sym = steady_state(builder_of(SchemeKind::symmetrized).build_zero());
    const double coherence = std::abs(sym.rho(1, 2));
    const double mismatch = (sym.rho.diagonal() - rho_g.diagonal()).cwiseAbs().maxCoeff();
    const bool band = coherence > 1e-5 && coherence < 1e-3 && mismatch > 1e-5 &&
                      mismatch < 1e-3;
    std::ostringstream d;
    d << "secular ||rho_ss - gibbs|| = " << gibbs_err << " (< 1e-10); symmetrized "
      << "coherence " << coherence << ", population mismatch " << mismatch
      << " (both in [1e-5, 1e-3])";
    return {gibbs_err < 1e-10 && band, d.str()};
}

Outcome criterion_sinc() {
    const double delta0 = 50.0;
    const double w1 = 0.4, w2 = 0.44, mid = 0.5 * (w1 + w2);
    auto flat = [](double) { return 1.0; };
    const double v0 = sinc_condition_weighted(flat, mid - 0.3, mid + 0.3, w1, w2, delta0);
    const double s0 = sinc_condition_scale(flat, mid - 0.3, mid + 0.3, w1, w2, delta0);
    const double zero_ratio = std::abs(v0) / s0;

    const auto bath = model_bath();
    auto rate = [&](double w) { return rate_real(Sign::plus, w, 0.0, bath); };
    const double wa = 0.3, wb = 0.3 + 12.0 / delta0; // |ω-ω'| δ0 = 12 > 10
    const double far = sinc_condition(wa, wb, delta0, bath, Sign::plus);
    const double scale = sinc_condition_scale(rate, 0.0, 1.0, wa, wb, delta0);
    const double far_ratio = std::abs(far) / scale;
    std::ostringstream d;
    d << "constant-rate antisymmetry " << zero_ratio << " (< 1e-12); far-pair ratio "
      << far_ratio << " (< 1e-3)";
    return {zero_ratio < 1e-12 && far_ratio < 1e-3, d.str()};
}

Outcome criterion_second_law() {
    const auto times = linspace(0.0, 400.0, 21);
    const auto sec = builder_of(SchemeKind::secular);
    const auto tr = thermo_trajectory(sec, transient_state(), times);
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < tr.sigma.size(); ++i)
        worst_drop = std::max(worst_drop, tr.sigma[i - 1] - tr.sigma[i]);

    auto dip_of = [&](double gamma) {
        const auto sym = builder_of(SchemeKind::symmetrized, gamma);
        const Mat rho_g = gibbs_state(model_system(), 5.0);
        const auto t = thermo_trajectory(sym, rho_g, times);
        double dip = 0.0;
        for (double s : t.sigma) dip = std::min(dip, s);
        return -dip;
    };
    const double full = dip_of(0.2), half = dip_of(0.1);
    const bool cubic = full >= 8.0 * half;
    std::ostringstream d;
    d << "secular worst decrease " << worst_drop << " (< 1e-10); symmetrized dip "
      << full << " -> " << half << " under gamma/2 (>= 8x reduction: "
      << (cubic ? "yes" : "NO") << ")";
    return {worst_drop < 1e-10 && cubic, d.str()};
}

Outcome criterion_oracle() {
    RunConfig cfg;
    cfg.baths = {model_bath()};
    cfg.scheme.kind = SchemeKind::symmetrized;
    cfg.scheme.lamb_shift = true;
    cfg.oracle.enabled = true;
    cfg.oracle.n_levels = 300;
    cfg.oracle.seeds = 5;
    cfg.oracle.points = 25;

    // Pilot run fixes the geometric-mean coarse-graining time; the excited
    // splitting is then pinned to 1/delta0 and epsilon to twice that.
    cfg.system = model_system(0.125);
    cfg.scheme.epsilon = 0.25;
    const auto pilot = run_oracle_benchmark(cfg, 101);
    const double splitting = 1.0 / pilot.delta0;
    cfg.system = model_system(splitting);
    cfg.scheme.epsilon = 2.0 * splitting;

    std::vector<OracleCurves> curves(static_cast<std::size_t>(cfg.oracle.seeds));
    {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < 2; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= curves.size()) return;
                    curves[k] = run_oracle_benchmark(cfg, 101 + k);
                }
            });
        for (auto& th : pool) th.join();
    }
    int closer = 0;
    std::ostringstream d;
    d << "delta0 = " << pilot.delta0 << ", splitting = " << splitting << "; ";
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const double ds = curves[k].deviation_secular();
        const double dy = curves[k].deviation_symmetrized();
        if (dy < ds) ++closer;
        d << "seed" << k << " sym/sec=" << dy << "/" << ds << " ";
    }
    d << "-> symmetrized closer in " << closer << "/5 (need >= 4)";
    return {closer >= 4, d.str()};
}

Outcome criterion_numerics() {
    const auto bath = model_bath();
    // KMS on the standard grid
    double kms = 0.0;
    for (double w : linspace(0.02, 0.98, 40)) {
        const double rp = rate_real(Sign::plus, w, 0.0, bath);
        if (rp <= 0.0) continue;
        kms = std::max(kms,
                       std::abs(rp * std::exp(-bath.beta * w) -
                                rate_real(Sign::minus, w, 0.0, bath)) /
                           rp);
    }
    // tilt symmetry on a 20x20 grid, λ in [-2β, β]
    CorrelationTransforms tf(bath, true);
    double tilt = 0.0, tilt_scale = 0.0;
    for (double w : linspace(0.05, 0.95, 20))
        for (double lam : linspace(-2.0 * bath.beta, bath.beta, 20)) {
            const cd lhs = std::conj(tf.gamma(Sign::plus, w, -lam - bath.beta));
            const cd rhs = tf.gamma(Sign::minus, w, lam);
            tilt = std::max(tilt, std::abs(lhs - rhs));
            tilt_scale = std::max(tilt_scale, std::abs(rhs));
        }
    tilt /= tilt_scale;

    // trace preservation and adjoint identity on the built generators
    double trace_worst = 0.0;
    for (auto kind : {SchemeKind::redfield, SchemeKind::secular, SchemeKind::symmetrized,
                      SchemeKind::coarse_grained}) {
        const Mat m = builder_of(kind).build_zero().matrix;
        trace_worst = std::max(trace_worst, trace_defect(m) / m.norm());
    }
    const Mat o = builder_of(SchemeKind::redfield).build_bath_tilted({0.7}).matrix;
    double adjoint_worst = 0.0;
    for (unsigned s = 0; s < 20; ++s) {
        const Mat x = random_density_matrix(3, 100 + s);
        const Mat y = random_density_matrix(3, 200 + s);
        const cd lhs = (devectorize(o * vectorize(x)).adjoint() * y).trace();
        const cd rhs =
            (x.adjoint() * devectorize(superop_adjoint(o) * vectorize(y))).trace();
        adjoint_worst = std::max(adjoint_worst, std::abs(lhs - rhs));
    }

    // determinism: identical builds are bit-identical
    const Mat a = builder_of(SchemeKind::symmetrized).build(0.3, {-0.4}).matrix;
    const Mat b = builder_of(SchemeKind::symmetrized).build(0.3, {-0.4}).matrix;
    const bool deterministic = (a - b).norm() == 0.0;

    std::ostringstream d;
    d << "kms " << kms << " (< 1e-13), tilt " << tilt << " (< 1e-8), trace "
      << trace_worst << " (< 1e-12), adjoint " << adjoint_worst
      << " (< 1e-12), deterministic rebuild: " << (deterministic ? "yes" : "NO");
    return {kms < 1e-13 && tilt < 1e-8 && trace_worst < 1e-12 && adjoint_worst < 1e-12 &&
                deterministic,
            d.str()};
}

} // namespace

int main(int argc, char** argv) {
    bool skip_oracle = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--skip-oracle") == 0) skip_oracle = true;
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
    }

    struct Entry {
        int number;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> criteria = {
        {1, "GQDB symmetry of the tilted generators", criterion_gqdb},
        {2, "strict energy balance", criterion_strict_energy},
        {3, "average first law along transients", criterion_average_first_law},
        {4, "detailed fluctuation theorem", criterion_detailed_ft},
        {5, "integral entropy-production fluctuation theorem", criterion_integral_ft},
        {6, "Gibbs fixed point and steady-state coherences", criterion_steady_state},
        {7, "sinc first-law condition", criterion_sinc},
        {8, "second law and cubic-order dips", criterion_second_law},
        {9, "exact random-matrix-bath benchmark", criterion_oracle},
        {10, "numerics: KMS, tilt symmetry, trace, adjoint, determinism",
         criterion_numerics},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only > 0 && c.number != only) continue;
        if (only == 0 && skip_oracle && c.number == 9) continue;
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s — %s\n", out.pass ? "PASS" : "FAIL", c.number,
                    c.name, out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures;
}
