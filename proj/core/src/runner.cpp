#include "qmelab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "qmelab/io.hpp"

namespace qmelab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json report_to_json(const CheckReport& r) {
    json j = {{"check", r.check},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"verdict", r.pass ? "pass" : "fail"}};
    if (!r.grid.empty()) j["grid"] = r.grid;
    if (!r.profile.empty()) j["profile"] = r.profile;
    return j;
}

// Collects emitted files and writes run_manifest.json. Every file found in
// the output directory is hashed into the manifest.
class Manifest {
  public:
    Manifest(const RunConfig& cfg, const fs::path& dir, std::string command)
        : dir_(dir), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(dir_);
        body_["command"] = std::move(command);
        body_["config"] = json::parse(cfg.echo_json());
        body_["versions"] = {
            {"qmelab", "0.1.0"},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
        };
    }

    const fs::path& dir() const { return dir_; }

    void add_checks(const std::vector<CheckReport>& reports) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        body_["checks"] = arr;
    }

    void set(const std::string& key, json value) { body_[key] = std::move(value); }

    void write() {
        const auto elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        body_["wall_clock_seconds"] = elapsed;
        json files = json::array();
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(dir_)) {
            if (!entry.is_regular_file()) continue;
            if (entry.path().filename() == "run_manifest.json") continue;
            paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths)
            files.push_back(
                {{"path", p.filename().string()}, {"sha256", sha256_file(p)}});
        body_["files"] = files;
        std::ofstream out(dir_ / "run_manifest.json", std::ios::binary);
        out << body_.dump(2) << "\n";
    }

  private:
    fs::path dir_;
    json body_;
    std::chrono::steady_clock::time_point start_;
};

fs::path resolve_out_dir(const RunConfig& cfg, const RunOptions& opt) {
    return fs::path(opt.out_dir ? *opt.out_dir : cfg.output.directory);
}

std::vector<double> symmetric_grid(double half_width, int points) {
    return linspace(-half_width, half_width, static_cast<std::size_t>(points));
}

// max |R+ e^{-βω} - R-| / R+ over interior frequencies.
CheckReport kms_check(const BathSpec& bath, double tolerance) {
    const double cut = bath.density.cutoff;
    double worst = 0.0;
    for (double w : linspace(0.02 * cut, 0.98 * cut, 40)) {
        const double rp = rate_real(Sign::plus, w, 0.0, bath);
        if (rp <= 0.0) continue;
        const double rm = rate_real(Sign::minus, w, 0.0, bath);
        worst = std::max(worst, std::abs(rp * std::exp(-bath.beta * w) - rm) / rp);
    }
    return CheckReport::make("kms", worst, tolerance);
}

// max |conj(Γ+(ω,-λ-β)) - Γ-(ω,λ)| over a 20x20 grid, relative to max |Γ-|.
CheckReport tilt_symmetry_check(const BathSpec& bath, double tolerance) {
    CorrelationTransforms tf(bath, true);
    const double cut = bath.density.cutoff;
    double worst = 0.0, scale = 0.0;
    for (double w : linspace(0.05 * cut, 0.95 * cut, 20)) {
        for (double lam : linspace(-2.0 * bath.beta, bath.beta, 20)) {
            const cd lhs = std::conj(tf.gamma(Sign::plus, w, -lam - bath.beta));
            const cd rhs = tf.gamma(Sign::minus, w, lam);
            worst = std::max(worst, std::abs(lhs - rhs));
            scale = std::max(scale, std::abs(rhs));
        }
    }
    if (scale > 0.0) worst /= scale;
    return CheckReport::make("tilt_symmetry", worst, tolerance);
}

} // namespace

Mat default_initial_state(const SystemSpec& spec) {
    const auto d = spec.dim();
    Vec psi = Vec::Zero(d);
    psi(d - 2) = 0.5;
    psi(d - 1) = std::sqrt(3.0) / 2.0;
    return psi * psi.adjoint();
}

Mat regularized_initial_state(const SystemSpec& spec) {
    const auto d = spec.dim();
    Mat rho = 0.98 * default_initial_state(spec);
    rho += (0.02 / static_cast<double>(d)) * Mat::Identity(d, d);
    return rho;
}

GeneratorBuilder make_builder(const RunConfig& cfg) {
    return GeneratorBuilder(cfg.system, cfg.baths, cfg.scheme);
}

GeneratorBuilder make_builder(const RunConfig& cfg, SchemeKind kind) {
    Scheme s = cfg.scheme;
    s.kind = kind;
    return GeneratorBuilder(cfg.system, cfg.baths, s);
}

std::vector<CheckReport> run_consistency_suite(const RunConfig& cfg) {
    const auto builder = make_builder(cfg);
    const auto& tol = cfg.tolerances;
    const double beta1 = cfg.baths[0].beta;
    std::vector<CheckReport> reports;

    const auto zero = builder.build_zero();
    const double norm0 = zero.matrix.norm();
    reports.push_back(CheckReport::make("trace_preservation",
                                        trace_defect(zero.matrix) / norm0,
                                        tol.get("trace_preservation")));
    reports.push_back(CheckReport::make("hermiticity_preservation",
                                        hermiticity_defect(zero.matrix) / norm0,
                                        tol.get("trace_preservation")));

    double kms_worst = 0.0, tilt_worst = 0.0;
    for (const auto& bath : cfg.baths) {
        kms_worst = std::max(kms_worst, kms_check(bath, tol.get("kms")).residual);
        tilt_worst = std::max(tilt_worst,
                              tilt_symmetry_check(bath, tol.get("tilt_symmetry")).residual);
    }
    reports.push_back(CheckReport::make("kms", kms_worst, tol.get("kms")));
    reports.push_back(
        CheckReport::make("tilt_symmetry", tilt_worst, tol.get("tilt_symmetry")));

    reports.push_back(
        check_gqdb(builder, symmetric_grid(1.0, cfg.counting.points), tol.get("gqdb")));
    reports.push_back(check_strict_energy(
        builder, symmetric_grid(beta1, cfg.counting.points), tol.get("strict_energy")));
    reports.push_back(
        check_average_first_law(builder, 10, 2024, tol.get("average_first_law")));
    if (cfg.baths.size() == 1)
        reports.push_back(
            check_gibbs_fixed_point(zero, beta1, tol.get("gibbs_fixed_point")));

    auto ss = steady_state(zero);
    reports.push_back(CheckReport::make("steady_state_residual", ss.residual,
                                        tol.get("steady_state_residual")));

    const double t_ft = cfg.times.resolved_ft_time();
    const auto lam_grid =
        linspace(-cfg.resolved_beta_S(), 0.0, static_cast<std::size_t>(cfg.counting.points));
    reports.push_back(
        check_ft_work(builder, t_ft, cfg.resolved_beta_S(), lam_grid, tol.get("ft_detailed")));
    reports.push_back(check_integral_ft_entropy(builder, regularized_initial_state(cfg.system),
                                                t_ft, tol.get("ft_integral")));
    return reports;
}

int cmd_check(const RunConfig& cfg, const RunOptions& opt) {
    Manifest manifest(cfg, resolve_out_dir(cfg, opt), "check");
    const auto reports = run_consistency_suite(cfg);
    manifest.add_checks(reports);

    json body = json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        body.push_back(report_to_json(r));
        all_pass = all_pass && r.pass;
        log_info(r.check + ": residual " + format_double(r.residual) + " tol " +
                 format_double(r.tolerance) + (r.pass ? "  pass" : "  FAIL"));
    }
    {
        std::ofstream out(manifest.dir() / "check_report.json", std::ios::binary);
        out << json({{"scheme", scheme_name(cfg.scheme.kind)},
                     {"all_pass", all_pass},
                     {"checks", body}})
                   .dump(2)
            << "\n";
    }
    manifest.set("all_pass", all_pass);
    manifest.write();
    return all_pass ? kExitOk : kExitCheckFailure;
}

int cmd_evolve(const RunConfig& cfg, const RunOptions& opt) {
    Manifest manifest(cfg, resolve_out_dir(cfg, opt), "evolve");
    const auto builder = make_builder(cfg);
    const Mat rho0 = default_initial_state(cfg.system);
    const auto times = cfg.times.grid();

    const auto traj = thermo_trajectory(builder, rho0, times);
    {
        std::vector<std::string> header = {"t", "E_S"};
        for (std::size_t a = 0; a < cfg.baths.size(); ++a)
            header.push_back("Q_" + std::to_string(a + 1));
        header.push_back("S");
        header.push_back("Sigma");
        if (!traj.d_rel.empty()) header.push_back("D_rel");
        CsvWriter csv(manifest.dir() / "trajectory.csv", header);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            std::vector<double> row = {traj.times[i], traj.energy[i]};
            for (const auto& q : traj.heat) row.push_back(q[i]);
            row.push_back(traj.entropy[i]);
            row.push_back(traj.sigma[i]);
            if (!traj.d_rel.empty()) row.push_back(traj.d_rel[i]);
            csv.row_doubles(row);
        }
    }

    {
        std::vector<std::string> header = {"t", "lambda_S"};
        for (std::size_t a = 0; a < cfg.baths.size(); ++a)
            header.push_back("lambda_" + std::to_string(a + 1));
        header.push_back("re_g");
        header.push_back("im_g");
        CsvWriter csv(manifest.dir() / "mgf_scan.csv", header);
        for (double t : times) {
            for (std::size_t a = 0; a < cfg.baths.size(); ++a) {
                for (double lam : symmetric_grid(cfg.baths[a].beta, cfg.counting.points)) {
                    std::vector<double> lb(cfg.baths.size(), 0.0);
                    lb[a] = -lam;
                    const auto sample = mgf(builder.build_bath_tilted(lb), rho0, t);
                    std::vector<double> row = {t, 0.0};
                    for (double l : lb) row.push_back(l);
                    row.push_back(sample.value.real());
                    row.push_back(sample.value.imag());
                    csv.row_doubles(row);
                }
            }
        }
    }

    manifest.write();
    return kExitOk;
}

int cmd_ft(const RunConfig& cfg, const RunOptions& opt) {
    Manifest manifest(cfg, resolve_out_dir(cfg, opt), "ft");
    const double t_ft = cfg.times.resolved_ft_time();
    const double beta_s = cfg.resolved_beta_S();
    const auto grid =
        linspace(-beta_s, 0.0, static_cast<std::size_t>(cfg.counting.points));

    const auto builder = make_builder(cfg);
    const auto curve = ft_curve(builder, t_ft, beta_s, grid);

    std::vector<CheckReport> reports;
    reports.push_back(
        check_ft_work(builder, t_ft, beta_s, grid, cfg.tolerances.get("ft_detailed")));
    reports.push_back(check_integral_ft_entropy(builder,
                                                regularized_initial_state(cfg.system),
                                                t_ft, cfg.tolerances.get("ft_integral")));

    const bool have_redfield = cfg.scheme.kind != SchemeKind::redfield;
    FTCurve red_curve;
    if (have_redfield) {
        const auto red = make_builder(cfg, SchemeKind::redfield);
        red_curve = ft_curve(red, t_ft, beta_s, grid);
    }

    {
        std::vector<std::string> header = {"lambda", "log_g", "log_g_rev"};
        if (have_redfield) {
            header.push_back("log_g_redfield");
            header.push_back("log_g_rev_redfield");
        }
        CsvWriter csv(manifest.dir() / "ft_curves.csv", header,
                      std::string("scheme=") + scheme_name(cfg.scheme.kind) +
                          " t=" + format_double(t_ft));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<double> row = {grid[i], curve.log_g[i], curve.log_g_rev[i]};
            if (have_redfield) {
                row.push_back(red_curve.log_g[i]);
                row.push_back(red_curve.log_g_rev[i]);
            }
            csv.row_doubles(row);
        }
    }

    manifest.add_checks(reports);
    manifest.write();
    const bool ok = reports[0].pass && reports[1].pass;
    return ok ? kExitOk : kExitCheckFailure;
}

int cmd_steady(const RunConfig& cfg, const RunOptions& opt) {
    Manifest manifest(cfg, resolve_out_dir(cfg, opt), "steady");
    const auto builder = make_builder(cfg);
    const auto ss = steady_state(builder.build_zero());
    const auto d = cfg.system.dim();

    {
        CsvWriter csv(manifest.dir() / "steady_state.csv", {"i", "j", "re", "im"});
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                csv.row_doubles({static_cast<double>(i), static_cast<double>(j),
                                 ss.rho(i, j).real(), ss.rho(i, j).imag()});
    }

    json body;
    body["residual"] = ss.residual;
    json pops = json::array();
    for (Eigen::Index i = 0; i < d; ++i) pops.push_back(ss.rho(i, i).real());
    body["populations"] = pops;
    double coh = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            if (i != j) coh = std::max(coh, std::abs(ss.rho(i, j)));
    body["max_coherence"] = coh;
    if (cfg.baths.size() == 1) {
        const Mat rg = gibbs_state(cfg.system, cfg.baths[0].beta);
        json gp = json::array();
        double mismatch = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            gp.push_back(rg(i, i).real());
            mismatch = std::max(mismatch, std::abs(ss.rho(i, i).real() - rg(i, i).real()));
        }
        body["gibbs_populations"] = gp;
        body["max_population_mismatch"] = mismatch;
    }
    const bool pass = ss.residual < cfg.tolerances.get("steady_state_residual");
    body["verdict"] = pass ? "pass" : "fail";
    {
        std::ofstream out(manifest.dir() / "steady_report.json", std::ios::binary);
        out << body.dump(2) << "\n";
    }
    manifest.write();
    return pass ? kExitOk : kExitCheckFailure;
}

double OracleCurves::deviation_secular() const {
    double s = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        s += 0.5 * dt *
             (std::abs(q_secular[i] - q_exact_direct[i]) +
              std::abs(q_secular[i - 1] - q_exact_direct[i - 1]));
    }
    return s;
}

double OracleCurves::deviation_symmetrized() const {
    double s = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        s += 0.5 * dt *
             (std::abs(q_symmetrized[i] - q_exact_direct[i]) +
              std::abs(q_symmetrized[i - 1] - q_exact_direct[i - 1]));
    }
    return s;
}

OracleCurves run_oracle_benchmark(const RunConfig& cfg, std::uint64_t seed) {
    ExactModel model;
    model.system = cfg.system;
    model.n_bath = cfg.oracle.n_levels;
    model.gamma = cfg.baths[0].gamma;
    model.beta_B = cfg.baths[0].beta;
    model.seed = seed;
    ExactPropagator prop(model);

    BathSpec cal;
    cal.beta = model.beta_B;
    cal.gamma = model.gamma;
    cal.density = prop.calibrate_density();

    // Largest golden-rule rate over the jump channels fixes the relaxation
    // time; the coarse-graining time is the geometric mean of bath and
    // relaxation times (bath time = inverse band span).
    const auto jumps = build_jump_basis(cfg.system);
    double max_rate = 0.0;
    for (const auto& j : jumps) {
        const double a2 = std::norm(j.amplitude);
        max_rate = std::max(
            max_rate, 2.0 * a2 * rate_real(Sign::plus, std::abs(j.omega), 0.0, cal));
        max_rate = std::max(
            max_rate, 2.0 * a2 * rate_real(Sign::minus, std::abs(j.omega), 0.0, cal));
    }
    if (max_rate <= 0.0)
        throw NumericError("oracle benchmark: calibrated rates vanish at the jump "
                           "frequencies");
    const double span = model.bath_max - model.bath_min;
    const double tau_bath = 1.0 / span;
    const double tau_rel = 1.0 / max_rate;
    const double delta0 =
        cfg.oracle.delta0 > 0.0 ? cfg.oracle.delta0 : std::sqrt(tau_bath * tau_rel);

    const double t_recurrence = 2.0 * M_PI * static_cast<double>(model.n_bath - 1) / span;
    const double window = cfg.oracle.window > 0.0
                              ? cfg.oracle.window
                              : std::min(3.0 * tau_rel, 0.4 * t_recurrence);

    OracleCurves out;
    out.seed = seed;
    out.delta0 = delta0;
    out.window = window;
    out.times = linspace(0.0, window, static_cast<std::size_t>(cfg.oracle.points));

    const Mat rho0 = default_initial_state(cfg.system);

    Scheme sec;
    sec.kind = SchemeKind::secular;
    sec.lamb_shift = cfg.scheme.lamb_shift;
    Scheme sym;
    sym.kind = SchemeKind::symmetrized;
    sym.lamb_shift = cfg.scheme.lamb_shift;
    sym.epsilon = cfg.scheme.epsilon ? *cfg.scheme.epsilon : 2.0 / delta0;
    GeneratorBuilder secular(cfg.system, {cal}, sec);
    GeneratorBuilder symmetrized(cfg.system, {cal}, sym);

    const auto exact = prop.heat_series(rho0, out.times);
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        out.q_exact_mgf.push_back(exact[i].q_mgf);
        out.q_exact_direct.push_back(exact[i].q_direct);
        out.q_secular.push_back(heat(secular, rho0, out.times[i], 0));
        out.q_symmetrized.push_back(heat(symmetrized, rho0, out.times[i], 0));
    }
    return out;
}

namespace {

void write_oracle_csv(const fs::path& path, const RunConfig& cfg,
                      const OracleCurves& curves) {
    json prov = {{"seed", curves.seed},
                 {"N", cfg.oracle.n_levels},
                 {"gamma", cfg.baths[0].gamma},
                 {"beta_B", cfg.baths[0].beta},
                 {"delta0", curves.delta0},
                 {"window", curves.window}};
    CsvWriter csv(path, {"t", "q_exact_mgf", "q_exact_direct", "q_secular", "q_symmetrized"},
                  prov.dump());
    for (std::size_t i = 0; i < curves.times.size(); ++i)
        csv.row_doubles({curves.times[i], curves.q_exact_mgf[i], curves.q_exact_direct[i],
                         curves.q_secular[i], curves.q_symmetrized[i]});
}

} // namespace

int cmd_oracle(const RunConfig& cfg, const RunOptions& opt) {
    if (!cfg.oracle.enabled)
        throw ConfigError("oracle runs are disabled in this config; set oracle.enabled "
                          "to true");
    Manifest manifest(cfg, resolve_out_dir(cfg, opt), "oracle");
    const std::uint64_t base_seed = opt.seed ? *opt.seed : cfg.oracle.seed;
    const int n_seeds = std::max(1, cfg.oracle.seeds);

    std::vector<OracleCurves> curves(static_cast<std::size_t>(n_seeds));
    const int workers = std::max(1, opt.workers);
    std::size_t next = 0;
    std::mutex m;
    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next >= curves.size()) return;
                k = next++;
            }
            curves[k] = run_oracle_benchmark(cfg, base_seed + k);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    int symmetrized_better = 0;
    json per_seed = json::array();
    for (std::size_t k = 0; k < curves.size(); ++k) {
        write_oracle_csv(manifest.dir() / ("oracle_seed" + std::to_string(k) + ".csv"),
                         cfg, curves[k]);
        const double ds = curves[k].deviation_secular();
        const double dy = curves[k].deviation_symmetrized();
        if (dy < ds) ++symmetrized_better;
        per_seed.push_back({{"seed", curves[k].seed},
                            {"deviation_secular", ds},
                            {"deviation_symmetrized", dy},
                            {"symmetrized_closer", dy < ds}});
        log_info("seed " + std::to_string(curves[k].seed) +
                 ": |Q_sym - Q_exact| = " + format_double(dy) +
                 ", |Q_sec - Q_exact| = " + format_double(ds));
    }
    {
        std::ofstream out(manifest.dir() / "oracle_summary.json", std::ios::binary);
        out << json({{"seeds", per_seed},
                     {"symmetrized_closer_count", symmetrized_better},
                     {"total_seeds", n_seeds}})
                   .dump(2)
            << "\n";
    }
    manifest.set("symmetrized_closer_count", symmetrized_better);
    manifest.write();
    return kExitOk;
}

namespace {

const char* kFig2PlotScript = R"PY(#!/usr/bin/env python3
"""Render the two-panel figure from fig2_panel_a.csv / fig2_panel_b.csv."""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_csv(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    cols = {name: [float(r[i]) for r in data] for i, name in enumerate(header)}
    return cols


def main():
    a = read_csv("fig2_panel_a.csv")
    b = read_csv("fig2_panel_b.csv")
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

    ax1.plot(a["lambda"], a["log_g"], "o-", label="log G (Lindblad form)")
    ax1.plot(a["lambda"], a["log_g_rev"], "--", label="log G^R(-lambda-beta)")
    ax1.plot(a["lambda"], a["log_g_redfield"], "s-", label="log G (Redfield)")
    ax1.plot(a["lambda"], a["log_g_rev_redfield"], ":", label="log G^R (Redfield)")
    ax1.set_xlabel("lambda")
    ax1.set_ylabel("log G")
    ax1.set_title("detailed fluctuation theorem")
    ax1.legend(fontsize=7)

    ax2.plot(b["t"], b["q_mgf"], label="Q from MGF")
    ax2.plot(b["t"], b["q_energy"], "--", label="Tr[H_S (rho(t)-rho(0))]")
    ax2.plot(b["t"], b["q_secular"], label="Q secular")
    ax2.plot(b["t"], b["q_exact"], label="Q exact")
    ax2.set_xlabel("t")
    ax2.set_ylabel("Q")
    ax2.set_title("heat leaked from the bath")
    ax2.legend(fontsize=7)

    fig.tight_layout()
    out = sys.argv[1] if len(sys.argv) > 1 else "fig2.png"
    fig.savefig(out, dpi=160)
    print("wrote", out)


if __name__ == "__main__":
    main()
)PY";

} // namespace

int cmd_fig2(const RunConfig& cfg, const RunOptions& opt) {
    if (!cfg.oracle.enabled)
        throw ConfigError("fig2 needs the exact oracle; set oracle.enabled to true");
    if (cfg.scheme.kind == SchemeKind::redfield)
        throw ConfigError("fig2 compares a Lindblad-form scheme against Redfield; "
                          "configure scheme.name as secular/symmetrized/coarse_grained");

    Manifest manifest(cfg, resolve_out_dir(cfg, opt), "fig2");
    const std::uint64_t seed = opt.seed ? *opt.seed : cfg.oracle.seed;
    const auto curves = run_oracle_benchmark(cfg, seed);

    // QME builders on the calibrated bath, mirroring the benchmark.
    ExactModel model;
    model.system = cfg.system;
    model.n_bath = cfg.oracle.n_levels;
    model.gamma = cfg.baths[0].gamma;
    model.beta_B = cfg.baths[0].beta;
    model.seed = seed;
    ExactPropagator prop(model);
    BathSpec cal;
    cal.beta = model.beta_B;
    cal.gamma = model.gamma;
    cal.density = prop.calibrate_density();

    Scheme lin = cfg.scheme;
    if (lin.kind == SchemeKind::symmetrized && !lin.epsilon)
        lin.epsilon = 2.0 / curves.delta0;
    if (lin.kind == SchemeKind::coarse_grained && lin.delta0 <= 0.0)
        lin.delta0 = curves.delta0;
    GeneratorBuilder lindblad(cfg.system, {cal}, lin);
    Scheme red = cfg.scheme;
    red.kind = SchemeKind::redfield;
    GeneratorBuilder redfield(cfg.system, {cal}, red);

    const double beta_s = cfg.resolved_beta_S();
    const double t_ft = cfg.times.ft_time > 0.0 ? cfg.times.ft_time : 0.5 * curves.window;
    const auto lam_grid =
        linspace(-beta_s, 0.0, static_cast<std::size_t>(cfg.counting.points));
    const auto curve_lin = ft_curve(lindblad, t_ft, beta_s, lam_grid);
    const auto curve_red = ft_curve(redfield, t_ft, beta_s, lam_grid);

    {
        CsvWriter csv(manifest.dir() / "fig2_panel_a.csv",
                      {"lambda", "log_g", "log_g_rev", "log_g_redfield",
                       "log_g_rev_redfield"},
                      std::string("scheme=") + scheme_name(lin.kind) +
                          " t=" + format_double(t_ft));
        for (std::size_t i = 0; i < lam_grid.size(); ++i)
            csv.row_doubles({lam_grid[i], curve_lin.log_g[i], curve_lin.log_g_rev[i],
                             curve_red.log_g[i], curve_red.log_g_rev[i]});
    }

    // Panel (b): MGF-route heat vs energy route for the Lindblad scheme,
    // plus secular and exact reference curves.
    const Mat rho0 = default_initial_state(cfg.system);
    const Mat h = cfg.system.hamiltonian();
    const auto zero = lindblad.build_zero();
    const double e0 = (h * rho0).trace().real();

    std::vector<double> q_mgf, q_energy;
    for (double t : curves.times) {
        q_mgf.push_back(heat(lindblad, rho0, t, 0));
        const Mat rho_t = propagate(zero, rho0, t).rho;
        q_energy.push_back((h * rho_t).trace().real() - e0);
    }
    {
        CsvWriter csv(manifest.dir() / "fig2_panel_b.csv",
                      {"t", "q_mgf", "q_energy", "q_secular", "q_exact"},
                      std::string("scheme=") + scheme_name(lin.kind) +
                          " seed=" + std::to_string(seed));
        for (std::size_t i = 0; i < curves.times.size(); ++i)
            csv.row_doubles({curves.times[i], q_mgf[i], q_energy[i], curves.q_secular[i],
                             curves.q_exact_direct[i]});
    }
    {
        std::ofstream out(manifest.dir() / "fig2_plot.py", std::ios::binary);
        out << kFig2PlotScript;
    }

    // Verdicts: FT symmetry of the Lindblad curve and the first-law overlap.
    double ft_residual = 0.0;
    for (std::size_t i = 0; i < lam_grid.size(); ++i)
        ft_residual =
            std::max(ft_residual, std::abs(curve_lin.log_g_rev[i] - curve_lin.log_g[i]));
    double first_law = 0.0;
    for (std::size_t i = 0; i < curves.times.size(); ++i) {
        const double scale =
            std::max({std::abs(q_mgf[i]), std::abs(q_energy[i]), 1e-12});
        first_law = std::max(first_law, std::abs(q_mgf[i] - q_energy[i]) / scale);
    }
    std::vector<CheckReport> reports = {
        CheckReport::make("fig2_ft_symmetry", ft_residual,
                          cfg.tolerances.get("ft_detailed")),
        CheckReport::make("fig2_first_law_overlap", first_law,
                          cfg.tolerances.get("first_law_trajectory")),
    };
    manifest.add_checks(reports);
    manifest.write();
    return (reports[0].pass && reports[1].pass) ? kExitOk : kExitCheckFailure;
}

} // namespace qmelab
