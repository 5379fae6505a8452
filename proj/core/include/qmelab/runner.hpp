// runner.hpp — Experiment orchestration behind the CLI subcommands: builds
// generators from a RunConfig, runs the consistency suite and trajectory /
// FT / oracle studies, and emits deterministic CSV/JSON artifacts with a
// hashed manifest.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qmelab/config.hpp"
#include "qmelab/consistency.hpp"
#include "qmelab/counting_stats.hpp"
#include "qmelab/exact_oracle.hpp"

namespace qmelab {

struct RunOptions {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    int workers = 1;
};

// Exit codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

// Default transient initial state: uniform-phase superposition of the two
// highest levels with 1:3 weights, (|d-2> + √3 |d-1>)(<d-2| + √3 <d-1|)/4.
Mat default_initial_state(const SystemSpec& spec);

// Full-rank variant for checks that need log ρ0: mixes in 2% of I/d.
Mat regularized_initial_state(const SystemSpec& spec);

GeneratorBuilder make_builder(const RunConfig& cfg);
GeneratorBuilder make_builder(const RunConfig& cfg, SchemeKind kind);

// The consistency suite for one configured scheme.
std::vector<CheckReport> run_consistency_suite(const RunConfig& cfg);

// Exact-vs-QME heat curves for one GOE seed: the QME side uses the spectral
// density calibrated from the sampled bath.
struct OracleCurves {
    std::uint64_t seed = 0;
    double delta0 = 0.0;   // coarse-graining time used for the comparison window
    double window = 0.0;
    std::vector<double> times;
    std::vector<double> q_exact_mgf;
    std::vector<double> q_exact_direct;
    std::vector<double> q_secular;
    std::vector<double> q_symmetrized;

    double deviation_secular() const;     // integrated |q_secular - q_exact|
    double deviation_symmetrized() const; // integrated |q_symmetrized - q_exact|
};

OracleCurves run_oracle_benchmark(const RunConfig& cfg, std::uint64_t seed);

int cmd_check(const RunConfig& cfg, const RunOptions& opt);
int cmd_evolve(const RunConfig& cfg, const RunOptions& opt);
int cmd_ft(const RunConfig& cfg, const RunOptions& opt);
int cmd_steady(const RunConfig& cfg, const RunOptions& opt);
int cmd_oracle(const RunConfig& cfg, const RunOptions& opt);
int cmd_fig2(const RunConfig& cfg, const RunOptions& opt);

} // namespace qmelab
