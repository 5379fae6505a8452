// config.hpp — Declarative run configuration: JSON schema validation
// (unknown keys rejected), complex numbers as [re, im] pairs.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmelab/bath_model.hpp"
#include "qmelab/generators.hpp"
#include "qmelab/system_model.hpp"

namespace qmelab {

struct CountingConfig {
    int points = 11;          // λ grid size on the FT-symmetric interval
};

struct TimesConfig {
    double start = 0.0;
    double stop = 1.0;
    int points = 21;
    double ft_time = 0.0;     // fixed transient time for FT checks; 0 = stop/2

    std::vector<double> grid() const;
    double resolved_ft_time() const { return ft_time > 0.0 ? ft_time : 0.5 * stop; }
};

struct OracleConfig {
    bool enabled = false;
    int n_levels = 300;
    std::uint64_t seed = 1;
    int seeds = 5;            // number of GOE draws for the benchmark
    double window = 0.0;      // comparison window [0, window]; 0 = auto
    int points = 25;          // time samples inside the window
    double delta0 = 0.0;      // coarse-graining time; 0 = geometric-mean auto
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "json"};
};

struct Tolerances {
    std::map<std::string, double> values;
    double get(const std::string& key) const; // throws ConfigError on unknown key
    static Tolerances defaults();
};

struct RunConfig {
    SystemSpec system;
    std::vector<BathSpec> baths;
    Scheme scheme;
    double beta_S = 0.0;      // system Gibbs temperature for FT checks; 0 = baths[0].beta
    CountingConfig counting;
    TimesConfig times;
    OracleConfig oracle;
    OutputConfig output;
    Tolerances tolerances = Tolerances::defaults();

    double resolved_beta_S() const { return beta_S > 0.0 ? beta_S : baths.at(0).beta; }

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::filesystem::path& path);
    std::string echo_json() const; // resolved configuration echo
};

} // namespace qmelab
