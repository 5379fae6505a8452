#include "qmelab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qmelab {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required = {}) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
    for (const auto& key : required)
        if (!obj.contains(key))
            throw ConfigError(where + ": missing required key '" + key + "'");
}

cd parse_complex(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(where + ": complex values are [re, im] pairs");
    return cd(v[0].get<double>(), v[1].get<double>());
}

SpectralDensity parse_density(const json& j) {
    require_keys(j, "spectral_density",
                 {"kind", "eta", "cutoff", "omega_c", "ramp", "center", "width", "path",
                  "table"},
                 {"kind"});
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ohmic_exp_cutoff") {
        return SpectralDensity::ohmic(j.value("eta", 1.0), j.value("omega_c", 0.5),
                                      j.value("cutoff", 1.0));
    }
    if (kind == "flat_smooth_cutoff") {
        return SpectralDensity::flat(j.value("eta", 1.0), j.value("ramp", 0.05),
                                     j.value("cutoff", 1.0));
    }
    if (kind == "lorentzian_peak") {
        return SpectralDensity::lorentzian(j.value("eta", 1.0), j.value("center", 0.5),
                                           j.value("width", 0.1), j.value("cutoff", 1.0));
    }
    if (kind == "tabulated") {
        if (j.contains("path")) return SpectralDensity::from_csv(j.at("path").get<std::string>());
        if (j.contains("table")) {
            std::vector<std::pair<double, double>> table;
            for (const auto& row : j.at("table"))
                table.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
            return SpectralDensity::tabulated_from(std::move(table));
        }
        throw ConfigError("spectral_density: tabulated kind needs 'path' or 'table'");
    }
    throw ConfigError("spectral_density: unknown kind '" + kind + "'");
}

json density_to_json(const SpectralDensity& d) {
    json j;
    switch (d.kind) {
        case SpectralDensity::Kind::ohmic_exp_cutoff:
            j = {{"kind", "ohmic_exp_cutoff"}, {"eta", d.eta}, {"omega_c", d.omega_c},
                 {"cutoff", d.cutoff}};
            break;
        case SpectralDensity::Kind::flat_smooth_cutoff:
            j = {{"kind", "flat_smooth_cutoff"}, {"eta", d.eta}, {"ramp", d.ramp},
                 {"cutoff", d.cutoff}};
            break;
        case SpectralDensity::Kind::lorentzian_peak:
            j = {{"kind", "lorentzian_peak"}, {"eta", d.eta}, {"center", d.center},
                 {"width", d.width}, {"cutoff", d.cutoff}};
            break;
        case SpectralDensity::Kind::tabulated: {
            json rows = json::array();
            for (const auto& [w, v] : d.table) rows.push_back({w, v});
            j = {{"kind", "tabulated"}, {"table", rows}};
            break;
        }
    }
    return j;
}

} // namespace

std::vector<double> TimesConfig::grid() const {
    if (points <= 0) return {};
    return linspace(start, stop, static_cast<std::size_t>(points));
}

double Tolerances::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("unknown tolerance key: " + key);
    return it->second;
}

Tolerances Tolerances::defaults() {
    Tolerances t;
    t.values = {
        {"gqdb", 1e-8},
        {"gqdb_redfield_ratio", 1e3},
        {"strict_energy", 1e-10},
        {"average_first_law", 1e-8},
        {"first_law_trajectory", 1e-6},
        {"ft_detailed", 1e-6},
        {"ft_redfield_ratio", 1e2},
        {"ft_integral", 1e-6},
        {"gibbs_fixed_point", 1e-10},
        {"steady_state_residual", 1e-8},
        {"coherence_band_low", 1e-5},
        {"coherence_band_high", 1e-3},
        {"sinc_zero", 1e-12},
        {"sinc_far", 1e-3},
        {"second_law", 1e-10},
        {"kms", 1e-13},
        {"tilt_symmetry", 1e-8},
        {"trace_preservation", 1e-12},
    };
    return t;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    require_keys(root, "config",
                 {"system", "baths", "scheme", "beta_S", "counting", "times", "oracle",
                  "output", "tolerances"},
                 {"system", "baths", "scheme"});

    RunConfig cfg;

    const auto& sys = root.at("system");
    require_keys(sys, "system", {"energies", "couplings", "allow_diagonal"},
                 {"energies", "couplings"});
    const auto& en = sys.at("energies");
    if (!en.is_array() || en.size() < 2)
        throw ConfigError("system.energies: need at least two levels");
    cfg.system.energies.resize(static_cast<Eigen::Index>(en.size()));
    for (std::size_t i = 0; i < en.size(); ++i)
        cfg.system.energies(static_cast<Eigen::Index>(i)) = en[i].get<double>();
    const auto d = cfg.system.energies.size();
    const auto& cp = sys.at("couplings");
    if (!cp.is_array() || cp.size() != static_cast<std::size_t>(d))
        throw ConfigError("system.couplings: expected a d x d matrix of [re, im] pairs");
    cfg.system.g = Mat::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        const auto& row = cp[static_cast<std::size_t>(m)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
            throw ConfigError("system.couplings: expected a d x d matrix of [re, im] pairs");
        for (Eigen::Index n = 0; n < d; ++n)
            cfg.system.g(m, n) =
                parse_complex(row[static_cast<std::size_t>(n)], "system.couplings");
    }
    cfg.system.allow_diagonal = sys.value("allow_diagonal", false);
    try {
        cfg.system.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("system: ") + e.what());
    }

    const auto& baths = root.at("baths");
    if (!baths.is_array() || baths.empty())
        throw ConfigError("baths: need at least one bath");
    for (const auto& b : baths) {
        require_keys(b, "baths[]", {"beta", "gamma", "spectral_density"},
                     {"beta", "spectral_density"});
        BathSpec spec;
        spec.beta = b.at("beta").get<double>();
        spec.gamma = b.value("gamma", 1.0);
        spec.density = parse_density(b.at("spectral_density"));
        try {
            spec.validate();
        } catch (const InvalidInput& e) {
            throw ConfigError(std::string("baths: ") + e.what());
        }
        cfg.baths.push_back(std::move(spec));
    }

    const auto& sch = root.at("scheme");
    require_keys(sch, "scheme", {"name", "epsilon", "delta0", "lamb_shift"}, {"name"});
    try {
        cfg.scheme.kind = scheme_from_name(sch.at("name").get<std::string>());
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("scheme: ") + e.what());
    }
    if (sch.contains("epsilon")) cfg.scheme.epsilon = sch.at("epsilon").get<double>();
    cfg.scheme.delta0 = sch.value("delta0", 0.0);
    cfg.scheme.lamb_shift = sch.value("lamb_shift", true);
    try {
        cfg.scheme.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("scheme: ") + e.what());
    }

    cfg.beta_S = root.value("beta_S", 0.0);

    if (root.contains("counting")) {
        require_keys(root.at("counting"), "counting", {"points"});
        cfg.counting.points = root.at("counting").value("points", 11);
        if (cfg.counting.points < 2) throw ConfigError("counting.points: need >= 2");
    }
    if (root.contains("times")) {
        const auto& tm = root.at("times");
        require_keys(tm, "times", {"start", "stop", "points", "ft_time"});
        cfg.times.start = tm.value("start", 0.0);
        cfg.times.stop = tm.value("stop", 1.0);
        cfg.times.points = tm.value("points", 21);
        cfg.times.ft_time = tm.value("ft_time", 0.0);
        if (cfg.times.points < 0) throw ConfigError("times.points: must be nonnegative");
        if (cfg.times.stop < cfg.times.start)
            throw ConfigError("times: stop must not precede start");
    }
    if (root.contains("oracle")) {
        const auto& oc = root.at("oracle");
        require_keys(oc, "oracle",
                     {"enabled", "N", "seed", "seeds", "window", "points", "delta0"});
        cfg.oracle.enabled = oc.value("enabled", false);
        cfg.oracle.n_levels = oc.value("N", 300);
        cfg.oracle.seed = oc.value("seed", std::uint64_t{1});
        cfg.oracle.seeds = oc.value("seeds", 5);
        cfg.oracle.window = oc.value("window", 0.0);
        cfg.oracle.points = oc.value("points", 25);
        cfg.oracle.delta0 = oc.value("delta0", 0.0);
    }
    if (root.contains("output")) {
        const auto& oc = root.at("output");
        require_keys(oc, "output", {"directory", "formats"});
        cfg.output.directory = oc.value("directory", std::string("out"));
        if (oc.contains("formats"))
            cfg.output.formats = oc.at("formats").get<std::vector<std::string>>();
    }
    if (root.contains("tolerances")) {
        const auto& tols = root.at("tolerances");
        if (!tols.is_object()) throw ConfigError("tolerances: expected an object");
        for (const auto& [key, value] : tols.items()) {
            if (!cfg.tolerances.values.count(key))
                throw ConfigError("tolerances: unknown key '" + key + "'");
            cfg.tolerances.values[key] = value.get<double>();
        }
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string RunConfig::echo_json() const {
    json root;
    json energies = json::array();
    for (Eigen::Index i = 0; i < system.energies.size(); ++i)
        energies.push_back(system.energies(i));
    json couplings = json::array();
    for (Eigen::Index m = 0; m < system.g.rows(); ++m) {
        json row = json::array();
        for (Eigen::Index n = 0; n < system.g.cols(); ++n)
            row.push_back({system.g(m, n).real(), system.g(m, n).imag()});
        couplings.push_back(row);
    }
    root["system"] = {{"energies", energies},
                      {"couplings", couplings},
                      {"allow_diagonal", system.allow_diagonal}};
    json jb = json::array();
    for (const auto& b : baths)
        jb.push_back({{"beta", b.beta},
                      {"gamma", b.gamma},
                      {"spectral_density", density_to_json(b.density)}});
    root["baths"] = jb;
    json jsch = {{"name", scheme_name(scheme.kind)}, {"lamb_shift", scheme.lamb_shift}};
    if (scheme.epsilon) jsch["epsilon"] = *scheme.epsilon;
    if (scheme.delta0 > 0.0) jsch["delta0"] = scheme.delta0;
    root["scheme"] = jsch;
    root["beta_S"] = resolved_beta_S();
    root["counting"] = {{"points", counting.points}};
    root["times"] = {{"start", times.start},
                     {"stop", times.stop},
                     {"points", times.points},
                     {"ft_time", times.resolved_ft_time()}};
    root["oracle"] = {{"enabled", oracle.enabled}, {"N", oracle.n_levels},
                      {"seed", oracle.seed},       {"seeds", oracle.seeds},
                      {"window", oracle.window},   {"points", oracle.points},
                      {"delta0", oracle.delta0}};
    root["output"] = {{"directory", output.directory}, {"formats", output.formats}};
    json jt;
    for (const auto& [k, v] : tolerances.values) jt[k] = v;
    root["tolerances"] = jt;
    return root.dump(2);
}

} // namespace qmelab
