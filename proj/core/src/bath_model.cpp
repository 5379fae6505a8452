#include "qmelab/bath_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qmelab {

namespace {

double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * (3.0 - 2.0 * x);
}

} // namespace

double SpectralDensity::operator()(double omega) const {
    if (omega < 0.0 || omega > cutoff) return 0.0;
    switch (kind) {
        case Kind::ohmic_exp_cutoff:
            return eta * omega * std::exp(-omega / omega_c);
        case Kind::flat_smooth_cutoff:
            return eta * smoothstep(omega / ramp) * smoothstep((cutoff - omega) / ramp);
        case Kind::lorentzian_peak: {
            const double w2 = width * width;
            const double d = omega - center;
            return eta * (omega / center) * w2 / (d * d + w2);
        }
        case Kind::tabulated: {
            if (table.empty()) return 0.0;
            if (omega <= table.front().first) // below first node: ramp from (0,0)
                return table.front().first <= 0.0
                           ? table.front().second
                           : table.front().second * (omega / table.front().first);
            if (omega >= table.back().first) return 0.0;
            auto hi = std::upper_bound(
                table.begin(), table.end(), omega,
                [](double w, const std::pair<double, double>& p) { return w < p.first; });
            auto lo = hi - 1;
            const double t = (omega - lo->first) / (hi->first - lo->first);
            return std::max(0.0, lo->second + t * (hi->second - lo->second));
        }
    }
    return 0.0;
}

std::vector<double> SpectralDensity::breakpoints() const {
    switch (kind) {
        case Kind::flat_smooth_cutoff:
            return {ramp, cutoff - ramp};
        case Kind::tabulated: {
            std::vector<double> pts;
            pts.reserve(table.size());
            for (const auto& [w, _] : table) pts.push_back(w);
            return pts;
        }
        default:
            return {};
    }
}

SpectralDensity SpectralDensity::ohmic(double eta, double omega_c, double cutoff) {
    SpectralDensity j;
    j.kind = Kind::ohmic_exp_cutoff;
    j.eta = eta;
    j.omega_c = omega_c;
    j.cutoff = cutoff;
    return j;
}

SpectralDensity SpectralDensity::flat(double eta, double ramp, double cutoff) {
    SpectralDensity j;
    j.kind = Kind::flat_smooth_cutoff;
    j.eta = eta;
    j.ramp = ramp;
    j.cutoff = cutoff;
    return j;
}

SpectralDensity SpectralDensity::lorentzian(double eta, double center, double width,
                                            double cutoff) {
    SpectralDensity j;
    j.kind = Kind::lorentzian_peak;
    j.eta = eta;
    j.center = center;
    j.width = width;
    j.cutoff = cutoff;
    return j;
}

SpectralDensity SpectralDensity::tabulated_from(std::vector<std::pair<double, double>> table) {
    if (table.size() < 2) throw InvalidInput("tabulated density needs at least two points");
    std::sort(table.begin(), table.end());
    SpectralDensity j;
    j.kind = Kind::tabulated;
    j.table = std::move(table);
    j.cutoff = j.table.back().first;
    return j;
}

SpectralDensity SpectralDensity::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open spectral density table: " + path);
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double w, j;
        if (row >> w >> j) table.emplace_back(w, j);
    }
    return tabulated_from(std::move(table));
}

void BathSpec::validate() const {
    if (!(beta > 0.0)) throw InvalidInput("BathSpec: beta must be positive");
    if (gamma < 0.0) throw InvalidInput("BathSpec: gamma must be nonnegative");
    if (density.cutoff <= 0.0) throw InvalidInput("BathSpec: cutoff must be positive");
}

double bose_einstein(double beta, double omega) {
    if (omega <= 0.0) throw InvalidInput("bose_einstein: omega must be positive");
    return 1.0 / std::expm1(beta * omega);
}

namespace {

// J(ω)(n_B + 1/2 ± 1/2) e^{±λω}, safe at ω → 0 where J vanishes.
double occupied_density(Sign sign, double omega, double lambda, const BathSpec& bath) {
    if (omega <= 0.0 || omega >= bath.density.cutoff) return 0.0;
    const double j = bath.density(omega);
    if (j == 0.0) return 0.0;
    const double n = 1.0 / std::expm1(bath.beta * omega);
    if (sign == Sign::plus) return j * (n + 1.0) * std::exp(lambda * omega);
    return j * n * std::exp(-lambda * omega);
}

} // namespace

double rate_real(Sign sign, double omega, double lambda, const BathSpec& bath) {
    const double g2 = bath.gamma * bath.gamma;
    return M_PI * g2 * occupied_density(sign, omega, lambda, bath);
}

double lamb_imag(Sign sign, double omega, double lambda, const BathSpec& bath,
                 const QuadratureOptions& opt) {
    const double g2 = bath.gamma * bath.gamma;
    auto f = [&](double w) { return g2 * occupied_density(sign, w, lambda, bath); };
    const double pv = pv_cauchy(f, 0.0, bath.density.cutoff, omega, opt,
                                bath.density.breakpoints());
    // I+ carries PV/(ω - ω'), I- carries PV/(ω' - ω); pv_cauchy uses (ω' - ω).
    return sign == Sign::plus ? -pv : pv;
}

CorrelationTransforms::CorrelationTransforms(BathSpec bath, bool include_lamb,
                                             QuadratureOptions opt)
    : bath_(std::move(bath)), include_lamb_(include_lamb), opt_(opt) {
    bath_.validate();
}

double CorrelationTransforms::rate(Sign sign, double omega, double lambda) const {
    return rate_real(sign, omega, lambda, bath_);
}

double CorrelationTransforms::lamb(Sign sign, double omega, double lambda) const {
    if (!include_lamb_) return 0.0;
    const auto key = std::make_tuple(sign == Sign::plus ? 1 : -1, omega, lambda);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = lamb_cache_.find(key);
        if (it != lamb_cache_.end()) return it->second;
    }
    const double value = lamb_imag(sign, omega, lambda, bath_, opt_);
    std::lock_guard<std::mutex> lock(mutex_);
    lamb_cache_.emplace(key, value);
    return value;
}

cd CorrelationTransforms::gamma(Sign sign, double omega, double lambda) const {
    return cd(rate(sign, omega, lambda), lamb(sign, omega, lambda));
}

} // namespace qmelab
