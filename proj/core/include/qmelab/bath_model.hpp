// bath_model.hpp — Thermal baths: spectral densities, Bose–Einstein
// occupations, and the tilted half-Fourier correlation transforms
// Γ±(ω, λ) = R±(ω, λ) + i·I±(ω, λ) with their KMS and tilt symmetries.
//
// Conventions (shared by every generator scheme):
//   R+(ω, λ) = π γ² J(ω) (n_B(ω) + 1) e^{+λω}
//   R-(ω, λ) = π γ² J(ω)  n_B(ω)      e^{-λω}        (zero outside 0 < ω < Ω)
//   I+(ω, λ) = PV ∫ dω' γ² J(ω')(n_B+1) e^{+λω'} / (ω  - ω')
//   I-(ω, λ) = PV ∫ dω' γ² J(ω') n_B   e^{-λω'} / (ω' - ω )
// The opposite principal-value orientations of I± come from the one-sided
// Fourier transforms carrying e^{+iωs} and e^{-iωs}; they are what make the
// tilt symmetry Γ±(ω, -λ-β) = conj(Γ∓(ω, λ)) hold exactly.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "qmelab/quadrature.hpp"
#include "qmelab/types.hpp"

namespace qmelab {

enum class Sign { plus, minus };

// ------------------------------------------------------------ spectral density

struct SpectralDensity {
    enum class Kind { ohmic_exp_cutoff, flat_smooth_cutoff, lorentzian_peak, tabulated };

    Kind kind = Kind::ohmic_exp_cutoff;
    double eta = 1.0;       // overall amplitude
    double cutoff = 1.0;    // hard support edge Ω; J(ω) = 0 outside [0, Ω]
    double omega_c = 0.5;   // ohmic exponential cutoff scale
    double ramp = 0.05;     // smoothstep width for flat_smooth_cutoff
    double center = 0.5;    // lorentzian peak position
    double width = 0.1;     // lorentzian half width
    std::vector<std::pair<double, double>> table; // (ω, J) sorted by ω

    double operator()(double omega) const;

    // Interior points where J is not smooth (table nodes, smoothstep corners);
    // quadratures split at these.
    std::vector<double> breakpoints() const;

    static SpectralDensity ohmic(double eta, double omega_c, double cutoff);
    static SpectralDensity flat(double eta, double ramp, double cutoff);
    static SpectralDensity lorentzian(double eta, double center, double width, double cutoff);
    static SpectralDensity tabulated_from(std::vector<std::pair<double, double>> table);
    // Two-column CSV (ω, J), '#' comments allowed, linearly interpolated.
    static SpectralDensity from_csv(const std::string& path);
};

// ----------------------------------------------------------------- bath spec

struct BathSpec {
    double beta = 1.0;   // inverse temperature, > 0
    double gamma = 1.0;  // dimensionless overall coupling, >= 0
    SpectralDensity density;

    void validate() const;
};

// ---------------------------------------------------------------- occupations

// n_B = 1/(e^{βω} - 1), computed with expm1; requires ω > 0.
double bose_einstein(double beta, double omega);

// ---------------------------------------------------------------- transforms

double rate_real(Sign sign, double omega, double lambda, const BathSpec& bath);

double lamb_imag(Sign sign, double omega, double lambda, const BathSpec& bath,
                 const QuadratureOptions& opt = {});

// Cached evaluation of Γ±(ω, λ) for one bath. The principal-value integrals
// are memoized by exact (sign, ω, λ) key; the cache is mutex-guarded so
// concurrent readers see consistent values.
class CorrelationTransforms {
  public:
    CorrelationTransforms(BathSpec bath, bool include_lamb = true,
                          QuadratureOptions opt = {});

    const BathSpec& bath() const { return bath_; }
    bool includes_lamb() const { return include_lamb_; }

    double rate(Sign sign, double omega, double lambda) const;
    double lamb(Sign sign, double omega, double lambda) const; // 0 when disabled
    cd gamma(Sign sign, double omega, double lambda) const;    // R + i·I

  private:
    BathSpec bath_;
    bool include_lamb_;
    QuadratureOptions opt_;
    mutable std::map<std::tuple<int, double, double>, double> lamb_cache_;
    mutable std::mutex mutex_;
};

} // namespace qmelab
