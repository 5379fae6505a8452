// generators.hpp — Counting-field-tilted generators of quantum master
// equations: Redfield, secular, symmetrized-Lindblad, and coarse-grained
// variants, plus their adjoint and time-reversed counterparts.
//
// All schemes share the bath_model conventions for R± and I±. System counting
// λ_S enters every scheme through the exact similarity sandwich
//   L_{λS,λB}[X] = e^{λS H/2} L_{0,λB}[e^{-λS H/2} X e^{-λS H/2}] e^{λS H/2},
// which in the eigenbasis multiplies each jump/anticommutator term by
// half-exponent Bohr-frequency factors.

#pragma once

#include <optional>
#include <vector>

#include "qmelab/bath_model.hpp"
#include "qmelab/operator_core.hpp"
#include "qmelab/system_model.hpp"

namespace qmelab {

enum class SchemeKind { redfield, secular, symmetrized, coarse_grained };

struct Scheme {
    SchemeKind kind = SchemeKind::secular;
    std::optional<double> epsilon; // symmetrized: pairing window; empty = auto
    double delta0 = 0.0;           // coarse-grained: coarse-graining time, > 0
    bool lamb_shift = true;

    void validate() const;
};

const char* scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

struct TiltedGenerator {
    Scheme scheme;
    double lambda_S = 0.0;
    std::vector<double> lambda_B;
    Mat matrix; // d² x d², acts on vectorized operators
    SystemSpec system;
    std::vector<BathSpec> baths;

    Eigen::Index dim() const { return system.dim(); }
};

// Builds tilted generators for one (system, baths, scheme) triple. Pure and
// immutable after construction apart from the memoized quadrature cache, so
// builds over λ-grids may run concurrently.
class GeneratorBuilder {
  public:
    GeneratorBuilder(SystemSpec system, std::vector<BathSpec> baths, Scheme scheme,
                     QuadratureOptions quad = {});

    TiltedGenerator build(double lambda_S, const std::vector<double>& lambda_B) const;
    TiltedGenerator build_bath_tilted(const std::vector<double>& lambda_B) const;
    TiltedGenerator build_zero() const;
    // All counting fields set to the same χ (strict-energy-balance probe).
    TiltedGenerator build_uniform(double chi) const;

    const SystemSpec& system() const { return system_; }
    const std::vector<BathSpec>& baths() const { return baths_; }
    const Scheme& scheme() const { return scheme_; }
    const std::vector<JumpOperator>& jumps() const { return jumps_; }
    double bohr_tolerance() const { return tol_omega_; }
    // Symmetrized pairing window actually in use (explicit or auto-resolved).
    double resolved_epsilon() const;

  private:
    Mat dissipator(std::size_t alpha, double lambda_S, double lambda_alpha) const;

    SystemSpec system_;
    std::vector<BathSpec> baths_;
    Scheme scheme_;
    std::vector<JumpOperator> jumps_;
    std::vector<std::shared_ptr<CorrelationTransforms>> transforms_;
    double tol_omega_ = 0.0;
    double epsilon_ = 0.0;
};

// Exact λ_S similarity sandwich on a generator built with λ_S = 0.
TiltedGenerator add_system_counting(const TiltedGenerator& g, double lambda_S);

// Time-reversed generator L^R[X] = Θ L[Θ X Θ] Θ with Θ = complex conjugation
// in the energy eigenbasis; requires time-reversal-even couplings.
TiltedGenerator reversed_generator(const TiltedGenerator& g);

} // namespace qmelab
