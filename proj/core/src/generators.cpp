#include "qmelab/generators.hpp"

#include <cmath>
#include <limits>

namespace qmelab {

void Scheme::validate() const {
    if (kind == SchemeKind::symmetrized && epsilon && !(*epsilon > 0.0))
        throw InvalidInput("Scheme: symmetrized epsilon must be positive");
    if (kind == SchemeKind::coarse_grained && !(delta0 > 0.0))
        throw InvalidInput("Scheme: coarse-grained delta0 must be positive");
}

const char* scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::redfield: return "redfield";
        case SchemeKind::secular: return "secular";
        case SchemeKind::symmetrized: return "symmetrized";
        case SchemeKind::coarse_grained: return "coarse_grained";
    }
    return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
    if (name == "redfield") return SchemeKind::redfield;
    if (name == "secular") return SchemeKind::secular;
    if (name == "symmetrized") return SchemeKind::symmetrized;
    if (name == "coarse_grained") return SchemeKind::coarse_grained;
    throw InvalidInput("unknown scheme: " + name);
}

GeneratorBuilder::GeneratorBuilder(SystemSpec system, std::vector<BathSpec> baths,
                                   Scheme scheme, QuadratureOptions quad)
    : system_(std::move(system)), baths_(std::move(baths)), scheme_(scheme) {
    system_.validate();
    scheme_.validate();
    if (baths_.empty()) throw InvalidInput("GeneratorBuilder: need at least one bath");
    for (const auto& b : baths_) b.validate();
    jumps_ = build_jump_basis(system_);
    if (jumps_.empty()) throw InvalidInput("GeneratorBuilder: coupling matrix has no jumps");
    tol_omega_ = kBohrDedupTol * system_.energy_scale();
    for (const auto& b : baths_)
        transforms_.push_back(
            std::make_shared<CorrelationTransforms>(b, scheme_.lamb_shift, quad));

    if (scheme_.kind == SchemeKind::symmetrized) {
        if (scheme_.epsilon) {
            epsilon_ = *scheme_.epsilon;
        } else {
            // SM-style default: geometric means over coupled pairs of |I| when
            // the Lamb shift dominates the damping rates, else over R.
            double mean_r = 0.0, mean_i = 0.0;
            std::size_t count = 0;
            for (std::size_t a = 0; a < baths_.size(); ++a)
                for (const auto& j : jumps_)
                    for (Sign s : {Sign::plus, Sign::minus}) {
                        mean_r += std::abs(transforms_[a]->rate(s, j.omega, 0.0));
                        mean_i += std::abs(lamb_imag(s, j.omega, 0.0, baths_[a]));
                        ++count;
                    }
            mean_r /= static_cast<double>(count);
            mean_i /= static_cast<double>(count);
            const bool use_lamb = scheme_.lamb_shift && mean_i > mean_r;
            double eps = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < baths_.size(); ++a)
                for (const auto& j : jumps_)
                    for (const auto& k : jumps_)
                        for (Sign s : {Sign::plus, Sign::minus}) {
                            const double vj = use_lamb
                                                  ? lamb_imag(s, j.omega, 0.0, baths_[a])
                                                  : transforms_[a]->rate(s, j.omega, 0.0);
                            const double vk = use_lamb
                                                  ? lamb_imag(s, k.omega, 0.0, baths_[a])
                                                  : transforms_[a]->rate(s, k.omega, 0.0);
                            const double gm = std::sqrt(std::abs(vj * vk));
                            if (gm > 0.0) eps = std::min(eps, gm);
                        }
            if (!std::isfinite(eps))
                throw NumericError(
                    "symmetrized scheme: cannot auto-resolve epsilon (all rates vanish); "
                    "set it explicitly");
            epsilon_ = eps;
        }
    }
}

double GeneratorBuilder::resolved_epsilon() const {
    if (scheme_.kind != SchemeKind::symmetrized)
        throw InvalidInput("resolved_epsilon: scheme is not symmetrized");
    return epsilon_;
}

// One bath's dissipator superoperator. λ_S enters only for the coarse-grained
// scheme (the others are built at λ_S = 0 and sandwiched afterwards).
Mat GeneratorBuilder::dissipator(std::size_t alpha, double lambda_S,
                                 double lambda_alpha) const {
    const auto d = system_.dim();
    const auto& tf = *transforms_[alpha];
    Mat m = Mat::Zero(d * d, d * d);

    const std::size_t nj = jumps_.size();
    for (std::size_t jj = 0; jj < nj; ++jj) {
        const auto& j = jumps_[jj];
        const Mat aj = j.a();
        for (std::size_t kk = 0; kk < nj; ++kk) {
            const auto& k = jumps_[kk];
            const Mat ak = k.a();
            const double gap = std::abs(j.omega - k.omega);
            const bool degenerate = gap <= tol_omega_;

            // Term shapes for the ordered pair (j, k).
            const Mat jump_plus = sandwich_superop(aj, ak.adjoint());          // A_j ρ A_k†
            const Mat jump_minus = sandwich_superop(aj.adjoint(), ak);         // A_j† ρ A_k
            const Mat x = aj.adjoint() * ak;                                   // A_j† A_k
            const Mat y = aj * ak.adjoint();                                   // A_j A_k†
            const Mat lx = left_mult_superop(x), rx = right_mult_superop(x);
            const Mat ly = left_mult_superop(y), ry = right_mult_superop(y);

            switch (scheme_.kind) {
                case SchemeKind::redfield:
                case SchemeKind::secular: {
                    if (scheme_.kind == SchemeKind::secular && !degenerate) break;
                    const cd gpk = tf.gamma(Sign::plus, k.omega, lambda_alpha);
                    const cd gpj = tf.gamma(Sign::plus, j.omega, lambda_alpha);
                    const cd gmk = tf.gamma(Sign::minus, k.omega, lambda_alpha);
                    const cd gmj = tf.gamma(Sign::minus, j.omega, lambda_alpha);
                    m += (std::conj(gpk) + gpj) * jump_plus;
                    m += (std::conj(gmk) + gmj) * jump_minus;
                    const cd gpk0 = tf.gamma(Sign::plus, k.omega, 0.0);
                    const cd gpj0 = tf.gamma(Sign::plus, j.omega, 0.0);
                    const cd gmk0 = tf.gamma(Sign::minus, k.omega, 0.0);
                    const cd gmj0 = tf.gamma(Sign::minus, j.omega, 0.0);
                    m -= gpk0 * lx + std::conj(gpj0) * rx;
                    m -= gmk0 * ly + std::conj(gmj0) * ry;
                    break;
                }
                case SchemeKind::symmetrized: {
                    // Strict window: pairs separated by >= ε are dropped.
                    if (!(gap < epsilon_)) break;
                    const double rp = std::sqrt(tf.rate(Sign::plus, j.omega, lambda_alpha) *
                                                tf.rate(Sign::plus, k.omega, lambda_alpha));
                    const double rm = std::sqrt(tf.rate(Sign::minus, j.omega, lambda_alpha) *
                                                tf.rate(Sign::minus, k.omega, lambda_alpha));
                    m += 2.0 * rp * jump_plus + 2.0 * rm * jump_minus;
                    const double rp0 = std::sqrt(tf.rate(Sign::plus, j.omega, 0.0) *
                                                 tf.rate(Sign::plus, k.omega, 0.0));
                    const double rm0 = std::sqrt(tf.rate(Sign::minus, j.omega, 0.0) *
                                                 tf.rate(Sign::minus, k.omega, 0.0));
                    m -= rp0 * (lx + rx) + rm0 * (ly + ry);
                    // Secularized Lamb shift: only numerically degenerate pairs.
                    if (degenerate) {
                        const cd ip(0.0, tf.lamb(Sign::plus, k.omega, 0.0));
                        const cd im(0.0, tf.lamb(Sign::minus, k.omega, 0.0));
                        m -= ip * (lx - rx) + im * (ly - ry);
                    }
                    break;
                }
                case SchemeKind::coarse_grained: {
                    if (!(gap < 1.0 / scheme_.delta0)) break;
                    const double mid = 0.5 * (j.omega + k.omega);
                    const double dw = j.omega - k.omega;
                    const double tilt_jump_p = std::exp(-lambda_S * mid);
                    const double tilt_jump_m = std::exp(+lambda_S * mid);
                    const double tl = std::exp(+lambda_S * dw / 2.0);
                    const double tr = std::exp(-lambda_S * dw / 2.0);
                    const double rp = tf.rate(Sign::plus, mid, lambda_alpha);
                    const double rm = tf.rate(Sign::minus, mid, lambda_alpha);
                    m += 2.0 * rp * tilt_jump_p * jump_plus;
                    m += 2.0 * rm * tilt_jump_m * jump_minus;
                    const double rp0 = tf.rate(Sign::plus, mid, 0.0);
                    const double rm0 = tf.rate(Sign::minus, mid, 0.0);
                    m -= rp0 * (tl * lx + tr * rx) + rm0 * (tr * ly + tl * ry);
                    // Lamb shift secularized: cross-frequency imaginary parts
                    // would break the average first law at the rate level.
                    if (scheme_.lamb_shift && degenerate) {
                        const cd ip(0.0, tf.lamb(Sign::plus, mid, 0.0));
                        const cd im(0.0, tf.lamb(Sign::minus, mid, 0.0));
                        m -= ip * (lx - rx) + im * (ly - ry);
                    }
                    break;
                }
            }
        }
    }
    return m;
}

TiltedGenerator GeneratorBuilder::build(double lambda_S,
                                        const std::vector<double>& lambda_B) const {
    if (lambda_B.size() != baths_.size())
        throw InvalidInput("build: one bath counting field per bath required");

    const auto d = system_.dim();
    Mat m = commutator_superop(system_.hamiltonian());
    for (std::size_t a = 0; a < baths_.size(); ++a) {
        // Coarse graining carries its λ_S factors explicitly; the other
        // schemes are tilted by the similarity sandwich below.
        const double ls = scheme_.kind == SchemeKind::coarse_grained ? lambda_S : 0.0;
        m += dissipator(a, ls, lambda_B[a]);
    }

    TiltedGenerator g;
    g.scheme = scheme_;
    g.lambda_S = scheme_.kind == SchemeKind::coarse_grained ? lambda_S : 0.0;
    g.lambda_B = lambda_B;
    g.matrix = std::move(m);
    g.system = system_;
    g.baths = baths_;
    (void)d;

    if (scheme_.kind != SchemeKind::coarse_grained && lambda_S != 0.0)
        g = add_system_counting(g, lambda_S);
    return g;
}

TiltedGenerator GeneratorBuilder::build_bath_tilted(
    const std::vector<double>& lambda_B) const {
    return build(0.0, lambda_B);
}

TiltedGenerator GeneratorBuilder::build_zero() const {
    return build(0.0, std::vector<double>(baths_.size(), 0.0));
}

TiltedGenerator GeneratorBuilder::build_uniform(double chi) const {
    return build(chi, std::vector<double>(baths_.size(), chi));
}

TiltedGenerator add_system_counting(const TiltedGenerator& g, double lambda_S) {
    if (g.lambda_S != 0.0)
        throw InvalidInput("add_system_counting: generator already carries lambda_S");
    if (lambda_S == 0.0) return g;
    const auto d = g.dim();
    // vec index (i + d j) picks up e^{λS (E_i + E_j)/2} on the left and its
    // inverse on the right: vec(K X K) = diag(kron(k, k)) vec(X) for diagonal K.
    Vec scale(d * d), inv(d * d);
    for (Eigen::Index jcol = 0; jcol < d; ++jcol)
        for (Eigen::Index irow = 0; irow < d; ++irow) {
            const double e =
                0.5 * lambda_S * (g.system.energies(irow) + g.system.energies(jcol));
            scale(irow + d * jcol) = std::exp(e);
            inv(irow + d * jcol) = std::exp(-e);
        }
    TiltedGenerator out = g;
    out.lambda_S = lambda_S;
    out.matrix = scale.asDiagonal() * g.matrix * inv.asDiagonal();
    return out;
}

TiltedGenerator reversed_generator(const TiltedGenerator& g) {
    TiltedGenerator out = g;
    out.matrix = g.matrix.conjugate();
    return out;
}

} // namespace qmelab
