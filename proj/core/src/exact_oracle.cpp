#include "qmelab/exact_oracle.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace qmelab {

RealMat sample_goe(int n, std::uint64_t seed) {
    if (n < 2) throw InvalidInput("sample_goe: need n >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMat x(n, n);
    for (int i = 0; i < n; ++i) {
        x(i, i) = std::sqrt(2.0) * gauss(rng);
        for (int j = i + 1; j < n; ++j) {
            const double v = gauss(rng);
            x(i, j) = v;
            x(j, i) = v;
        }
    }
    return x;
}

RealVec ExactModel::bath_energies() const {
    RealVec b(n_bath);
    for (int k = 0; k < n_bath; ++k)
        b(k) = bath_min + (bath_max - bath_min) * static_cast<double>(k) /
                              static_cast<double>(n_bath - 1);
    return b;
}

RealMat ExactModel::bath_coupling() const {
    return sample_goe(n_bath, seed) / (4.0 * std::sqrt(static_cast<double>(n_bath)));
}

void ExactModel::validate() const {
    system.validate();
    if (n_bath < 2) throw InvalidInput("ExactModel: need at least two bath levels");
    if (!(beta_B > 0.0)) throw InvalidInput("ExactModel: beta_B must be positive");
    if (!(bath_max > bath_min)) throw InvalidInput("ExactModel: empty bath band");
    if (system.dim() * n_bath > dim_cap)
        throw InvalidInput("ExactModel: composite dimension exceeds cap");
}

Mat build_total(const ExactModel& model) {
    model.validate();
    const auto d = model.system.dim();
    const int n = model.n_bath;
    const Mat hs = model.system.hamiltonian();
    const RealVec hb = model.bath_energies();
    const Mat a = coupling_operator(model.system);
    const Mat v = (a + a.adjoint()).eval();
    const RealMat r = model.bath_coupling();

    Mat h = tensor_product(hs, Mat::Identity(n, n));
    h += tensor_product(Mat::Identity(d, d), hb.cast<cd>().asDiagonal());
    h += model.gamma * tensor_product(v, r.cast<cd>());
    return h;
}

ExactPropagator::ExactPropagator(const ExactModel& model) : model_(model) {
    model_.validate();
    const Mat h = build_total(model_);
    const auto d = model_.system.dim();
    const int n = model_.n_bath;

    bath_levels_ = model_.bath_energies();
    RealVec w = (-model_.beta_B * (bath_levels_.array() - bath_levels_.minCoeff())).exp();
    bath_weights_ = w / w.sum();

    counting_diag_.resize(d * n);
    for (Eigen::Index s = 0; s < d; ++s)
        for (int k = 0; k < n; ++k) counting_diag_(s * n + k) = bath_levels_(k);

    if (h.imag().norm() == 0.0) {
        Eigen::SelfAdjointEigenSolver<RealMat> es(h.real());
        if (es.info() != Eigen::Success)
            throw NumericError("ExactPropagator: eigendecomposition failed");
        evecs_ = es.eigenvectors().cast<cd>();
        evals_ = es.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        if (es.info() != Eigen::Success)
            throw NumericError("ExactPropagator: eigendecomposition failed");
        evecs_ = es.eigenvectors();
        evals_ = es.eigenvalues();
    }
}

Mat ExactPropagator::propagator(double t) const {
    const Vec phases = ((cd(0.0, -t) * evals_.cast<cd>().array()).exp()).matrix();
    const Mat scaled = phases.asDiagonal() * evecs_.adjoint();
    return evecs_ * scaled;
}

Mat ExactPropagator::composite_initial(const Mat& rho_s0) const {
    return tensor_product(rho_s0, Mat(bath_weights_.cast<cd>().asDiagonal()));
}

cd ExactPropagator::mgf_with(const Mat& p, const Mat& rho0, double lambda_B) const {
    if (lambda_B == 0.0) {
        const Mat tmp = p * rho0;
        return tmp.cwiseProduct(p.conjugate()).sum();
    }
    const RealVec half = ((0.5 * lambda_B * counting_diag_.array()).exp()).matrix();
    const RealVec inv = ((-0.5 * lambda_B * counting_diag_.array()).exp()).matrix();
    // U_λ = D(half) P D(inv); G = Tr[U_λ ρ0 U_λ†] with ρ0 scaled once.
    const Mat rho_scaled =
        inv.cast<cd>().asDiagonal() * rho0 * inv.cast<cd>().asDiagonal();
    const Mat tmp = p * rho_scaled;
    // G = Σ_i e^{λ b_i} (P ρ_scaled P†)_(ii)
    const Vec diag = (tmp.cwiseProduct(p.conjugate())).rowwise().sum();
    return ((half.array() * half.array()).cast<cd>() * diag.array()).sum();
}

double ExactPropagator::heat_mgf_with(const Mat& p, const Mat& rho0) const {
    const double scale = std::max(model_.system.energy_scale(),
                                  std::abs(model_.bath_max - model_.bath_min));
    const double h = 1e-3 / scale;
    auto g_of = [&](double lam) { return mgf_with(p, rho0, -lam).real(); };
    auto central = [&](double step) { return (g_of(step) - g_of(-step)) / (2.0 * step); };
    const double d1 = central(h), d2 = central(h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

double ExactPropagator::heat_direct_with(const Mat& p, const Mat& rho0) const {
    const double e0 = (counting_diag_.cast<cd>().asDiagonal() * rho0).trace().real();
    // Tr[H_B ρ(t)] = Σ_i E_B(i) (P ρ0 P†)_(ii)
    const Mat t1 = p * rho0;
    const Vec diag = (t1.cwiseProduct(p.conjugate())).rowwise().sum();
    const double et = (counting_diag_.array() * diag.real().array()).sum();
    return e0 - et;
}

cd ExactPropagator::mgf(const Mat& rho_s0, double t, double lambda_B) const {
    return mgf_with(propagator(t), composite_initial(rho_s0), lambda_B);
}

double ExactPropagator::heat_mgf(const Mat& rho_s0, double t) const {
    return heat_mgf_with(propagator(t), composite_initial(rho_s0));
}

double ExactPropagator::heat_direct(const Mat& rho_s0, double t) const {
    return heat_direct_with(propagator(t), composite_initial(rho_s0));
}

std::vector<ExactPropagator::HeatSample> ExactPropagator::heat_series(
    const Mat& rho_s0, const std::vector<double>& times) const {
    const Mat rho0 = composite_initial(rho_s0);
    std::vector<HeatSample> out;
    out.reserve(times.size());
    for (double t : times) {
        const Mat p = propagator(t);
        out.push_back({heat_mgf_with(p, rho0), heat_direct_with(p, rho0)});
    }
    return out;
}

Mat ExactPropagator::reduced_state(const Mat& rho_s0, double t) const {
    const Mat p = propagator(t);
    const Mat rho_t = p * composite_initial(rho_s0) * p.adjoint();
    CompositeSpace space{{model_.system.dim(), model_.n_bath}};
    return partial_trace(rho_t, space, 1);
}

SpectralDensity ExactPropagator::calibrate_density(double kernel_width,
                                                   int grid_points) const {
    const int n = model_.n_bath;
    const RealMat r = model_.bath_coupling();
    const double span = model_.bath_max - model_.bath_min;
    const double spacing = span / static_cast<double>(n - 1);
    const double h = kernel_width > 0.0 ? kernel_width : 4.0 * spacing;
    const double norm = 1.0 / (h * std::sqrt(2.0 * M_PI));

    std::vector<std::pair<double, double>> table(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        const double w =
            span * (static_cast<double>(i) + 0.5) / static_cast<double>(grid_points);
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double gap = bath_levels_(k) - bath_levels_(j);
                if (gap <= 0.0) continue;
                const double u = (w - gap) / h;
                if (std::abs(u) > 8.0) continue;
                s += bath_weights_(j) * r(j, k) * r(j, k) * norm * std::exp(-0.5 * u * u);
            }
        }
        const double nb = 1.0 / std::expm1(model_.beta_B * w);
        table[static_cast<std::size_t>(i)] = {w, s / (nb + 1.0)};
    }
    return SpectralDensity::tabulated_from(std::move(table));
}

} // namespace qmelab
