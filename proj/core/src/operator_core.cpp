#include "qmelab/operator_core.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qmelab {

bool is_hermitian(const Mat& x, double tol) {
    return (x - x.adjoint()).norm() <= tol * std::max(1.0, x.norm());
}

bool is_anti_hermitian(const Mat& x, double tol) {
    return (x + x.adjoint()).norm() <= tol * std::max(1.0, x.norm());
}

bool is_unitary(const Mat& x, double tol) {
    Mat g = x.adjoint() * x;
    g -= Mat::Identity(x.rows(), x.cols());
    return g.norm() <= tol * std::sqrt(static_cast<double>(x.rows()));
}

double hermitian_defect(const Mat& x) {
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    return (x - x.adjoint()).norm() / n;
}

Mat devectorize(const Vec& v) {
    const auto n = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw InvalidInput("devectorize: length is not a perfect square");
    return Eigen::Map<const Mat>(v.data(), d, d);
}

Mat tensor_product(const Mat& a, const Mat& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Mat sandwich_superop(const Mat& a, const Mat& b) {
    return Eigen::kroneckerProduct(b.transpose(), a).eval();
}

Mat left_mult_superop(const Mat& a) {
    return sandwich_superop(a, Mat::Identity(a.rows(), a.cols()));
}

Mat right_mult_superop(const Mat& b) {
    return sandwich_superop(Mat::Identity(b.rows(), b.cols()), b);
}

Mat commutator_superop(const Mat& h) {
    return cd(0, -1) * (left_mult_superop(h) - right_mult_superop(h));
}

double trace_defect(const Mat& superop) {
    const auto d2 = superop.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
    Vec trace_row = vectorize(Mat::Identity(d, d));
    Vec r = superop.adjoint() * trace_row; // r† = vec(I)† · superop
    return r.lpNorm<Eigen::Infinity>();
}

double hermiticity_defect(const Mat& superop) {
    const auto d2 = superop.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
    double worst = 0.0;
    Mat e = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            e.setZero();
            // Hermitian basis element (E_ij + E_ji)/... plus the skew one
            e(i, j) = 1.0;
            Mat image = devectorize(superop * vectorize(e));
            Mat image_dag = devectorize(superop * vectorize(e.adjoint().eval()));
            worst = std::max(worst, (image.adjoint() - image_dag).norm());
        }
    }
    return worst;
}

Mat matrix_exp(const Mat& x, cd scale) {
    if (!x.allFinite()) throw InvalidInput("matrix_exp: non-finite entries");
    Mat y = scale * x;
    const double n = y.norm();
    if (n == 0.0) return Mat::Identity(x.rows(), x.cols());
    if ((y - y.adjoint()).norm() < 1e-12 * n) {
        Eigen::SelfAdjointEigenSolver<Mat> es(y);
        if (es.info() != Eigen::Success) throw NumericError("matrix_exp: eigensolver failed");
        return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
               es.eigenvectors().adjoint();
    }
    if ((y + y.adjoint()).norm() < 1e-12 * n) {
        // y = i·h with h Hermitian; exp(y) = V diag(e^{i d_k}) V†
        Mat h = cd(0, -1) * y;
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        if (es.info() != Eigen::Success) throw NumericError("matrix_exp: eigensolver failed");
        Vec phases = (cd(0, 1) * es.eigenvalues().cast<cd>().array()).exp();
        return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }
    return y.exp();
}

Mat matrix_log_psd(const Mat& x, double floor, double neg_tol) {
    if (hermitian_defect(x) > 1e-10)
        throw InvalidInput("matrix_log_psd: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((x + x.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw NumericError("matrix_log_psd: eigensolver failed");
    const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
    RealVec logs(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double ev = es.eigenvalues()(k);
        if (ev < -neg_tol * std::max(top, 1.0))
            throw NumericError("matrix_log_psd: negative eigenvalue beyond tolerance");
        logs(k) = std::log(std::max(ev, floor));
    }
    return es.eigenvectors() * logs.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Index CompositeSpace::total() const {
    Eigen::Index t = 1;
    for (auto d : dims) t *= d;
    return t;
}

Mat partial_trace(const Mat& x, const CompositeSpace& space, std::size_t factor) {
    if (factor >= space.dims.size())
        throw InvalidInput("partial_trace: factor index out of range");
    const Eigen::Index total = space.total();
    if (x.rows() != total || x.cols() != total)
        throw InvalidInput("partial_trace: dimension mismatch with composite space");

    const Eigen::Index df = space.dims[factor];
    // Split indices as (outer, factor, inner) with the first factor slowest.
    Eigen::Index inner = 1;
    for (std::size_t g = factor + 1; g < space.dims.size(); ++g) inner *= space.dims[g];
    const Eigen::Index outer = total / (df * inner);
    const Eigen::Index rd = outer * inner;

    Mat out = Mat::Zero(rd, rd);
    for (Eigen::Index oi = 0; oi < outer; ++oi)
        for (Eigen::Index ii = 0; ii < inner; ++ii)
            for (Eigen::Index oj = 0; oj < outer; ++oj)
                for (Eigen::Index ij = 0; ij < inner; ++ij) {
                    cd s = 0.0;
                    for (Eigen::Index k = 0; k < df; ++k)
                        s += x((oi * df + k) * inner + ii, (oj * df + k) * inner + ij);
                    out(oi * inner + ii, oj * inner + ij) = s;
                }
    return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + h * static_cast<double>(i);
    return v;
}

} // namespace qmelab
