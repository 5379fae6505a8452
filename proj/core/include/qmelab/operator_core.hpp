// operator_core.hpp — Dense complex linear algebra on small Hilbert spaces:
// vectorization, Kronecker/sandwich superoperators, adjoints, exponentials,
// logarithms, partial traces.
//
// Vectorization convention (used everywhere, converted nowhere else):
// column stacking, vec(X)[i + d*j] = X(i,j). Under this convention the
// sandwich map X -> A·X·B has superoperator matrix transpose(B) ⊗ A.

#pragma once

#include <vector>

#include "qmelab/types.hpp"

namespace qmelab {

// ---------------------------------------------------------------- predicates

bool is_hermitian(const Mat& x, double tol = 1e-12);
bool is_anti_hermitian(const Mat& x, double tol = 1e-12);
bool is_unitary(const Mat& x, double tol = 1e-12);

// ------------------------------------------------------------- vectorization

inline Vec vectorize(const Mat& x) {
    return Eigen::Map<const Vec>(x.data(), x.size());
}

Mat devectorize(const Vec& v); // throws InvalidInput if size is not a square

// ------------------------------------------------------- superoperator build

// Kronecker product with `a` as the slow index.
Mat tensor_product(const Mat& a, const Mat& b);

// Matrix of X -> A·X·B under column stacking: transpose(B) ⊗ A.
Mat sandwich_superop(const Mat& a, const Mat& b);

// Matrices of X -> A·X and X -> X·B.
Mat left_mult_superop(const Mat& a);
Mat right_mult_superop(const Mat& b);

// Matrix of X -> -i[H, X].
Mat commutator_superop(const Mat& h);

// Adjoint w.r.t. the Hilbert–Schmidt inner product: Tr[(O[X])†Y] = Tr[X†O†[Y]].
// Under column stacking this is the conjugate transpose of the superoperator matrix.
inline Mat superop_adjoint(const Mat& o) { return o.adjoint(); }

// Trace-preservation defect of a superoperator: max |Tr[O[E_ij]]| over the
// elementary matrix basis, i.e. the norm of vec(I)† · O rows.
double trace_defect(const Mat& superop);

// Hermiticity-preservation defect: max ||O[E]† - O[E†]|| over a basis.
double hermiticity_defect(const Mat& superop);

// ----------------------------------------------------- exponential/logarithm

// exp(scale·x). Hermitian / anti-Hermitian inputs (detected at relative
// tolerance 1e-12) go through an eigendecomposition; everything else through
// scaling-and-squaring with a Padé approximant.
Mat matrix_exp(const Mat& x, cd scale = cd(1.0, 0.0));

// Principal logarithm of a Hermitian positive semidefinite matrix.
// Eigenvalues are clamped at `floor` before the log so that nearly singular
// density matrices stay usable in entropy formulas. Throws InvalidInput for
// non-Hermitian input, NumericError for negative eigenvalues beyond tolerance.
Mat matrix_log_psd(const Mat& x, double floor = 1e-300, double neg_tol = 1e-10);

// --------------------------------------------------------------- composites

// Ordered list of tensor factor dimensions; total dimension is the product.
struct CompositeSpace {
    std::vector<Eigen::Index> dims;
    Eigen::Index total() const;
};

// Trace out factor `factor` of x (which lives on the composite space); the
// result acts on the remaining factors in their original order.
Mat partial_trace(const Mat& x, const CompositeSpace& space, std::size_t factor);

// ------------------------------------------------------------------- helpers

inline double fro_norm(const Mat& x) { return x.norm(); }

// ||A - A†|| relative asymmetry, 0 for exactly Hermitian A.
double hermitian_defect(const Mat& x);

std::vector<double> linspace(double a, double b, std::size_t n);

} // namespace qmelab
