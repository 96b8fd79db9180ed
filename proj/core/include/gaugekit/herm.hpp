#pragma once

#include <complex>
#include <vector>

#include "gaugekit/errors.hpp"

namespace gaugekit {

using Complex = std::complex<double>;
using Vec = std::vector<double>;

class RectMatrix;

/// n x n complex self-adjoint matrix. Construction validates hermiticity
/// (entrywise tolerance 1e-12 relative to the Frobenius norm) and finiteness,
/// then symmetrizes to (A + A*)/2 so downstream code can rely on exact
/// conjugate symmetry of the stored entries.
class HermitianMatrix {
public:
    HermitianMatrix() : dim_(0) {}
    explicit HermitianMatrix(int dim); // zero matrix
    HermitianMatrix(int dim, std::vector<Complex> entries); // validates + symmetrizes

    static HermitianMatrix identity(int dim);
    static HermitianMatrix diagonal(const Vec& d);
    /// Trusted constructor: symmetrizes without the validation pass. For
    /// internal arithmetic whose results are Hermitian by construction.
    static HermitianMatrix from_raw(int dim, std::vector<Complex> entries);

    int dim() const { return dim_; }
    const Complex& at(int i, int j) const { return e_[std::size_t(i) * dim_ + j]; }
    Complex& at(int i, int j) { return e_[std::size_t(i) * dim_ + j]; }
    const std::vector<Complex>& entries() const { return e_; }

    HermitianMatrix operator+(const HermitianMatrix& o) const;
    HermitianMatrix operator-(const HermitianMatrix& o) const;
    HermitianMatrix operator*(double t) const;
    HermitianMatrix operator-() const { return *this * -1.0; }
    /// *this += t * b, allocation-free.
    void add_scaled(double t, const HermitianMatrix& b);

    double frobenius_norm() const;
    double max_abs_entry() const;
    bool is_zero(double tol = 0.0) const;

private:
    int dim_;
    std::vector<Complex> e_; // row-major
    void symmetrize();
};

/// Real trace pairing <X,Y> = Re tr(X Y) on Hermitian matrices.
double trace_inner(const HermitianMatrix& x, const HermitianMatrix& y);

/// Rectangular complex matrix; finite entries required.
class RectMatrix {
public:
    RectMatrix() : rows_(0), cols_(0) {}
    RectMatrix(int rows, int cols); // zeros
    RectMatrix(int rows, int cols, std::vector<Complex> entries);
    static RectMatrix identity(int n);
    static RectMatrix from_hermitian(const HermitianMatrix& a);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Complex& at(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }
    Complex& at(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
    const std::vector<Complex>& entries() const { return e_; }

    RectMatrix adjoint() const;
    RectMatrix operator*(const RectMatrix& o) const;

private:
    int rows_, cols_;
    std::vector<Complex> e_;
};

/// Eigendecomposition A = U diag(eigenvalues) U*, eigenvalues ascending,
/// columns of U orthonormal.
struct EigenDecomposition {
    Vec eigenvalues;
    RectMatrix vectors; // unitary, k-th column pairs with eigenvalues[k]

    double lambda_min() const { return eigenvalues.front(); }
    double lambda_max() const { return eigenvalues.back(); }
    /// max |lambda|, with the sign of the achieving eigenvalue; ties between
    /// |lambda_min| and |lambda_max| resolve to lambda_max.
    std::pair<double, int> dominant() const;
};

/// Full eigendecomposition by cyclic Jacobi on the 2n x 2n real symmetric
/// embedding [[X,-Y],[Y,X]] of A = X + iY. Deterministic: identical inputs
/// give bit-identical results.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// Largest singular value (operator norm B(C^cols, C^rows)).
double op_norm(const RectMatrix& m);
/// max(|lambda_min|, |lambda_max|) for Hermitian input.
double op_norm(const HermitianMatrix& a);

/// H with H X H = I, for X with lambda_min(X) >= floor > 0.
/// Throws NotPositiveDefinite otherwise.
HermitianMatrix inv_sqrt_pd(const HermitianMatrix& x, double floor_val);

/// X A X* for X of shape k x n, A of dimension n (row-compression
/// orientation; pass the adjoint of X to get the X*AX form).
HermitianMatrix congruence(const RectMatrix& x, const HermitianMatrix& a);

/// Block-diagonal direct sum; spectrum is the multiset union.
HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b);

} // namespace gaugekit
