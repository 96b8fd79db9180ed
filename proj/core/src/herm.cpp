#include "gaugekit/herm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gaugekit {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string entry_tag(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Complex cdot(const std::vector<Complex>& u, const std::vector<Complex>& v) {
    Complex s = 0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
}

double cnorm2(const std::vector<Complex>& u) {
    double s = 0;
    for (const auto& z : u) s += std::norm(z);
    return s;
}

// Cyclic-by-row Jacobi for a dense real symmetric matrix. Rotations are
// accumulated into v (columns are eigenvectors). Sweeps stop once the
// off-diagonal Frobenius norm drops below sweep_tol.
void jacobi_real_symmetric(std::vector<double>& b, int n, std::vector<double>& v,
                           double sweep_tol, int max_sweeps) {
    auto at = [n](std::vector<double>& m, int i, int j) -> double& {
        return m[std::size_t(i) * n + j];
    };
    v.assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) at(v, i, i) = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * at(b, p, q) * at(b, p, q);
        if (std::sqrt(off) <= sweep_tol) return;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double bpq = at(b, p, q);
                if (bpq == 0.0) continue;
                double app = at(b, p, p), aqq = at(b, q, q);
                // Entries drowned out by the diagonal cannot move it; zero
                // them to avoid harmonic tail-chasing.
                if (std::abs(bpq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    at(b, p, q) = at(b, q, p) = 0.0;
                    continue;
                }
                double theta = (aqq - app) / (2.0 * bpq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                at(b, p, p) = app - t * bpq;
                at(b, q, q) = aqq + t * bpq;
                at(b, p, q) = at(b, q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    double brp = at(b, r, p), brq = at(b, r, q);
                    at(b, r, p) = at(b, p, r) = c * brp - s * brq;
                    at(b, r, q) = at(b, q, r) = s * brp + c * brq;
                }
                for (int r = 0; r < n; ++r) {
                    double vrp = at(v, r, p), vrq = at(v, r, q);
                    at(v, r, p) = c * vrp - s * vrq;
                    at(v, r, q) = s * vrp + c * vrq;
                }
            }
        }
    }
}

} // namespace

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim), e_(std::size_t(dim) * dim, Complex(0)) {
    if (dim <= 0) throw ValidationError("HermitianMatrix: dimension must be positive");
}

HermitianMatrix::HermitianMatrix(int dim, std::vector<Complex> entries) : dim_(dim), e_(std::move(entries)) {
    if (dim <= 0) throw ValidationError("HermitianMatrix: dimension must be positive");
    if (e_.size() != std::size_t(dim) * dim)
        throw ValidationError("HermitianMatrix: entry count does not match dim*dim");
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (!finite(at(i, j)))
                throw ValidationError("HermitianMatrix: non-finite entry at " + entry_tag(i, j));
    double tol = 1e-12 * std::max(1.0, frobenius_norm());
    for (int i = 0; i < dim_; ++i) {
        if (std::abs(at(i, i).imag()) > tol)
            throw ValidationError("HermitianMatrix: symmetry violation, diagonal entry " +
                                  entry_tag(i, i) + " has imaginary part " +
                                  std::to_string(at(i, i).imag()));
        for (int j = i + 1; j < dim_; ++j) {
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol)
                throw ValidationError("HermitianMatrix: symmetry violation at " + entry_tag(i, j) +
                                      " vs " + entry_tag(j, i));
        }
    }
    symmetrize();
}

HermitianMatrix HermitianMatrix::identity(int dim) {
    HermitianMatrix a(dim);
    for (int i = 0; i < dim; ++i) a.at(i, i) = 1.0;
    return a;
}

HermitianMatrix HermitianMatrix::diagonal(const Vec& d) {
    HermitianMatrix a(int(d.size()));
    for (int i = 0; i < a.dim(); ++i) a.at(i, i) = d[std::size_t(i)];
    return a;
}

HermitianMatrix HermitianMatrix::from_raw(int dim, std::vector<Complex> entries) {
    HermitianMatrix a(dim);
    a.e_ = std::move(entries);
    a.symmetrize();
    return a;
}

void HermitianMatrix::symmetrize() {
    for (int i = 0; i < dim_; ++i) {
        at(i, i) = Complex(at(i, i).real(), 0.0);
        for (int j = i + 1; j < dim_; ++j) {
            Complex m = 0.5 * (at(i, j) + std::conj(at(j, i)));
            at(i, j) = m;
            at(j, i) = std::conj(m);
        }
    }
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
    if (dim_ != o.dim_) throw ValidationError("HermitianMatrix: dimension mismatch in +");
    HermitianMatrix r(dim_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
    if (dim_ != o.dim_) throw ValidationError("HermitianMatrix: dimension mismatch in -");
    HermitianMatrix r(dim_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

HermitianMatrix HermitianMatrix::operator*(double t) const {
    HermitianMatrix r(dim_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * t;
    return r;
}

void HermitianMatrix::add_scaled(double t, const HermitianMatrix& b) {
    if (dim_ != b.dim_) throw ValidationError("HermitianMatrix: dimension mismatch in add_scaled");
    if (t == 0.0) return;
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += t * b.e_[k];
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto& z : e_) s += std::norm(z);
    return std::sqrt(s);
}

double HermitianMatrix::max_abs_entry() const {
    double s = 0;
    for (const auto& z : e_) s = std::max(s, std::abs(z));
    return s;
}

bool HermitianMatrix::is_zero(double tol) const { return max_abs_entry() <= tol; }

double trace_inner(const HermitianMatrix& x, const HermitianMatrix& y) {
    if (x.dim() != y.dim()) throw ValidationError("trace_inner: dimension mismatch");
    // Re tr(XY) with X,Y Hermitian equals sum_ij Re(conj(x_ij) y_ij).
    double s = 0;
    for (std::size_t k = 0; k < x.entries().size(); ++k)
        s += (std::conj(x.entries()[k]) * y.entries()[k]).real();
    return s;
}

RectMatrix::RectMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols, Complex(0)) {
    if (rows <= 0 || cols <= 0) throw ValidationError("RectMatrix: dimensions must be positive");
}

RectMatrix::RectMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows <= 0 || cols <= 0) throw ValidationError("RectMatrix: dimensions must be positive");
    if (e_.size() != std::size_t(rows) * cols)
        throw ValidationError("RectMatrix: entry count does not match rows*cols");
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!finite(at(i, j)))
                throw ValidationError("RectMatrix: non-finite entry at " + entry_tag(i, j));
}

RectMatrix RectMatrix::identity(int n) {
    RectMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

RectMatrix RectMatrix::from_hermitian(const HermitianMatrix& a) {
    return RectMatrix(a.dim(), a.dim(), a.entries());
}

RectMatrix RectMatrix::adjoint() const {
    RectMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
}

RectMatrix RectMatrix::operator*(const RectMatrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("RectMatrix: shape mismatch in product");
    RectMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Complex aik = at(i, k);
            if (aik == Complex(0)) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += aik * o.at(k, j);
        }
    return m;
}

std::pair<double, int> EigenDecomposition::dominant() const {
    double lo = eigenvalues.front(), hi = eigenvalues.back();
    if (std::abs(hi) >= std::abs(lo)) return {hi, int(eigenvalues.size()) - 1};
    return {lo, 0};
}

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
    const int n = a.dim();
    const int N = 2 * n;
    // Real symmetric embedding [[X,-Y],[Y,X]] of A = X + iY. Each eigenvalue
    // of A shows up twice; (x;y) is an embedded eigenvector iff x+iy is one
    // of A.
    std::vector<double> b(std::size_t(N) * N, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = a.at(i, j).real(), im = a.at(i, j).imag();
            b[std::size_t(i) * N + j] = re;
            b[std::size_t(i + n) * N + (j + n)] = re;
            b[std::size_t(i) * N + (j + n)] = -im;
            b[std::size_t(i + n) * N + j] = im;
        }
    std::vector<double> v;
    jacobi_real_symmetric(b, N, v, 1e-13 * a.frobenius_norm() * std::sqrt(2.0), 60);

    // Complexify the 2n real eigenvectors and pick n complex-orthonormal
    // representatives greedily by largest residual. The candidates are images
    // of a real-orthonormal set under an isometry, so at every round some
    // residual is at least 1/sqrt(n); the greedy pick never degenerates.
    const std::size_t nn = std::size_t(n), NN = std::size_t(N);
    std::vector<std::vector<Complex>> cand(NN);
    for (int k = 0; k < N; ++k) {
        cand[std::size_t(k)].resize(nn);
        for (int i = 0; i < n; ++i)
            cand[std::size_t(k)][std::size_t(i)] =
                Complex(v[std::size_t(i) * N + k], v[std::size_t(i + n) * N + k]);
    }
    std::vector<bool> used(std::size_t(N), false);
    std::vector<std::vector<Complex>> cols;
    cols.reserve(std::size_t(n));
    for (int round = 0; round < n; ++round) {
        int best = -1;
        double best_norm = -1.0;
        for (int k = 0; k < N; ++k) {
            if (used[std::size_t(k)]) continue;
            double nr = cnorm2(cand[std::size_t(k)]);
            if (nr > best_norm) {
                best_norm = nr;
                best = k;
            }
        }
        used[std::size_t(best)] = true;
        auto u = cand[std::size_t(best)];
        double inv = 1.0 / std::sqrt(cnorm2(u));
        for (auto& z : u) z *= inv;
        // Deflate the remaining candidates.
        for (int k = 0; k < N; ++k) {
            if (used[std::size_t(k)]) continue;
            Complex c = cdot(u, cand[std::size_t(k)]);
            for (int i = 0; i < n; ++i) cand[std::size_t(k)][std::size_t(i)] -= c * u[std::size_t(i)];
        }
        cols.push_back(std::move(u));
    }

    // Rayleigh quotients give the eigenvalues of the extracted columns; sort
    // ascending with the acceptance order as a deterministic tie-break.
    std::vector<std::pair<double, int>> order(nn);
    for (int k = 0; k < n; ++k) {
        Complex q = 0;
        for (int i = 0; i < n; ++i) {
            Complex avi = 0;
            for (int j = 0; j < n; ++j) avi += a.at(i, j) * cols[std::size_t(k)][std::size_t(j)];
            q += std::conj(cols[std::size_t(k)][std::size_t(i)]) * avi;
        }
        order[std::size_t(k)] = {q.real(), k};
    }
    std::sort(order.begin(), order.end());

    EigenDecomposition d;
    d.eigenvalues.resize(std::size_t(n));
    d.vectors = RectMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        d.eigenvalues[std::size_t(k)] = order[std::size_t(k)].first;
        const auto& u = cols[std::size_t(order[std::size_t(k)].second)];
        for (int i = 0; i < n; ++i) d.vectors.at(i, k) = u[std::size_t(i)];
    }
    return d;
}

double op_norm(const HermitianMatrix& a) {
    auto d = eig_hermitian(a);
    return std::max(std::abs(d.lambda_min()), std::abs(d.lambda_max()));
}

double op_norm(const RectMatrix& m) {
    // Largest singular value through the smaller Gram matrix.
    const RectMatrix* x = &m;
    RectMatrix t(1, 1);
    if (m.rows() < m.cols()) {
        t = m.adjoint();
        x = &t;
    }
    RectMatrix g = x->adjoint() * (*x);
    HermitianMatrix h = HermitianMatrix::from_raw(g.rows(), g.entries());
    auto d = eig_hermitian(h);
    return std::sqrt(std::max(d.lambda_max(), 0.0));
}

HermitianMatrix inv_sqrt_pd(const HermitianMatrix& x, double floor_val) {
    if (!(floor_val > 0.0)) throw ValidationError("inv_sqrt_pd: floor must be positive");
    auto d = eig_hermitian(x);
    if (d.lambda_min() < floor_val)
        throw NotPositiveDefinite("inv_sqrt_pd: lambda_min " + std::to_string(d.lambda_min()) +
                                      " below floor " + std::to_string(floor_val),
                                  d.lambda_min());
    const int n = x.dim();
    RectMatrix scaled(n, n);
    for (int j = 0; j < n; ++j) {
        double f = 1.0 / std::sqrt(d.eigenvalues[std::size_t(j)]);
        for (int i = 0; i < n; ++i) scaled.at(i, j) = d.vectors.at(i, j) * f;
    }
    RectMatrix h = scaled * d.vectors.adjoint();
    return HermitianMatrix::from_raw(n, h.entries());
}

HermitianMatrix congruence(const RectMatrix& x, const HermitianMatrix& a) {
    if (x.cols() != a.dim()) throw ValidationError("congruence: X has " + std::to_string(x.cols()) +
                                                   " columns but A has dimension " +
                                                   std::to_string(a.dim()));
    RectMatrix r = (x * RectMatrix::from_hermitian(a)) * x.adjoint();
    return HermitianMatrix::from_raw(x.rows(), r.entries());
}

HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b) {
    int n = a.dim(), m = b.dim();
    HermitianMatrix r(n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.at(n + i, n + j) = b.at(i, j);
    return r;
}

} // namespace gaugekit
