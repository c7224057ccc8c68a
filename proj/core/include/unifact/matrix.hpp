#ifndef UNIFACT_MATRIX_HPP
#define UNIFACT_MATRIX_HPP

#include <vector>

#include <Eigen/Dense>

#include "unifact/errors.hpp"
#include "unifact/exact.hpp"
#include "unifact/poly.hpp"

namespace unifact {

// Dense n x n matrix over an arbitrary commutative scalar ring (Poly for
// symbolic work, Cplx for numerics, ExactComplex for exact constants).
template <class T>
class SquareMatrix {
public:
    SquareMatrix() : n_(0) {}
    explicit SquareMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, T{}) {}

    static SquareMatrix identity(int n) {
        SquareMatrix m(n);
        for (int i = 0; i < n; ++i)
            m(i + 1, i + 1) = T{1};
        return m;
    }

    int n() const { return n_; }

    // 1-based indexing, matching the z_{row,col} conventions.
    T& operator()(int row, int col) { return data_[idx(row, col)]; }
    const T& operator()(int row, int col) const { return data_[idx(row, col)]; }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        if (a.n_ != b.n_)
            throw DomainError("matrix size mismatch in product");
        SquareMatrix out(a.n_);
        for (int i = 1; i <= a.n_; ++i)
            for (int k = 1; k <= a.n_; ++k) {
                const T& aik = a(i, k);
                for (int j = 1; j <= a.n_; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

    std::vector<T> last_row() const {
        std::vector<T> r;
        r.reserve(n_);
        for (int j = 1; j <= n_; ++j)
            r.push_back((*this)(n_, j));
        return r;
    }

private:
    std::size_t idx(int row, int col) const {
        if (row < 1 || row > n_ || col < 1 || col > n_)
            throw DomainError("matrix index out of range");
        return static_cast<std::size_t>(row - 1) * n_ + (col - 1);
    }

    int n_;
    std::vector<T> data_;
};

using SymMatrix = SquareMatrix<Poly>;

// Numeric matrix in SL_n(C); carries its size and a det-close-to-1 check.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : m_(Eigen::MatrixXcd::Zero(n, n)) {}
    explicit ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw DomainError("ComplexMatrix must be square");
    }

    static ComplexMatrix identity(int n) { return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n)); }

    int n() const { return static_cast<int>(m_.rows()); }
    Cplx& operator()(int row, int col) { return m_(row - 1, col - 1); }
    const Cplx& operator()(int row, int col) const { return m_(row - 1, col - 1); }

    const Eigen::MatrixXcd& eigen() const { return m_; }
    Eigen::MatrixXcd& eigen() { return m_; }

    Cplx det() const { return m_.determinant(); }
    bool is_special(double tol) const { return std::abs(det() - Cplx(1.0)) <= tol; }

    ComplexMatrix inverse() const { return ComplexMatrix(Eigen::MatrixXcd(m_.inverse())); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        return ComplexMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
    }

    std::vector<Cplx> last_row() const {
        std::vector<Cplx> r(n());
        for (int j = 0; j < n(); ++j)
            r[j] = m_(n() - 1, j);
        return r;
    }

    double frobenius_distance(const ComplexMatrix& o) const { return (m_ - o.m_).norm(); }
    double frobenius_norm() const { return m_.norm(); }

private:
    Eigen::MatrixXcd m_;
};

inline SquareMatrix<Cplx> to_square(const ComplexMatrix& m) {
    SquareMatrix<Cplx> out(m.n());
    for (int i = 1; i <= m.n(); ++i)
        for (int j = 1; j <= m.n(); ++j)
            out(i, j) = m(i, j);
    return out;
}

inline ComplexMatrix to_complex_matrix(const SquareMatrix<Cplx>& m) {
    ComplexMatrix out(m.n());
    for (int i = 1; i <= m.n(); ++i)
        for (int j = 1; j <= m.n(); ++j)
            out(i, j) = m(i, j);
    return out;
}

// Exact determinant by cofactor expansion; meant for small n.
template <class T>
T det_exact(const SquareMatrix<T>& m) {
    int n = m.n();
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j)
        cols[j] = j + 1;
    // Expansion along the first row of the submatrix spanned by `cols`.
    struct Rec {
        const SquareMatrix<T>& m;
        T run(int row, std::vector<int>& cols) {
            if (cols.size() == 1)
                return m(row, cols[0]);
            T acc{};
            for (std::size_t j = 0; j < cols.size(); ++j) {
                int c = cols[j];
                std::vector<int> rest;
                rest.reserve(cols.size() - 1);
                for (std::size_t k = 0; k < cols.size(); ++k)
                    if (k != j)
                        rest.push_back(cols[k]);
                T sub = run(row + 1, rest);
                T piece = m(row, c) * sub;
                if (j % 2 == 1)
                    acc -= piece;
                else
                    acc += piece;
            }
            return acc;
        }
    } rec{m};
    return rec.run(1, cols);
}

} // namespace unifact

#endif
