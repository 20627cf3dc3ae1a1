#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qserre/sparse_poly.hpp"

namespace qserre {

// Small dense row-major matrix over any ring T with +, -, * and construction from int.
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!scalar_is_zero(v)) return false;
        return true;
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    template <class S>
    DenseMatrix& scale(const S& s) {
        for (auto& v : a_) v = v * s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator-(DenseMatrix a) {
        for (auto& v : a.a_) v = -v;
        return a;
    }
    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        DenseMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (scalar_is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

    template <class U, class F>
    DenseMatrix<U> map(F f) const {
        DenseMatrix<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    void check_same(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

// Determinant over a field by Gaussian elimination.
inline Rational determinant(DenseMatrix<Rational> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (sgn(m(r, c)) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

inline DenseMatrix<Rational> inverse(DenseMatrix<Rational> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    DenseMatrix<Rational> inv = DenseMatrix<Rational>::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(p, j), m(c, j));
            std::swap(inv(p, j), inv(c, j));
        }
        Rational piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(m(r, c)) == 0) continue;
            Rational f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace qserre
