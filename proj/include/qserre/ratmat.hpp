#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qserre/dense_matrix.hpp"
#include "qserre/sparse_poly.hpp"

namespace qserre {

inline Poly2 exact_div(const Poly2& a, const Poly2& b) {
    auto r = a.divide_exact(b);
    if (!r) throw std::logic_error("inexact polynomial division");
    return *r;
}

// Fraction-free row echelon form over Q[q, x].
struct EchelonForm {
    DenseMatrix<Poly2> m;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

inline EchelonForm bareiss_echelon(DenseMatrix<Poly2> m) {
    EchelonForm e;
    const std::size_t rows = m.rows(), cols = m.cols();
    Poly2 prev(1);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols && k < rows; ++c) {
        std::size_t p = k;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != k)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(k, j));
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = exact_div(m(k, c) * m(i, j) - m(i, c) * m(k, j), prev);
            m(i, c) = Poly2();
        }
        prev = m(k, c);
        e.pivot_cols.push_back(c);
        ++k;
    }
    e.m = std::move(m);
    return e;
}

inline std::size_t rank(const DenseMatrix<Poly2>& m) { return bareiss_echelon(m).rank(); }

// Determinant over Q[q, x] by Bareiss elimination.
inline Poly2 determinant(DenseMatrix<Poly2> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return Poly2(1);
    Poly2 prev(1);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k).is_zero()) ++p;
        if (p == n) return Poly2();
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
            m(i, k) = Poly2();
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

inline DenseMatrix<Poly2> adjugate(const DenseMatrix<Poly2>& m) {
    const std::size_t n = m.rows();
    DenseMatrix<Poly2> adj(n, n);
    if (n == 1) {
        adj(0, 0) = Poly2(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            DenseMatrix<Poly2> minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            Poly2 d = determinant(minor);
            adj(i, j) = (i + j) % 2 == 0 ? d : -d;
        }
    return adj;
}

// Basis of the right kernel over Frac(Q[q, x]), one polynomial vector per free column (Cramer's rule on
// the echelon rows).
inline std::vector<std::vector<Poly2>> nullspace(const DenseMatrix<Poly2>& a) {
    auto e = bareiss_echelon(a);
    const std::size_t r = e.rank(), cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Poly2>> basis;
    DenseMatrix<Poly2> ep(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) ep(i, j) = e.m(i, e.pivot_cols[j]);
    const Poly2 det = determinant(ep);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Poly2> v(cols);
        v[f] = det;
        for (std::size_t k = 0; k < r; ++k) {
            DenseMatrix<Poly2> rep = ep;
            for (std::size_t i = 0; i < r; ++i) rep(i, k) = -e.m(i, f);
            v[e.pivot_cols[k]] = determinant(rep);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Matrix of rational functions in (q, x) over one shared denominator. d/dt acts as q d/dq.
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : num_(rows, cols), den_(1) {}
    RatMat(DenseMatrix<Poly2> num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
    }

    static RatMat identity(std::size_t n) { return {DenseMatrix<Poly2>::identity(n), Poly2(1)}; }
    static RatMat unit_vector(std::size_t n, std::size_t i) {
        RatMat v(n, 1);
        v.num_(i, 0) = Poly2(1);
        return v;
    }

    std::size_t rows() const { return num_.rows(); }
    std::size_t cols() const { return num_.cols(); }
    const DenseMatrix<Poly2>& num() const { return num_; }
    const Poly2& den() const { return den_; }
    const Poly2& num(std::size_t i, std::size_t j) const { return num_(i, j); }

    bool is_zero() const { return num_.is_zero(); }

    friend RatMat operator+(const RatMat& a, const RatMat& b) { return add(a, b, false); }
    friend RatMat operator-(const RatMat& a, const RatMat& b) { return add(a, b, true); }
    friend RatMat operator-(const RatMat& a) { return {-a.num_, a.den_}; }
    friend RatMat operator*(const RatMat& a, const RatMat& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatMat operator*(const Poly2& s, RatMat a) {
        a.num_.scale(s);
        return a;
    }
    friend RatMat operator*(const Rational& s, RatMat a) {
        a.num_.scale(Poly2(s));
        return a;
    }

    // Equality as rational functions.
    friend bool operator==(const RatMat& a, const RatMat& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
        if (a.den_ == b.den_) return a.num_ == b.num_;
        DenseMatrix<Poly2> l = a.num_, r = b.num_;
        l.scale(b.den_);
        r.scale(a.den_);
        return l == r;
    }
    friend bool operator!=(const RatMat& a, const RatMat& b) { return !(a == b); }

    RatMat transpose() const { return {num_.transpose(), den_}; }

    RatMat divided_by(const Poly2& p) const { return {num_, den_ * p}; }

    // d/dt = q d/dq (var 0) or d/dx (var 1); the quotient rule over the shared denominator.
    RatMat derivative(std::size_t var) const {
        auto d = [var](const Poly2& p) { return var == 0 ? p.euler_derivative(0) : p.derivative(1); };
        const Poly2 dden = d(den_);
        if (dden.is_zero()) return {num_.map<Poly2>(d), den_};
        DenseMatrix<Poly2> n(rows(), cols());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) n(i, j) = d(num_(i, j)) * den_ - num_(i, j) * dden;
        return RatMat(std::move(n), den_ * den_).reduced_by(den_);
    }
    RatMat dt() const { return derivative(0); }
    RatMat dx() const { return derivative(1); }

    // Cancel the factor f from numerators and denominator as often as it divides all of them.
    RatMat reduced_by(const Poly2& f) const {
        RatMat r = *this;
        // Monomials are units for Laurent division; cancelling them would never terminate.
        if (f.terms().size() <= 1) return r;
        while (true) {
            auto dq = r.den_.divide_exact(f);
            if (!dq) return r;
            DenseMatrix<Poly2> n(rows(), cols());
            for (std::size_t i = 0; i < rows(); ++i)
                for (std::size_t j = 0; j < cols(); ++j) {
                    auto v = r.num_(i, j).divide_exact(f);
                    if (!v) return r;
                    n(i, j) = *v;
                }
            r.num_ = std::move(n);
            r.den_ = *dq;
        }
    }

    // Value at var = value; throws if the denominator vanishes identically there.
    RatMat substitute(std::size_t var, const Rational& value) const {
        Poly2 d = den_.substitute(var, value);
        if (d.is_zero()) throw std::domain_error("denominator vanishes at the substituted value");
        return {num_.map<Poly2>([&](const Poly2& p) { return p.substitute(var, value); }), d};
    }

    // Constant value (after all substitutions) of entry (i, j).
    Rational constant_entry(std::size_t i, std::size_t j) const {
        if (!den_.is_constant() || !num_(i, j).is_constant()) throw std::domain_error("entry is not constant");
        return num_(i, j).constant_term() / den_.constant_term();
    }

    std::string entry_string(std::size_t i, std::size_t j) const {
        if (den_ == Poly2(1)) return to_string(num_(i, j));
        if (den_.terms().size() == 1) {
            const auto& [e, c] = *den_.terms().begin();
            return to_string(num_(i, j) * Poly2::monomial({-e[0], -e[1]}, 1 / c));
        }
        return "(" + to_string(num_(i, j)) + ")/(" + to_string(den_) + ")";
    }

    nlohmann::json to_json() const {
        auto poly = [](const Poly2& p) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& [e, c] : p.terms()) a.push_back({e[0], e[1], c.get_str()});
            return a;
        };
        nlohmann::json j;
        nlohmann::json rowsj = nlohmann::json::array();
        for (std::size_t i = 0; i < rows(); ++i) {
            nlohmann::json r = nlohmann::json::array();
            for (std::size_t k = 0; k < cols(); ++k) r.push_back(poly(num_(i, k)));
            rowsj.push_back(r);
        }
        j["numerators"] = rowsj;
        j["denominator"] = poly(den_);
        j["format"] = "each polynomial is a list of [q_exponent, x_exponent, coefficient]";
        return j;
    }

private:
    static RatMat add(const RatMat& a, const RatMat& b, bool subtract) {
        if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch in RatMat sum");
        DenseMatrix<Poly2> an = a.num_, bn = b.num_;
        Poly2 den;
        if (a.den_ == b.den_) {
            den = a.den_;
        } else if (auto f = a.den_.divide_exact(b.den_)) {
            bn.scale(*f);
            den = a.den_;
        } else if (auto g = b.den_.divide_exact(a.den_)) {
            an.scale(*g);
            den = b.den_;
        } else {
            an.scale(b.den_);
            bn.scale(a.den_);
            den = a.den_ * b.den_;
        }
        return {subtract ? an - bn : an + bn, den};
    }

    DenseMatrix<Poly2> num_;
    Poly2 den_{1};
};

// Rank over Frac(Q[q, x]) of a family of column vectors.
inline std::size_t span_rank(const std::vector<RatMat>& vecs) {
    if (vecs.empty()) return 0;
    DenseMatrix<Poly2> m(vecs.size(), vecs.front().rows());
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < vecs[i].rows(); ++j) m(i, j) = vecs[i].num(j, 0);
    return rank(m);
}

}  // namespace qserre
