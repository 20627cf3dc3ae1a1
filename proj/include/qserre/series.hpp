#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qserre/coh_algebra.hpp"
#include "qserre/dense_matrix.hpp"
#include "qserre/rational.hpp"

namespace qserre {

// Truncated power series sum_{k<=order} c_k q^k with exact rational coefficients.
class UniSeries {
public:
    explicit UniSeries(int order = 0) : c_(check_order(order) + 1, Rational(0)) {}
    UniSeries(int order, const std::vector<Rational>& coeffs) : UniSeries(order) {
        for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) c_[k] = coeffs[k];
    }

    static UniSeries constant(int order, const Rational& c) {
        UniSeries s(order);
        s.c_[0] = c;
        return s;
    }
    static UniSeries variable(int order) {
        UniSeries s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    Rational& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rational>& coeffs() const { return c_; }

    UniSeries truncated(int order) const {
        UniSeries s(std::min(order, this->order()));
        for (int k = 0; k <= s.order(); ++k) s.c_[k] = c_[k];
        return s;
    }

    friend UniSeries operator+(const UniSeries& a, const UniSeries& b) {
        UniSeries r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend UniSeries operator-(const UniSeries& a, const UniSeries& b) {
        UniSeries r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend UniSeries operator-(UniSeries a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
        UniSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (int j = 0; i + j <= r.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend UniSeries operator*(UniSeries a, const Rational& s) {
        for (auto& v : a.c_) v *= s;
        return a;
    }
    friend UniSeries operator*(const Rational& s, UniSeries a) { return a * s; }
    friend bool operator==(const UniSeries& a, const UniSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniSeries& a, const UniSeries& b) { return !(a == b); }

    // Equality of the common truncation.
    bool agrees_with(const UniSeries& o) const {
        int m = std::min(order(), o.order());
        for (int k = 0; k <= m; ++k)
            if (c_[k] != o.c_[k]) return false;
        return true;
    }

    UniSeries reciprocal() const {
        if (sgn(c_[0]) == 0) throw std::domain_error("reciprocal of a series with vanishing constant term");
        UniSeries r(order());
        Rational inv0 = 1 / c_[0];
        r.c_[0] = inv0;
        for (int k = 1; k <= order(); ++k) {
            Rational s = 0;
            for (int j = 1; j <= k; ++j) s += c_[j] * r.c_[k - j];
            r.c_[k] = -s * inv0;
        }
        return r;
    }

    friend UniSeries operator/(const UniSeries& a, const UniSeries& b) { return a * b.reciprocal(); }

    UniSeries derivative() const {
        UniSeries r(std::max(order() - 1, 0));
        for (int k = 1; k <= order(); ++k) r.c_[k - 1] = c_[k] * k;
        if (order() == 0) r.c_[0] = 0;
        return r;
    }

    UniSeries exp() const {
        if (sgn(c_[0]) != 0) throw std::domain_error("exp needs a series with vanishing constant term");
        UniSeries e(order());
        e.c_[0] = 1;
        // k e_k = sum_{j=1}^k j a_j e_{k-j}
        for (int k = 1; k <= order(); ++k) {
            Rational s = 0;
            for (int j = 1; j <= k; ++j) s += c_[j] * e.c_[k - j] * j;
            e.c_[k] = s / k;
        }
        return e;
    }

    UniSeries log() const {
        if (c_[0] != 1) throw std::domain_error("log needs a series with constant term 1");
        // l' = a'/a
        UniSeries r(order());
        UniSeries q = derivative() * truncated(order() - 1 < 0 ? 0 : order() - 1).reciprocal();
        for (int k = 1; k <= order(); ++k) r.c_[k] = q.c_[k - 1] / k;
        return r;
    }

    // a(b(q)), b without constant term.
    UniSeries compose(const UniSeries& b) const {
        if (sgn(b.c_[0]) != 0) throw std::domain_error("compose needs an inner series without constant term");
        int m = std::min(order(), b.order());
        UniSeries bt = b.truncated(m);
        UniSeries r = constant(m, c_[m]);
        for (int k = m - 1; k >= 0; --k) r = r * bt + constant(m, c_[k]);
        return r;
    }

    // Compositional inverse by Lagrange inversion: [q^k] b = (1/k) [w^{k-1}] (w/a(w))^k.
    UniSeries revert() const {
        if (sgn(c_[0]) != 0) throw std::domain_error("revert needs a series with vanishing constant term");
        if (order() < 1 || sgn(c_[1]) == 0) throw std::domain_error("revert needs a nonzero linear coefficient");
        const int m = order();
        UniSeries a_over_w(m - 1);
        for (int k = 0; k <= m - 1; ++k) a_over_w.c_[k] = c_[k + 1];
        UniSeries phi = a_over_w.reciprocal();
        UniSeries r(m);
        UniSeries pw = constant(m - 1, 1);
        for (int k = 1; k <= m; ++k) {
            pw = pw * phi;
            r.c_[k] = pw.c_[k - 1] / k;
        }
        return r;
    }

    // f(s q)
    UniSeries rescale(const Rational& s) const {
        UniSeries r = *this;
        Rational p = 1;
        for (int k = 0; k <= order(); ++k) {
            r.c_[k] *= p;
            p *= s;
        }
        return r;
    }

    // f/q for f with vanishing constant term; the order drops by one.
    UniSeries divide_by_q() const {
        if (sgn(c_[0]) != 0) throw std::domain_error("divide_by_q needs vanishing constant term");
        if (order() < 1) throw std::domain_error("divide_by_q needs order >= 1");
        UniSeries r(order() - 1);
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = c_[k + 1];
        return r;
    }

    // q f; the order grows by one.
    UniSeries multiply_by_q() const {
        UniSeries r(order() + 1);
        for (int k = 0; k <= order(); ++k) r.c_[k + 1] = c_[k];
        return r;
    }

    bool is_integral() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.get_den() == 1; });
    }

    // Smallest k with a non-integral coefficient, or -1.
    int first_nonintegral() const {
        for (int k = 0; k <= order(); ++k)
            if (c_[k].get_den() != 1) return k;
        return -1;
    }

    std::string to_string(const char* var = "q") const {
        std::string s;
        for (int k = 0; k <= order(); ++k) {
            if (sgn(c_[k]) == 0) continue;
            if (!s.empty()) s += sgn(c_[k]) < 0 ? " - " : " + ";
            else if (sgn(c_[k]) < 0) s += "-";
            Rational a = abs(c_[k]);
            if (k == 0 || a != 1) s += a.get_str() + (k ? "*" : "");
            if (k) s += std::string(var) + (k > 1 ? "^" + std::to_string(k) : "");
        }
        return (s.empty() ? "0" : s) + " + O(" + var + "^" + std::to_string(order() + 1) + ")";
    }

private:
    static std::size_t check_order(int order) {
        if (order < 0) throw std::invalid_argument("series order must be non-negative");
        return static_cast<std::size_t>(order);
    }

    std::vector<Rational> c_;
};

// Laurent polynomial in z with algebra-valued coefficients.
template <class T>
using ZLaurent = std::map<int, CohElement<T>>;

template <class T>
void zl_add_term(ZLaurent<T>& a, int p, const CohElement<T>& c) {
    if (c.is_zero()) return;
    auto it = a.find(p);
    if (it == a.end()) {
        a.emplace(p, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

template <class T>
ZLaurent<T> zl_mul(const Algebra& alg, const ZLaurent<T>& a, const ZLaurent<T>& b) {
    ZLaurent<T> r;
    for (const auto& [pa, ca] : a)
        for (const auto& [pb, cb] : b) zl_add_term(r, pa + pb, alg.mul(ca, cb));
    return r;
}

// Power series in q (truncated at order D) whose coefficients are Laurent polynomials in z with
// cohomology-valued coefficients. An empty slot is zero.
template <class T>
class CohSeries {
public:
    CohSeries() = default;
    CohSeries(AlgebraPtr alg, int order) : alg_(std::move(alg)), slots_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("series order must be non-negative");
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int order() const { return static_cast<int>(slots_.size()) - 1; }
    const ZLaurent<T>& slot(int d) const { return slots_.at(static_cast<std::size_t>(d)); }
    ZLaurent<T>& slot(int d) { return slots_.at(static_cast<std::size_t>(d)); }

    void add(int d, int p, const CohElement<T>& c) {
        if (d < 0 || d > order()) return;
        zl_add_term(slot(d), p, alg_->normalize(c));
    }
    CohElement<T> coeff(int d, int p) const {
        const auto& s = slot(d);
        auto it = s.find(p);
        return it == s.end() ? alg_->template zero<T>() : it->second;
    }

    bool is_zero() const {
        return std::all_of(slots_.begin(), slots_.end(), [](const auto& s) { return s.empty(); });
    }

    CohSeries truncated(int order) const {
        CohSeries r(alg_, std::min(order, this->order()));
        for (int d = 0; d <= r.order(); ++d) r.slot(d) = slot(d);
        return r;
    }

    friend CohSeries operator+(const CohSeries& a, const CohSeries& b) { return combine(a, b, false); }
    friend CohSeries operator-(const CohSeries& a, const CohSeries& b) { return combine(a, b, true); }
    friend CohSeries operator*(const CohSeries& a, const T& s) {
        CohSeries r(a.alg_, a.order());
        for (int d = 0; d <= a.order(); ++d)
            for (const auto& [p, c] : a.slot(d)) r.add(d, p, c * s);
        return r;
    }
    // Cauchy product in q and z.
    friend CohSeries operator*(const CohSeries& a, const CohSeries& b) {
        check_compatible(a, b);
        CohSeries r(a.alg_, std::min(a.order(), b.order()));
        for (int da = 0; da <= r.order(); ++da)
            for (int db = 0; da + db <= r.order(); ++db)
                for (const auto& [p, c] : zl_mul(*a.alg_, a.slot(da), b.slot(db))) r.add(da + db, p, c);
        return r;
    }
    friend bool operator==(const CohSeries& a, const CohSeries& b) {
        if (a.order() != b.order()) return false;
        return (a - b).is_zero();
    }

    // The q^0 series e^{c/z} = sum_m c^m z^{-m} / m!.
    static CohSeries exp_over_z(AlgebraPtr alg, const CohElement<T>& c, int order) {
        CohSeries r(alg, order);
        CohElement<T> term = alg->template unit<T>();
        r.add(0, 0, term);
        for (int m = 1; m <= alg->nilpotency_order(); ++m) {
            term = alg->mul(term, c) * from_rational<T>(frac(1, m));
            if (term.is_zero()) break;
            r.add(0, -m, term);
        }
        return r;
    }

    // Action of z d/dt on e^{t h / z} * (this): the stripped slot d becomes (h + d z) f_d.
    CohSeries z_dt(const CohElement<T>& h) const {
        CohSeries r(alg_, order());
        for (int d = 0; d <= order(); ++d)
            for (const auto& [p, c] : slot(d)) {
                r.add(d, p, alg_->mul(h, c));
                if (d != 0) r.add(d, p + 1, c * from_rational<T>(Rational(d)));
            }
        return r;
    }

    // Sum of z-coefficients of slot d, i.e. the value at z = 1.
    CohElement<T> at_z_one(int d) const {
        CohElement<T> s = alg_->template zero<T>();
        for (const auto& [p, c] : slot(d)) s += c;
        return s;
    }

private:
    static void check_compatible(const CohSeries& a, const CohSeries& b) {
        if (a.alg_->rank() != b.alg_->rank()) throw std::invalid_argument("series over algebras of different rank");
    }
    static CohSeries combine(const CohSeries& a, const CohSeries& b, bool subtract) {
        check_compatible(a, b);
        CohSeries r(a.alg_, std::min(a.order(), b.order()));
        for (int d = 0; d <= r.order(); ++d) {
            r.slot(d) = a.slot(d);
            for (const auto& [p, c] : b.slot(d)) r.add(d, p, subtract ? -c : c);
        }
        return r;
    }

    AlgebraPtr alg_;
    std::vector<ZLaurent<T>> slots_;
};

// Square-matrix-valued series: per q-degree, a Laurent polynomial in z with matrix coefficients.
template <class T>
class SeriesMatrix {
public:
    using Slot = std::map<int, DenseMatrix<T>>;

    SeriesMatrix() = default;
    SeriesMatrix(std::size_t rank, int order) : rank_(rank), slots_(static_cast<std::size_t>(order) + 1) {}

    static SeriesMatrix identity(std::size_t rank, int order) {
        SeriesMatrix m(rank, order);
        m.slots_[0][0] = DenseMatrix<T>::identity(rank);
        return m;
    }

    // Column a of the result is the series cols[a].
    static SeriesMatrix from_columns(const std::vector<CohSeries<T>>& cols) {
        if (cols.empty()) throw std::invalid_argument("no columns");
        const std::size_t r = cols.front().algebra()->rank();
        if (cols.size() != r) throw std::invalid_argument("column count differs from algebra rank");
        int order = cols.front().order();
        for (const auto& c : cols) order = std::min(order, c.order());
        SeriesMatrix m(r, order);
        for (std::size_t a = 0; a < r; ++a)
            for (int d = 0; d <= order; ++d)
                for (const auto& [p, v] : cols[a].slot(d))
                    for (std::size_t b = 0; b < r; ++b) m.add_entry(d, p, b, a, v[b]);
        return m;
    }

    std::size_t rank() const { return rank_; }
    int order() const { return static_cast<int>(slots_.size()) - 1; }
    const Slot& slot(int d) const { return slots_.at(static_cast<std::size_t>(d)); }
    Slot& slot(int d) { return slots_.at(static_cast<std::size_t>(d)); }

    DenseMatrix<T> coeff(int d, int p) const {
        auto it = slot(d).find(p);
        return it == slot(d).end() ? DenseMatrix<T>(rank_, rank_) : it->second;
    }

    void add(int d, int p, const DenseMatrix<T>& m) {
        if (d < 0 || d > order() || m.is_zero()) return;
        auto& s = slot(d);
        auto it = s.find(p);
        if (it == s.end()) {
            s.emplace(p, m);
        } else {
            it->second += m;
            if (it->second.is_zero()) s.erase(it);
        }
    }
    void add_entry(int d, int p, std::size_t i, std::size_t j, const T& v) {
        if (scalar_is_zero(v)) return;
        DenseMatrix<T> m(rank_, rank_);
        m(i, j) = v;
        add(d, p, m);
    }

    bool is_zero() const {
        return std::all_of(slots_.begin(), slots_.end(), [](const Slot& s) { return s.empty(); });
    }

    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) { return combine(a, b, false); }
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) { return combine(a, b, true); }
    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.rank_ != b.rank_) throw std::invalid_argument("rank mismatch in series matrix product");
        SeriesMatrix r(a.rank_, std::min(a.order(), b.order()));
        for (int da = 0; da <= r.order(); ++da)
            for (int db = 0; da + db <= r.order(); ++db)
                for (const auto& [pa, ma] : a.slot(da))
                    for (const auto& [pb, mb] : b.slot(db)) r.add(da + db, pa + pb, ma * mb);
        return r;
    }
    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
        return a.order() == b.order() && (a - b).is_zero();
    }

    SeriesMatrix transpose() const {
        SeriesMatrix r(rank_, order());
        for (int d = 0; d <= order(); ++d)
            for (const auto& [p, m] : slot(d)) r.add(d, p, m.transpose());
        return r;
    }

    // z -> -z
    SeriesMatrix negate_z() const {
        SeriesMatrix r(rank_, order());
        for (int d = 0; d <= order(); ++d)
            for (const auto& [p, m] : slot(d)) r.add(d, p, p % 2 == 0 ? m : -m);
        return r;
    }

    // q -> s q
    SeriesMatrix rescale_q(const Rational& s) const {
        SeriesMatrix r(rank_, order());
        Rational f = 1;
        for (int d = 0; d <= order(); ++d, f *= s)
            for (const auto& [p, m] : slot(d)) {
                DenseMatrix<T> mm = m;
                mm.scale(from_rational<T>(f));
                r.add(d, p, mm);
            }
        return r;
    }

    // Inverse of a series whose q^0 slot is the identity.
    SeriesMatrix inverse() const {
        if (!(slot(0).size() == 1 && slot(0).count(0) && slot(0).at(0) == DenseMatrix<T>::identity(rank_)))
            throw std::domain_error("series matrix inverse needs identity constant term");
        SeriesMatrix x = identity(rank_, order());
        for (int d = 1; d <= order(); ++d)
            for (int a = 1; a <= d; ++a)
                for (const auto& [pa, ma] : slot(a))
                    for (const auto& [pb, mb] : x.slot(d - a)) x.add(d, pa + pb, -(ma * mb));
        return x;
    }

    template <class U, class F>
    SeriesMatrix<U> map(F f) const {
        SeriesMatrix<U> r(rank_, order());
        for (int d = 0; d <= order(); ++d)
            for (const auto& [p, m] : slot(d)) r.add(d, p, m.template map<U>(f));
        return r;
    }

private:
    static SeriesMatrix combine(const SeriesMatrix& a, const SeriesMatrix& b, bool subtract) {
        if (a.rank_ != b.rank_) throw std::invalid_argument("rank mismatch in series matrix sum");
        SeriesMatrix r(a.rank_, std::min(a.order(), b.order()));
        for (int d = 0; d <= r.order(); ++d) {
            for (const auto& [p, m] : a.slot(d)) r.add(d, p, m);
            for (const auto& [p, m] : b.slot(d)) r.add(d, p, subtract ? -m : m);
        }
        return r;
    }

    std::size_t rank_ = 0;
    std::vector<Slot> slots_;
};

}  // namespace qserre
