#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qserre/rational.hpp"

namespace qserre {

inline bool scalar_is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool scalar_is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0, 0.0); }

// Sparse Laurent polynomial in N commuting variables with rational coefficients.
// Zero coefficients are never stored, so structural equality is mathematical equality.
template <std::size_t N>
class SparsePoly {
public:
    using Exponent = std::array<int, N>;
    using TermMap = std::map<Exponent, Rational>;

    SparsePoly() = default;
    SparsePoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!scalar_is_zero(c)) terms_[Exponent{}] = c;
    }
    SparsePoly(long c) : SparsePoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    SparsePoly(int c) : SparsePoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

    static SparsePoly monomial(const Exponent& e, const Rational& c = 1) {
        SparsePoly p;
        if (!scalar_is_zero(c)) p.terms_[e] = c;
        return p;
    }
    static SparsePoly variable(std::size_t i, int power = 1) {
        Exponent e{};
        e.at(i) = power;
        return monomial(e, 1);
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
    }
    Rational constant_term() const { return coefficient(Exponent{}); }

    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponent& e, const Rational& c) {
        if (scalar_is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (scalar_is_zero(it->second)) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    SparsePoly& operator*=(const Rational& s) {
        if (scalar_is_zero(s)) {
            terms_.clear();
        } else {
            for (auto& kv : terms_) kv.second *= s;
        }
        return *this;
    }
    SparsePoly& operator*=(const SparsePoly& o) {
        *this = *this * o;
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator-(SparsePoly a) { return a *= Rational(-1); }
    friend SparsePoly operator*(SparsePoly a, const Rational& s) { return a *= s; }
    friend SparsePoly operator*(const Rational& s, SparsePoly a) { return a *= s; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    SparsePoly pow(unsigned k) const {
        SparsePoly r(1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    // Multiply by the monomial with exponent e.
    SparsePoly shifted(const Exponent& e) const {
        SparsePoly r;
        for (const auto& [ea, c] : terms_) {
            Exponent s;
            for (std::size_t i = 0; i < N; ++i) s[i] = ea[i] + e[i];
            r.terms_.emplace(s, c);
        }
        return r;
    }

    int max_degree(std::size_t i) const {
        if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
        int m = terms_.begin()->first[i];
        for (const auto& kv : terms_) m = std::max(m, kv.first[i]);
        return m;
    }
    int min_degree(std::size_t i) const {
        if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
        int m = terms_.begin()->first[i];
        for (const auto& kv : terms_) m = std::min(m, kv.first[i]);
        return m;
    }

    // d/dv_i
    SparsePoly derivative(std::size_t i) const {
        SparsePoly r;
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent s = e;
            s[i] -= 1;
            r.add_term(s, c * e[i]);
        }
        return r;
    }

    // v_i d/dv_i
    SparsePoly euler_derivative(std::size_t i) const {
        SparsePoly r;
        for (const auto& [e, c] : terms_) r.add_term(e, c * e[i]);
        return r;
    }

    // Substitute v_i = value (the variable slot stays, with exponent 0).
    SparsePoly substitute(std::size_t i, const Rational& value) const {
        SparsePoly r;
        for (const auto& [e, c] : terms_) {
            Exponent s = e;
            s[i] = 0;
            Rational f = 1;
            if (e[i] >= 0) {
                f = rpow(value, static_cast<unsigned>(e[i]));
            } else {
                if (scalar_is_zero(value)) throw std::domain_error("negative power evaluated at zero");
                f = 1 / rpow(value, static_cast<unsigned>(-e[i]));
            }
            r.add_term(s, c * f);
        }
        return r;
    }

    // v_i -> s * v_i
    SparsePoly rescale(std::size_t i, const Rational& s) const {
        SparsePoly r;
        for (const auto& [e, c] : terms_) {
            Rational f = e[i] >= 0 ? rpow(s, static_cast<unsigned>(e[i])) : 1 / rpow(s, static_cast<unsigned>(-e[i]));
            r.add_term(e, c * f);
        }
        return r;
    }

    // Exact division; nullopt if the quotient is not a Laurent polynomial.
    // Laurent inputs are shifted into the polynomial range first so the lex division terminates.
    std::optional<SparsePoly> divide_exact(const SparsePoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        if (is_zero()) return SparsePoly{};
        Exponent ma, md, back;
        for (std::size_t i = 0; i < N; ++i) {
            ma[i] = -min_degree(i);
            md[i] = -d.min_degree(i);
            back[i] = md[i] - ma[i];
        }
        SparsePoly rem = shifted(ma);
        const SparsePoly dd = d.shifted(md);
        const auto [dl_e, dl_c] = *dd.terms_.rbegin();
        SparsePoly quot;
        while (!rem.is_zero()) {
            const auto [rl_e, rl_c] = *rem.terms_.rbegin();
            Exponent q;
            for (std::size_t i = 0; i < N; ++i) {
                q[i] = rl_e[i] - dl_e[i];
                if (q[i] < 0) return std::nullopt;
            }
            Rational qc = rl_c / dl_c;
            quot.add_term(q, qc);
            rem -= monomial(q, qc) * dd;
        }
        return quot.shifted(back);
    }

    bool is_polynomial() const {
        for (const auto& kv : terms_)
            for (int v : kv.first)
                if (v < 0) return false;
        return true;
    }

    std::string to_string(const std::array<const char*, N>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            bool mono = false;
            for (int v : e) mono = mono || v != 0;
            Rational a = abs(c);
            if (first) {
                if (sgn(c) < 0) os << "-";
            } else {
                os << (sgn(c) < 0 ? " - " : " + ");
            }
            first = false;
            if (!mono || a != 1) {
                os << a.get_str();
                if (mono) os << "*";
            }
            bool firstvar = true;
            for (std::size_t i = 0; i < N; ++i) {
                if (e[i] == 0) continue;
                if (!firstvar) os << "*";
                firstvar = false;
                os << names[i];
                if (e[i] != 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    TermMap terms_;
};

template <std::size_t N>
inline bool scalar_is_zero(const SparsePoly<N>& p) {
    return p.is_zero();
}

// Bivariate polynomials in (q, x); variable 0 is q = e^t, variable 1 is x.
using Poly2 = SparsePoly<2>;
// Polynomials in the formal symbol Pi standing for pi*sqrt(-1).
using PiScalar = SparsePoly<1>;

inline Poly2 poly_q(int k = 1) { return Poly2::variable(0, k); }
inline Poly2 poly_x(int k = 1) { return Poly2::variable(1, k); }
inline PiScalar pi_symbol() { return PiScalar::variable(0, 1); }

inline std::string to_string(const Poly2& p) { return p.to_string({"q", "x"}); }
inline std::string to_string(const PiScalar& p) { return p.to_string({"Pi"}); }

}  // namespace qserre
