#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qserre/dense_matrix.hpp"
#include "qserre/rational.hpp"
#include "qserre/sparse_poly.hpp"

namespace qserre {

template <class T>
inline T from_rational(const Rational& r) {
    return T(r);
}
template <>
inline std::complex<double> from_rational<std::complex<double>>(const Rational& r) {
    return {r.get_d(), 0.0};
}

inline Rational scalar_inverse(const Rational& r) {
    if (sgn(r) == 0) throw std::domain_error("inverse of zero");
    return 1 / r;
}
inline std::complex<double> scalar_inverse(const std::complex<double>& c) { return 1.0 / c; }
inline PiScalar scalar_inverse(const PiScalar& p) {
    if (!p.is_constant() || p.is_zero()) throw std::domain_error("only nonzero rational constants are invertible in Q[Pi]");
    return PiScalar(1 / p.constant_term());
}

// Coefficient vector in a fixed homogeneous basis. An empty vector is the zero element of any rank.
template <class T>
class CohElement {
public:
    CohElement() = default;
    explicit CohElement(std::size_t rank) : c_(rank, T(0)) {}
    explicit CohElement(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

    std::size_t size() const { return c_.size(); }
    const T& operator[](std::size_t i) const { return c_.at(i); }
    T& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<T>& coeffs() const { return c_; }

    // Value of component i, zero for the rank-free zero element.
    T get(std::size_t i) const { return c_.empty() ? T(0) : c_.at(i); }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!scalar_is_zero(v)) return false;
        return true;
    }

    CohElement& operator+=(const CohElement& o) { return combine(o, 1); }
    CohElement& operator-=(const CohElement& o) { return combine(o, -1); }
    CohElement& operator*=(const T& s) {
        for (auto& v : c_) v = v * s;
        return *this;
    }

    friend CohElement operator+(CohElement a, const CohElement& b) { return a += b; }
    friend CohElement operator-(CohElement a, const CohElement& b) { return a -= b; }
    friend CohElement operator-(CohElement a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend CohElement operator*(CohElement a, const T& s) { return a *= s; }
    friend CohElement operator*(const T& s, CohElement a) { return a *= s; }

    friend bool operator==(const CohElement& a, const CohElement& b) {
        if (a.c_.empty() || b.c_.empty()) return a.is_zero() && b.is_zero();
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CohElement& a, const CohElement& b) { return !(a == b); }

    template <class U, class F>
    CohElement<U> map(F f) const {
        std::vector<U> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(f(v));
        return CohElement<U>(std::move(out));
    }

private:
    CohElement& combine(const CohElement& o, int sign) {
        if (o.c_.empty()) return *this;
        if (c_.empty()) c_.assign(o.c_.size(), T(0));
        if (c_.size() != o.c_.size()) throw std::invalid_argument("rank mismatch in cohomology arithmetic");
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (sign > 0)
                c_[i] += o.c_[i];
            else
                c_[i] -= o.c_[i];
        }
        return *this;
    }

    std::vector<T> c_;
};

template <class U>
inline CohElement<U> convert(const CohElement<Rational>& e) {
    return e.template map<U>([](const Rational& r) { return from_rational<U>(r); });
}

// Finite-dimensional graded commutative algebra with unit T_0 and an integration functional.
class Algebra {
public:
    struct Presentation {
        std::vector<std::string> labels;
        std::vector<int> degrees;  // real degrees, even
        // structure[a][b] lists (gamma, c) with T_a T_b = sum c T_gamma
        std::vector<std::vector<std::vector<std::pair<int, Rational>>>> structure;
        std::vector<Rational> integration;
        int dim = 0;
    };

    explicit Algebra(Presentation p) : p_(std::move(p)) { validate(); }

    std::size_t rank() const { return p_.labels.size(); }
    int dim() const { return p_.dim; }
    int degree(std::size_t i) const { return p_.degrees.at(i); }
    int half_degree(std::size_t i) const { return p_.degrees.at(i) / 2; }
    const std::string& label(std::size_t i) const { return p_.labels.at(i); }
    const Presentation& presentation() const { return p_; }
    const std::vector<std::pair<int, Rational>>& product(std::size_t a, std::size_t b) const {
        return p_.structure.at(a).at(b);
    }

    // Products of more than nilpotency_order() positive-degree elements vanish.
    int nilpotency_order() const { return p_.dim + 1; }

    template <class T = Rational>
    CohElement<T> basis(std::size_t i) const {
        CohElement<T> e(rank());
        e[i] = T(1);
        return e;
    }
    template <class T = Rational>
    CohElement<T> unit() const {
        return basis<T>(0);
    }
    template <class T = Rational>
    CohElement<T> zero() const {
        return CohElement<T>(rank());
    }

    template <class T>
    CohElement<T> normalize(const CohElement<T>& a) const {
        if (a.size() == 0) return zero<T>();
        check(a);
        return a;
    }

    template <class T>
    CohElement<T> mul(const CohElement<T>& a, const CohElement<T>& b) const {
        CohElement<T> r(rank());
        if (a.size() == 0 || b.size() == 0) return r;
        check(a);
        check(b);
        for (std::size_t i = 0; i < rank(); ++i) {
            if (scalar_is_zero(a[i])) continue;
            for (std::size_t j = 0; j < rank(); ++j) {
                if (scalar_is_zero(b[j])) continue;
                T ab = a[i] * b[j];
                for (const auto& [g, c] : p_.structure[i][j]) r[g] += ab * from_rational<T>(c);
            }
        }
        return r;
    }

    template <class T>
    T integrate(const CohElement<T>& a) const {
        T s(0);
        if (a.size() == 0) return s;
        check(a);
        for (std::size_t i = 0; i < rank(); ++i)
            if (!scalar_is_zero(a[i]) && sgn(p_.integration[i]) != 0) s += a[i] * from_rational<T>(p_.integration[i]);
        return s;
    }

    // mu(T_a) = (|a| - n/2) T_a
    template <class T>
    CohElement<T> mu(const CohElement<T>& a) const {
        CohElement<T> r = normalize(a);
        for (std::size_t i = 0; i < rank(); ++i) r[i] = r[i] * from_rational<T>(mu_eigenvalue(i));
        return r;
    }
    Rational mu_eigenvalue(std::size_t i) const { return Rational(half_degree(i)) - frac(p_.dim, 2); }

    template <class T>
    CohElement<T> pow(const CohElement<T>& a, unsigned k) const {
        CohElement<T> r = unit<T>();
        for (unsigned i = 0; i < k; ++i) r = mul(r, a);
        return r;
    }

    // exp of an element without degree-0 part, as a finite sum.
    template <class T>
    CohElement<T> exp(const CohElement<T>& a) const {
        CohElement<T> x = normalize(a);
        if (!scalar_is_zero(x[0])) throw std::domain_error("exp needs an element with vanishing degree-0 part");
        CohElement<T> r = unit<T>();
        CohElement<T> term = unit<T>();
        for (int m = 1; m <= nilpotency_order(); ++m) {
            term = mul(term, x) * from_rational<T>(frac(1, m));
            if (term.is_zero()) break;
            r += term;
        }
        return r;
    }

    // log(1 + a) of an element without degree-0 part.
    template <class T>
    CohElement<T> log1p(const CohElement<T>& a) const {
        CohElement<T> x = normalize(a);
        if (!scalar_is_zero(x[0])) throw std::domain_error("log1p needs an element with vanishing degree-0 part");
        CohElement<T> r = zero<T>();
        CohElement<T> term = unit<T>();
        for (int m = 1; m <= nilpotency_order(); ++m) {
            term = mul(term, x);
            if (term.is_zero()) break;
            r += term * from_rational<T>(frac(m % 2 == 1 ? 1 : -1, m));
        }
        return r;
    }

    // Inverse of an element with invertible degree-0 part.
    template <class T>
    CohElement<T> inverse(const CohElement<T>& a) const {
        CohElement<T> x = normalize(a);
        T c0 = x[0];
        T inv0 = scalar_inverse(c0);
        CohElement<T> nil = x * inv0;
        nil[0] = T(0);
        // (1 + nil)^{-1} = sum (-nil)^m
        CohElement<T> r = unit<T>();
        CohElement<T> term = unit<T>();
        CohElement<T> neg = -nil;
        for (int m = 1; m <= nilpotency_order(); ++m) {
            term = mul(term, neg);
            if (term.is_zero()) break;
            r += term;
        }
        return r * inv0;
    }

    DenseMatrix<Rational> pairing_matrix() const {
        DenseMatrix<Rational> g(rank(), rank());
        for (std::size_t a = 0; a < rank(); ++a)
            for (std::size_t b = 0; b < rank(); ++b) g(a, b) = integrate(mul(basis(a), basis(b)));
        return g;
    }

    // Matrix of multiplication by a: column j holds a * T_j.
    template <class T = Rational>
    DenseMatrix<T> mult_matrix(const CohElement<T>& a) const {
        DenseMatrix<T> m(rank(), rank());
        for (std::size_t j = 0; j < rank(); ++j) {
            auto col = mul(a, basis<T>(j));
            for (std::size_t i = 0; i < rank(); ++i) m(i, j) = col[i];
        }
        return m;
    }

    // Involution T_a -> (-1)^{|a|} T_a.
    template <class T>
    CohElement<T> parity(const CohElement<T>& a) const {
        CohElement<T> r = normalize(a);
        for (std::size_t i = 0; i < rank(); ++i)
            if (half_degree(i) % 2 != 0) r[i] = -r[i];
        return r;
    }

    template <class T>
    std::string format(const CohElement<T>& a) const;

private:
    template <class T>
    void check(const CohElement<T>& a) const {
        if (a.size() != rank()) throw std::invalid_argument("rank mismatch: element of rank " + std::to_string(a.size()) +
                                                            " used with algebra of rank " + std::to_string(rank()));
    }

    Rational sc(std::size_t a, std::size_t b, std::size_t g) const {
        for (const auto& [gg, c] : p_.structure[a][b])
            if (static_cast<std::size_t>(gg) == g) return c;
        return 0;
    }

    void validate() {
        const std::size_t r = p_.labels.size();
        auto fail = [](const std::string& m) { throw std::invalid_argument("invalid algebra presentation: " + m); };
        if (r == 0) fail("empty basis");
        if (p_.degrees.size() != r || p_.integration.size() != r || p_.structure.size() != r)
            fail("labels, degrees, struct and integration must have equal length");
        if (p_.dim < 1) fail("complex dimension must be positive");
        for (std::size_t i = 0; i < r; ++i) {
            int d = p_.degrees[i];
            if (d < 0 || d % 2 != 0) fail("degrees must be even and non-negative");
            if (d > 2 * p_.dim) fail("degree exceeds twice the complex dimension");
            if (p_.structure[i].size() != r) fail("struct row has wrong length");
        }
        if (p_.degrees[0] != 0) fail("T_0 must have degree 0");
        // canonical form: merge duplicate targets, drop zeros, check ranges
        for (auto& row : p_.structure)
            for (auto& cell : row) {
                std::vector<Rational> dense(r, 0);
                for (const auto& [g, c] : cell) {
                    if (g < 0 || static_cast<std::size_t>(g) >= r) fail("structure constant index out of range");
                    dense[g] += c;
                }
                cell.clear();
                for (std::size_t g = 0; g < r; ++g)
                    if (sgn(dense[g]) != 0) cell.emplace_back(static_cast<int>(g), dense[g]);
            }
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                for (const auto& [g, c] : p_.structure[a][b])
                    if (p_.degrees[g] != p_.degrees[a] + p_.degrees[b]) fail("grading violated by " + label(a) + "*" + label(b));
                for (std::size_t g = 0; g < r; ++g)
                    if (sc(a, b, g) != sc(b, a, g)) fail("not commutative on " + label(a) + "," + label(b));
            }
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t g = 0; g < r; ++g)
                if (sc(0, b, g) != Rational(b == g ? 1 : 0)) fail("T_0 is not the unit");
        for (std::size_t i = 0; i < r; ++i)
            if (sgn(p_.integration[i]) != 0 && p_.degrees[i] != 2 * p_.dim) fail("integration must vanish outside top degree");
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c) {
                    auto lhs = mul(mul(basis(a), basis(b)), basis(c));
                    auto rhs = mul(basis(a), mul(basis(b), basis(c)));
                    if (lhs != rhs) fail("not associative on " + label(a) + "," + label(b) + "," + label(c));
                }
        if (sgn(determinant(pairing_matrix())) == 0) fail("Poincare pairing is degenerate");
    }

    Presentation p_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline std::string scalar_string(const Rational& r) { return r.get_str(); }
inline std::string scalar_string(const PiScalar& p) { return "(" + to_string(p) + ")"; }
inline std::string scalar_string(const std::complex<double>& c) {
    std::ostringstream os;
    os.precision(12);
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return os.str();
}

template <class T>
std::string Algebra::format(const CohElement<T>& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (scalar_is_zero(a[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << scalar_string(a[i]) << "*" << label(i);
    }
    return os.str();
}

// H^*(P^n) with basis 1, H, ..., H^n.
inline AlgebraPtr projective_space(int n) {
    if (n < 1) throw std::invalid_argument("projective_space needs n >= 1");
    Algebra::Presentation p;
    p.dim = n;
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    p.structure.assign(r, std::vector<std::vector<std::pair<int, Rational>>>(r));
    for (int a = 0; a <= n; ++a) {
        p.labels.push_back(a == 0 ? "1" : (a == 1 ? "H" : "H^" + std::to_string(a)));
        p.degrees.push_back(2 * a);
        p.integration.emplace_back(a == n ? 1 : 0);
        for (int b = 0; b <= n; ++b)
            if (a + b <= n) p.structure[a][b].emplace_back(a + b, Rational(1));
    }
    return std::make_shared<const Algebra>(std::move(p));
}

inline nlohmann::json algebra_to_json(const Algebra& alg) {
    const auto& p = alg.presentation();
    nlohmann::json j;
    j["labels"] = p.labels;
    j["degrees"] = p.degrees;
    j["dim"] = p.dim;
    nlohmann::json st = nlohmann::json::array();
    for (const auto& row : p.structure) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& cell : row) {
            nlohmann::json jc = nlohmann::json::array();
            for (const auto& [g, c] : cell) jc.push_back({g, c.get_str()});
            jr.push_back(jc);
        }
        st.push_back(jr);
    }
    j["struct"] = st;
    nlohmann::json integ = nlohmann::json::array();
    for (const auto& c : p.integration) integ.push_back(c.get_str());
    j["integration"] = integ;
    return j;
}

inline Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw std::invalid_argument("rationals must be \"p/q\" strings or integers");
}

inline AlgebraPtr algebra_from_json(const nlohmann::json& j) {
    Algebra::Presentation p;
    try {
        p.labels = j.at("labels").get<std::vector<std::string>>();
        p.degrees = j.at("degrees").get<std::vector<int>>();
        p.dim = j.at("dim").get<int>();
        for (const auto& v : j.at("integration")) p.integration.push_back(json_rational(v));
        for (const auto& row : j.at("struct")) {
            std::vector<std::vector<std::pair<int, Rational>>> r;
            for (const auto& cell : row) {
                std::vector<std::pair<int, Rational>> c;
                for (const auto& entry : cell) c.emplace_back(entry.at(0).get<int>(), json_rational(entry.at(1)));
                r.push_back(std::move(c));
            }
            p.structure.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed algebra JSON: ") + e.what());
    }
    return std::make_shared<const Algebra>(std::move(p));
}

struct ChernData {
    AlgebraPtr alg;
    CohElement<Rational> c_total;
    CohElement<Rational> todd;

    // ch(O(k)) = e^{kH}
    CohElement<Rational> ch_line(int k) const { return alg->exp(alg->basis(1) * Rational(k)); }
    CohElement<Rational> c1() const {
        CohElement<Rational> r = alg->zero();
        r[1] = c_total[1];
        return r;
    }
};

// td(y) = y / (1 - e^{-y}) evaluated on a nilpotent class y.
inline CohElement<Rational> todd_of_line(const Algebra& alg, const CohElement<Rational>& y) {
    // (1 - e^{-y}) / y = sum_m (-1)^m y^m / (m+1)!
    CohElement<Rational> s = alg.unit();
    CohElement<Rational> pw = alg.unit();
    for (int m = 1; m <= alg.nilpotency_order(); ++m) {
        pw = alg.mul(pw, y);
        s += pw * frac(m % 2 == 0 ? 1 : -1, factorial(static_cast<unsigned long>(m + 1)));
    }
    return alg.inverse(s);
}

inline ChernData chern_data(int n) {
    auto alg = projective_space(n);
    ChernData cd{alg, {}, {}};
    CohElement<Rational> h = alg->basis(1);
    cd.c_total = alg->pow(alg->unit() + h, static_cast<unsigned>(n + 1));
    cd.todd = alg->pow(todd_of_line(*alg, h), static_cast<unsigned>(n + 1));
    return cd;
}

}  // namespace qserre
