#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qserre/laplace.hpp"
#include "qserre/report.hpp"
#include "qserre/sparse_poly.hpp"

namespace qserre {

// Coefficients in Q[q^{+-1}, x^{+-1}, sigma]; variable order (q, x, sigma).
using WeylCoeff = SparsePoly<3>;

// sum_m c_m(q, x, sigma) d^m with d = d/dt acting on q = e^t: d q^a = q^a (d + a); x and sigma are central.
class WeylOp {
public:
    using Terms = std::map<int, WeylCoeff>;

    WeylOp() = default;
    WeylOp(const WeylCoeff& c) { add(0, c); }  // NOLINT(google-explicit-constructor)
    WeylOp(const Rational& c) : WeylOp(WeylCoeff(c)) {}  // NOLINT(google-explicit-constructor)
    WeylOp(long c) : WeylOp(WeylCoeff(Rational(c))) {}  // NOLINT(google-explicit-constructor)
    WeylOp(int c) : WeylOp(WeylCoeff(Rational(c))) {}   // NOLINT(google-explicit-constructor)

    static WeylOp d(int power = 1) {
        WeylOp r;
        r.add(power, WeylCoeff(1));
        return r;
    }
    static WeylOp q(int power = 1) { return WeylOp(WeylCoeff::variable(0, power)); }
    static WeylOp x(int power = 1) { return WeylOp(WeylCoeff::variable(1, power)); }
    static WeylOp sigma() { return WeylOp(WeylCoeff::variable(2, 1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
    WeylCoeff coefficient(int m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? WeylCoeff() : it->second;
    }

    void add(int m, const WeylCoeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend WeylOp operator+(WeylOp a, const WeylOp& b) {
        for (const auto& [m, c] : b.terms_) a.add(m, c);
        return a;
    }
    friend WeylOp operator-(WeylOp a, const WeylOp& b) {
        for (const auto& [m, c] : b.terms_) a.add(m, -c);
        return a;
    }
    friend WeylOp operator-(const WeylOp& a) { return WeylOp() - a; }
    // (c d^m)(b d^k) = sum_j C(m, j) c (q d/dq)^j(b) d^{m-j+k}
    friend WeylOp operator*(const WeylOp& a, const WeylOp& b) {
        WeylOp r;
        for (const auto& [m, c] : a.terms_)
            for (const auto& [k, bc] : b.terms_) {
                WeylCoeff db = bc;
                for (int j = 0; j <= m; ++j) {
                    if (db.is_zero()) break;
                    r.add(m - j + k, c * db * Rational(binomial(m, j)));
                    db = db.euler_derivative(0);
                }
            }
        return r;
    }
    friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }

    WeylOp pow(unsigned k) const {
        WeylOp r(1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    WeylOp substitute_sigma(const Rational& s) const {
        WeylOp r;
        for (const auto& [m, c] : terms_) r.add(m, c.substitute(2, s));
        return r;
    }

    bool depends_on_sigma() const {
        for (const auto& [m, c] : terms_)
            for (const auto& [e, v] : c.terms())
                if (e[2] != 0) return true;
        return false;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "(" << it->second.to_string({"q", "x", "sigma"}) << ")";
            if (it->first > 0) os << "*d" << (it->first > 1 ? "^" + std::to_string(it->first) : "");
        }
        return os.str();
    }

private:
    Terms terms_;
};

// a d + b
inline WeylOp linear_d(const Rational& a, const WeylOp& b) { return WeylOp::d() * WeylOp(a) + b; }

// prod_k (a d + k) over the listed k
inline WeylOp linear_product(const Rational& a, const std::vector<Rational>& ks) {
    WeylOp r(1);
    for (const auto& k : ks) r = r * linear_d(a, WeylOp(k));
    return r;
}

inline std::vector<Rational> rational_range(int lo, int hi, int step = 1) {
    std::vector<Rational> v;
    for (int k = lo; step > 0 ? k <= hi : k >= hi; k += step) v.emplace_back(k);
    return v;
}

struct QuinticOps {
    WeylOp D_eu, D_loc, P_eu, P_loc;
    std::map<std::string, std::string> display;  // factored forms
};

inline QuinticOps build_quintic_ops() {
    const WeylOp xd = WeylOp::x() * WeylOp::d();
    QuinticOps o;
    o.D_eu = xd.pow(5) - WeylOp::q() * linear_product(5, rational_range(5, 9));
    o.D_loc = xd.pow(5) - WeylOp::q() * linear_product(5, rational_range(0, 4));
    o.P_eu = WeylOp::x() * xd.pow(4) - WeylOp(5) * WeylOp::q() * linear_product(5, rational_range(9, 6, -1));
    o.P_loc = WeylOp::x() * xd.pow(4) - WeylOp(5) * WeylOp::q() * linear_product(5, rational_range(4, 1, -1));
    o.display["D_eu"] = "(x d)^5 - e^t (5d+5)(5d+6)(5d+7)(5d+8)(5d+9)";
    o.display["D_loc"] = "(x d)^5 - e^t (5d)(5d+1)(5d+2)(5d+3)(5d+4)";
    o.display["P_eu"] = "x (x d)^4 - 5 e^t (5d+9)(5d+8)(5d+7)(5d+6)";
    o.display["P_loc"] = "x (x d)^4 - 5 e^t (5d+4)(5d+3)(5d+2)(5d+1)";
    return o;
}

// Operator annihilating T_0 for the sigma-connection on P^n, symbolic in sigma:
// (x d)^{n+1} - q prod_{j=1}^{n} ((n+1)d + sigma - mu_j + 1/2 + n + 1) ((n+1)d + sigma - mu_0 + 1/2).
inline WeylOp unit_operator(int n) {
    const WeylOp xd = WeylOp::x() * WeylOp::d();
    auto mu = [n](int j) -> Rational { return Rational(j) - frac(n, 2); };
    WeylOp prod(1);
    for (int j = 1; j <= n; ++j) prod = prod * linear_d(n + 1, WeylOp::sigma() + WeylOp(-mu(j) + frac(1, 2) + (n + 1)));
    prod = prod * linear_d(n + 1, WeylOp::sigma() + WeylOp(-mu(0) + frac(1, 2)));
    return xd.pow(static_cast<unsigned>(n + 1)) - WeylOp::q() * prod;
}

inline Report factorization_check(const QuinticOps& o) {
    Report r("factorizations");
    r.require(o.D_eu == WeylOp::d() * o.P_eu, "D_eu != d * P_eu");
    r.require(o.D_loc == o.P_loc * WeylOp::d(), "D_loc != P_loc * d");
    return r;
}

// D_eu q^{-1} d^5 = d^5 q^{-1} D_loc
inline Report intertwiner_check(const QuinticOps& o) {
    Report r("intertwiner");
    const WeylOp lhs = o.D_eu * WeylOp::q(-1) * WeylOp::d(5);
    const WeylOp rhs = WeylOp::d(5) * WeylOp::q(-1) * o.D_loc;
    if (lhs != rhs) {
        WeylOp diff = lhs - rhs;
        const auto& [m, c] = *diff.terms().rbegin();
        r.fail("operators differ at d^" + std::to_string(m) + ": " + c.to_string({"q", "x", "sigma"}));
    }
    r.data["degree"] = lhs.degree();
    r.data["leading"] = lhs.coefficient(lhs.degree()).to_string({"q", "x", "sigma"});
    return r;
}

inline Report sigma_specialization_check(const QuinticOps& o) {
    Report r("sigma_family");
    const WeylOp u = unit_operator(4);
    r.require(u.substitute_sigma(frac(5, 2)) == o.D_eu, "sigma = 5/2 does not give D_eu");
    r.require(u.substitute_sigma(frac(-5, 2)) == o.D_loc, "sigma = -5/2 does not give D_loc");
    return r;
}

// op(sec) = 0 for q-degrees <= W. Coefficients must be sigma-free polynomials in q.
template <class T>
Report annihilate_check(const WeylOp& op, const TwistedSection<T>& sec, int W) {
    Report r("annihilate");
    if (op.depends_on_sigma()) throw std::invalid_argument("substitute sigma before applying an operator");
    auto s = sec.truncated(W);
    auto out = s.empty_like();
    auto pw = s;
    int power = 0;
    for (const auto& [m, c] : op.terms()) {
        while (power < m) {
            pw = pw.dt();
            ++power;
        }
        Poly2 coeff;
        for (const auto& [e, v] : c.terms()) {
            if (e[0] < 0) throw std::invalid_argument("operator has q^-1 coefficients; truncated sections cannot absorb them");
            coeff.add_term({e[0], e[1]}, v);
        }
        out = out + pw.times_poly(coeff);
    }
    int lowest = -1;
    for (const auto& [k, c] : out.terms()) lowest = lowest < 0 ? k.d : std::min(lowest, k.d);
    r.data["W"] = W;
    r.data["lowest_residual_degree"] = lowest;
    if (!out.is_zero())
        r.fail("residual of " + std::to_string(out.terms().size()) + " terms, lowest at w^" + std::to_string(lowest));
    return r;
}

// Closed-form solutions of the quintic equations:
// phi_eu = sum_d e^{t(H+d)} x^{-5H-5d-5} prod_{k=1}^{5d+4}(5H+k) / prod_{k=1}^d (H+k)^5
inline TwistedSection<Rational> quintic_phi_eu(int W) {
    auto alg = projective_space(4);
    const auto H = alg->basis(1);
    TwistedSection<Rational> s(alg, H, W);
    for (int d = 0; d <= W; ++d) {
        CohElement<Rational> c = alg->unit();
        for (int k = 1; k <= 5 * d + 4; ++k) c = alg->mul(c, H * Rational(5) + alg->unit() * Rational(k));
        for (int k = 1; k <= d; ++k) c = alg->mul(c, alg->pow(alg->inverse(H + alg->unit() * Rational(k)), 5));
        s.add_power(d, Rational(5 * d + 5), H * Rational(5), c);
    }
    return s;
}

// phi_loc = e^{5 Pi H} sum_d e^{t(H+d)} x^{-5H-5d} prod_{k=0}^{5d-1}(5H+k) / prod_{k=1}^d (H+k)^5
inline TwistedSection<PiScalar> quintic_phi_loc(int W) {
    auto alg = projective_space(4);
    const auto H = alg->basis(1);
    const auto Hp = convert<PiScalar>(H);
    TwistedSection<PiScalar> s(alg, Hp, W);
    const auto pre = alg->exp(Hp * (PiScalar(5) * pi_symbol()));
    for (int d = 0; d <= W; ++d) {
        CohElement<Rational> c = alg->unit();
        for (int k = 0; k <= 5 * d - 1; ++k) c = alg->mul(c, H * Rational(5) + alg->unit() * Rational(k));
        for (int k = 1; k <= d; ++k) c = alg->mul(c, alg->pow(alg->inverse(H + alg->unit() * Rational(k)), 5));
        s.add_power(d, Rational(5 * d), Hp * PiScalar(5), alg->mul(pre, convert<PiScalar>(c)));
    }
    return s;
}

}  // namespace qserre
