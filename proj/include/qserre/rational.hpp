#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qserre {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "p/q" and "-p/q"; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// a/b in canonical form.
inline Rational frac(const Integer& a, const Integer& b) {
    if (b == 0) throw std::domain_error("zero denominator");
    Rational r(a, b);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer factorial(unsigned long k) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

inline Rational rpow(const Rational& base, unsigned k) {
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r *= base;
    return r;
}

}  // namespace qserre
