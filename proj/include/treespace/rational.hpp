#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "treespace/errors.hpp"

namespace treespace {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;

// Exact rational scalar.  Everything in this library is computed over Q;
// there is no floating point anywhere.
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

inline int signum(const Rational& r) { return r.sign(); }

// sign with sign(0) := 1, the convention used by the sign-selection lemma
// and the antichain certificates.
inline int sign_pm(const Rational& r) { return r < 0 ? -1 : 1; }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational pos_part(const Rational& r) { return r > 0 ? r : Rational(0); }

// Serialized form is always "p/q", q > 0, reduced.
inline std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw parse_error("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw parse_error("bad rational: " + s);
    }
}

// 2^k as an exact rational, k may be negative.
inline Rational pow2(int k) {
    Integer p = Integer(1) << (k >= 0 ? k : -k);
    return k >= 0 ? Rational(p) : Rational(1, p);
}

}  // namespace treespace
