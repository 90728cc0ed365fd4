#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>

#include "fibertool/errors.hpp"

namespace fibertool {

/// Arbitrary-precision integer.
using Int = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored canonically: reduced, denominator > 0.
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return den(r) == 1; }

/// n/d with sign normalization; the two-argument Rat constructor rejects
/// negative denominators instead of normalizing them.
inline Rat make_rat(Int n, Int d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(std::move(n), std::move(d));
}

inline Int abs_i(const Int& n) { return boost::multiprecision::abs(n); }
inline Rat abs_r(const Rat& r) { return boost::multiprecision::abs(r); }
inline int sign_of(const Int& n) { return n.sign(); }
inline int sign_of(const Rat& r) { return num(r).sign(); }

inline Int gcd_i(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_i(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int pow_i(const Int& base, unsigned e) { return boost::multiprecision::pow(base, e); }

inline Rat pow_r(const Rat& base, unsigned e) {
    Rat acc(1);
    Rat b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) acc *= b;
        b *= b;
        k >>= 1u;
    }
    return acc;
}

/// Floor division a/b for b != 0 (rounds toward -infinity).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil_rat(const Rat& r) { return ceil_div(num(r), den(r)); }

/// Floor of the integer square root; n must be >= 0.
inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

/// Square test with the root returned through `root` when true.
inline bool is_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = isqrt(n);
    return root * root == n;
}

/// Floor of n^(1/d) for n >= 0, d >= 1 (exact integer Newton iteration).
inline Int floor_root(const Int& n, unsigned d) {
    if (d == 0) throw Error("floor_root: d must be >= 1");
    if (n < 0) throw Error("floor_root: negative radicand");
    if (n == 0) return 0;
    if (d == 1) return n;
    if (d == 2) return isqrt(n);
    unsigned bits = boost::multiprecision::msb(n) + 1;
    Int x = Int(1) << (bits / d + 1);  // strictly above n^(1/d)
    while (true) {
        Int xd1 = pow_i(x, d - 1);
        Int next = ((d - 1) * x + n / xd1) / d;
        if (next >= x) break;
        x = next;
    }
    while (pow_i(x, d) > n) --x;            // defensive; at most a step
    while (pow_i(x + 1, d) <= n) ++x;
    return x;
}

/// Two-sided decimal enclosure of v^(1/d) for a nonnegative rational v.
///
/// `under <= v^(1/d) <= over`, both within 10^-digits of the true value, and
/// `exact` marks a rational d-th root recognized exactly (then under == over).
struct RootEnclosure {
    Rat under;
    Rat over;
    bool exact = false;
};

inline RootEnclosure root_enclosure(const Rat& v, unsigned d, unsigned digits = 7) {
    if (sign_of(v) < 0) throw Error("root_enclosure: negative radicand");
    RootEnclosure out;
    const Int N = num(v), D = den(v);
    const Int scale = pow_i(Int(10), digits);
    // (N/D)^(1/d) = (N * D^(d-1))^(1/d) / D ; scale inside the radical.
    Int radicand = N * pow_i(D, d - 1) * pow_i(scale, d);
    Int r = floor_root(radicand, d);
    Int q = D * scale;
    out.exact = pow_i(r, d) == radicand;
    out.under = Rat(r, q);
    out.over = out.exact ? out.under : Rat(r + 1, q);
    return out;
}

inline Int parse_int(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty integer literal");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) throw ParseError("bare sign is not an integer: '" + text + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw ParseError("bad integer literal: '" + text + "'");
    Int v(s.substr(i));
    return s[0] == '-' ? Int(-v) : v;
}

/// Parses "n" or "n/d" (optionally signed, whitespace-insensitive).
inline Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int n = parse_int(text.substr(0, slash));
    Int d = parse_int(text.substr(slash + 1));
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return make_rat(std::move(n), std::move(d));
}

/// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string rat_to_string(const Rat& r) {
    std::string s = num(r).str();
    if (!is_integer(r)) s += "/" + den(r).str();
    return s;
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace fibertool
