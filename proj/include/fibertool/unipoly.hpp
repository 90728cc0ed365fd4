#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fibertool/rational.hpp"

namespace fibertool {

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored ascending by exponent with no trailing zeros, so
/// structural equality is semantic equality. The zero polynomial is the empty
/// coefficient vector; its degree is a dedicated sentinel (std::nullopt).
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(const Rat& constant) {
        if (constant != 0) c_.push_back(constant);
    }
    explicit UniPoly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }

    static UniPoly var() { return monomial(Rat(1), 1); }

    static UniPoly monomial(const Rat& coeff, int exponent) {
        UniPoly p;
        if (coeff != 0) {
            p.c_.assign(static_cast<std::size_t>(exponent) + 1, Rat(0));
            p.c_.back() = coeff;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Degree, or std::nullopt for the zero polynomial.
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }

    /// Coefficient of t^i (zero beyond the degree).
    const Rat& coeff(int i) const {
        static const Rat zero(0);
        if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return zero;
        return c_[static_cast<std::size_t>(i)];
    }

    const Rat& leading() const {
        if (c_.empty()) throw ZeroPolynomialError();
        return c_.back();
    }

    const std::vector<Rat>& coeffs() const { return c_; }

    /// Exact evaluation by Horner's rule.
    Rat eval(const Rat& t) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rat> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<int>(i));
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    UniPoly operator-() const {
        std::vector<Rat> c(c_);
        for (auto& v : c) v = -v;
        UniPoly p;
        p.c_ = std::move(c);
        return p;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const Rat& s, const UniPoly& p) {
        if (s == 0) return UniPoly();
        std::vector<Rat> c(p.c_);
        for (auto& v : c) v *= s;
        UniPoly q;
        q.c_ = std::move(c);
        return q;
    }

    friend UniPoly operator*(const UniPoly& p, const Rat& s) { return s * p; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly pow(unsigned e) const {
        UniPoly acc(Rat(1));
        UniPoly base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }

    /// Composition (*this) o inner, by Horner's rule over polynomials.
    UniPoly compose(const UniPoly& inner) const {
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + UniPoly(*it);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

/// Quotient and remainder of exact division over the rationals.
inline std::pair<UniPoly, UniPoly> divmod_uni(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("divmod_uni: division by the zero polynomial");
    UniPoly r = a;
    std::vector<Rat> q;
    const int db = *b.degree();
    while (!r.is_zero() && *r.degree() >= db) {
        const int dr = *r.degree();
        Rat f = r.leading() / b.leading();
        if (static_cast<int>(q.size()) < dr - db + 1) q.resize(static_cast<std::size_t>(dr - db) + 1, Rat(0));
        q[static_cast<std::size_t>(dr - db)] = f;
        r = r - UniPoly::monomial(f, dr - db) * b;
    }
    return {UniPoly(std::move(q)), r};
}

/// Monic greatest common divisor over the rationals (gcd(0,0) = 0).
inline UniPoly gcd_uni(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divmod_uni(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (Rat(1) / a.leading()) * a;
}

/// Squarefree part p / gcd(p, p'), monic up to the leading coefficient of p.
inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero() || p.is_constant()) return p;
    UniPoly g = gcd_uni(p, p.derivative());
    if (g.is_constant()) return p;
    return divmod_uni(p, g).first;
}

/// Integer-cleared form p(t) = (1/b) * (a[d] t^d + ... + a[0]) with
/// gcd(a[0], ..., a[d], b) = 1 and b > 0. Unique; b is the lcm of the
/// coefficient denominators.
struct PrimitiveForm {
    std::vector<Int> a;  ///< ascending integer coefficients, a[d] != 0
    Int b = 1;           ///< positive common denominator
    int d = 0;           ///< degree
};

inline PrimitiveForm primitive_form(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    PrimitiveForm out;
    out.d = *p.degree();
    out.b = 1;
    for (const Rat& c : p.coeffs()) out.b = lcm_i(out.b, den(c));
    out.a.reserve(p.coeffs().size());
    for (const Rat& c : p.coeffs()) {
        Rat scaled = c * Rat(out.b);
        out.a.push_back(num(scaled));
    }
    return out;
}

/// Rebuilds the rational polynomial (1/b) * sum a[i] t^i.
inline UniPoly from_primitive(const PrimitiveForm& f) {
    std::vector<Rat> c;
    c.reserve(f.a.size());
    for (const Int& ai : f.a) c.emplace_back(ai, f.b);
    return UniPoly(std::move(c));
}

}  // namespace fibertool
