#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibertool/bipoly.hpp"
#include "fibertool/rational.hpp"
#include "fibertool/unipoly.hpp"

namespace fibertool {

namespace detail {

/// Tokenizing cursor over a polynomial expression. Whitespace-insensitive.
class PolyCursor {
public:
    explicit PolyCursor(const std::string& text) : s_(text) { skip(); }

    bool done() const { return i_ >= s_.size(); }

    char peek() const { return done() ? '\0' : s_[i_]; }

    char take() {
        char c = peek();
        ++i_;
        skip();
        return c;
    }

    bool accept(char c) {
        if (peek() != c) return false;
        take();
        return true;
    }

    Int natural() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected digits at '" + rest() + "'");
        std::string digits;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            digits.push_back(s_[i_++]);
        skip();
        return Int(digits);
    }

    std::string rest() const { return s_.substr(std::min(i_, s_.size())); }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

/// Parses a sum of monomial products over up to two variables.
/// Pass '\0' for v2 to restrict to a single variable.
inline std::map<std::pair<int, int>, Rat> parse_monomials(const std::string& text,
                                                          char v1, char v2) {
    PolyCursor cur(text);
    std::map<std::pair<int, int>, Rat> acc;
    if (cur.done()) throw ParseError("empty polynomial");
    bool first = true;
    while (!cur.done()) {
        int sgn = 1;
        if (cur.accept('-'))
            sgn = -1;
        else if (cur.accept('+'))
            sgn = 1;
        else if (!first)
            throw ParseError("expected '+' or '-' at '" + cur.rest() + "'");
        first = false;

        Rat coeff(sgn);
        int e1 = 0, e2 = 0;
        bool have_factor = false;
        while (true) {
            char c = cur.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Int n = cur.natural();
                if (cur.accept('/')) {
                    Int d = cur.natural();
                    if (d == 0) throw ParseError("zero denominator");
                    coeff *= Rat(n, d);
                } else {
                    coeff *= Rat(n);
                }
                have_factor = true;
            } else if (c == v1 || (v2 != '\0' && c == v2)) {
                cur.take();
                int e = 1;
                if (cur.accept('^')) {
                    Int n = cur.natural();
                    if (n > 64) throw ParseError("exponent too large");
                    e = n.convert_to<int>();
                }
                (c == v1 ? e1 : e2) += e;
                have_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                throw ParseError(std::string("unexpected variable '") + c + "' in '" + text + "'");
            } else {
                break;
            }
            if (!cur.accept('*')) break;
        }
        if (!have_factor) throw ParseError("dangling sign in '" + text + "'");
        auto key = std::make_pair(e1, e2);
        acc[key] += coeff;
        if (acc[key] == 0) acc.erase(key);
    }
    return acc;
}

inline void append_term(std::string& out, bool first, const Rat& coeff, const std::string& vars) {
    Rat a = abs_r(coeff);
    if (first) {
        if (sign_of(coeff) < 0) out += "-";
    } else {
        out += sign_of(coeff) < 0 ? " - " : " + ";
    }
    if (vars.empty()) {
        out += rat_to_string(a);
    } else if (a == 1) {
        out += vars;
    } else {
        out += rat_to_string(a) + "*" + vars;
    }
}

inline std::string var_power(char v, int e) {
    if (e == 0) return "";
    std::string s(1, v);
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

}  // namespace detail

/// Parses a univariate polynomial in `var` (default t), e.g. "1/2*t^2 - 3/2*t + 1".
inline UniPoly parse_unipoly(const std::string& text, char var = 't') {
    auto mono = detail::parse_monomials(text, var, '\0');
    std::vector<Rat> c;
    for (const auto& [k, v] : mono) {
        if (static_cast<int>(c.size()) < k.first + 1)
            c.resize(static_cast<std::size_t>(k.first) + 1, Rat(0));
        c[static_cast<std::size_t>(k.first)] = v;
    }
    return UniPoly(std::move(c));
}

/// Parses a bivariate polynomial in (vx, vy) (default x, y), e.g. "x^2 - 2*y^2".
inline BiPoly parse_bipoly(const std::string& text, char vx = 'x', char vy = 'y') {
    auto mono = detail::parse_monomials(text, vx, vy);
    BiPoly p;
    for (const auto& [k, v] : mono) p.set(k.first, k.second, v);
    return p;
}

/// Canonical printer; round-trips through parse_unipoly.
inline std::string print_unipoly(const UniPoly& p, char var = 't') {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = *p.degree(); i >= 0; --i) {
        const Rat& c = p.coeff(i);
        if (c == 0) continue;
        detail::append_term(out, first, c, detail::var_power(var, i));
        first = false;
    }
    return out;
}

/// Canonical printer (graded order, x before y); round-trips through parse_bipoly.
inline std::string print_bipoly(const BiPoly& p, char vx = 'x', char vy = 'y') {
    if (p.is_zero()) return "0";
    std::vector<std::pair<BiPoly::Key, Rat>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int ta = a.first.first + a.first.second;
        int tb = b.first.first + b.first.second;
        if (ta != tb) return ta > tb;
        return a.first.first > b.first.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms) {
        std::string vars = detail::var_power(vx, k.first);
        std::string ys = detail::var_power(vy, k.second);
        if (!vars.empty() && !ys.empty()) vars += "*";
        vars += ys;
        detail::append_term(out, first, c, vars);
        first = false;
    }
    return out;
}

}  // namespace fibertool
