#pragma once

#include <utility>
#include <vector>

#include "fibertool/rational.hpp"
#include "fibertool/unipoly.hpp"

namespace fibertool {

namespace detail {

/// Integer-primitive copy of a rational polynomial, rescaled by a positive
/// factor only (so every sign evaluation is preserved).
inline std::vector<Int> integer_primitive(const UniPoly& p) {
    PrimitiveForm f = primitive_form(p);
    Int content = 0;
    for (const Int& ai : f.a) content = gcd_i(content, ai);
    std::vector<Int> out;
    out.reserve(f.a.size());
    for (const Int& ai : f.a) out.push_back(ai / content);
    return out;
}

/// Sign of sum c[i] * u^i * v^(deg-i), i.e. of the polynomial at u/v (v > 0).
inline int sign_at_rational(const std::vector<Int>& c, const Int& u, const Int& v) {
    Int acc = c.back();
    Int vpow = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        vpow *= v;
        acc = acc * u + c[i] * vpow;
    }
    return acc.sign();
}

}  // namespace detail

/// Sturm chain over the integers for exact real-root counting.
///
/// Built from the classical sequence p, p', then negated remainders; each
/// element is stored integer-primitive (positive rescaling preserves signs).
/// Counts are of *distinct* real roots and remain correct for non-squarefree
/// input, since the whole chain is divisible by the final gcd element.
class SturmChain {
public:
    explicit SturmChain(const UniPoly& p) {
        if (p.is_zero()) throw ZeroPolynomialError();
        chain_.push_back(detail::integer_primitive(p));
        if (p.is_constant()) return;
        UniPoly prev = p;
        UniPoly cur = p.derivative();
        chain_.push_back(detail::integer_primitive(cur));
        while (true) {
            UniPoly rem = divmod_uni(prev, cur).second;
            if (rem.is_zero()) break;
            rem = -rem;
            chain_.push_back(detail::integer_primitive(rem));
            prev = std::move(cur);
            cur = std::move(rem);
            if (cur.is_constant()) break;
        }
    }

    int variations_at(const Rat& x) const {
        std::vector<int> signs;
        signs.reserve(chain_.size());
        const Int u = num(x), v = den(x);
        for (const auto& c : chain_) signs.push_back(detail::sign_at_rational(c, u, v));
        return count_variations(signs);
    }

    int variations_at_pos_inf() const {
        std::vector<int> signs;
        signs.reserve(chain_.size());
        for (const auto& c : chain_) signs.push_back(c.back().sign());
        return count_variations(signs);
    }

    int variations_at_neg_inf() const {
        std::vector<int> signs;
        signs.reserve(chain_.size());
        for (const auto& c : chain_) {
            int s = c.back().sign();
            if ((c.size() - 1) % 2 == 1) s = -s;
            signs.push_back(s);
        }
        return count_variations(signs);
    }

    /// Number of distinct real roots in the half-open interval (a, b], a < b.
    int count_in(const Rat& a, const Rat& b) const {
        return variations_at(a) - variations_at(b);
    }

    /// Number of distinct real roots in (a, +infinity).
    int count_above(const Rat& a) const {
        return variations_at(a) - variations_at_pos_inf();
    }

    /// Number of distinct real roots in (-infinity, a].
    int count_below_eq(const Rat& a) const {
        return variations_at_neg_inf() - variations_at(a);
    }

    int count_all() const { return variations_at_neg_inf() - variations_at_pos_inf(); }

    /// Sign of the underlying polynomial at x.
    int sign_at(const Rat& x) const {
        return detail::sign_at_rational(chain_.front(), num(x), den(x));
    }

private:
    static int count_variations(const std::vector<int>& signs) {
        int count = 0, last = 0;
        for (int s : signs) {
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    std::vector<std::vector<Int>> chain_;
};

/// All integer roots of g in [lo, hi], ascending.
///
/// Sturm counts on the squarefree part drive a sign-isolation bisection down
/// to unit intervals; each surviving integer candidate is then confirmed by
/// exact evaluation of g itself. Handles repeated roots and even-multiplicity
/// touch points that plain endpoint sign changes would miss.
inline std::vector<Int> integer_roots_in(const UniPoly& g, const Int& lo, const Int& hi) {
    std::vector<Int> roots;
    if (g.is_zero()) throw ZeroPolynomialError();
    if (g.is_constant() || lo > hi) return roots;
    if (*g.degree() == 1) {
        Rat r = -g.coeff(0) / g.coeff(1);
        if (is_integer(r) && num(r) >= lo && num(r) <= hi) roots.push_back(num(r));
        return roots;
    }
    const UniPoly gs = squarefree_part(g);
    if (gs.is_constant()) return roots;
    SturmChain chain(gs);
    // Depth-first over (a, b] segments, left first, keeps output ascending.
    std::vector<std::pair<Int, Int>> stack;
    stack.emplace_back(lo - 1, hi);
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (chain.count_in(Rat(a), Rat(b)) == 0) continue;
        if (b - a == 1) {
            if (g.eval(Rat(b)) == 0) roots.push_back(b);
            continue;
        }
        Int mid = floor_div(a + b, Int(2));
        stack.emplace_back(mid, b);  // pushed first, processed second
        stack.emplace_back(a, mid);
    }
    return roots;
}

}  // namespace fibertool
