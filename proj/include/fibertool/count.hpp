#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibertool/errors.hpp"
#include "fibertool/rational.hpp"
#include "fibertool/sturm.hpp"
#include "fibertool/unipoly.hpp"

namespace fibertool {

/// Interval [t_minus, t_plus] outside which |p| provably exceeds B.
struct CountWindow {
    Int B;
    Rat epsilon;
    Rat sigma;    ///< centre -a_{d-1} / (d a_d)
    Rat t_minus;  ///< certified left edge
    Rat t_plus;   ///< certified right edge
    Int b0;       ///< certified threshold the window was validated against
};

/// Result of enumerating parameters t with p(t) an integer of size <= B.
struct MReport {
    Int B;
    Rat epsilon;
    std::vector<Rat> parameters;  ///< ascending
    Rat bound_value;              ///< 2 (a^{d-1} b B)^{1/d} + 1 + epsilon, outward-rounded
    bool bound_holds = false;
    long long count() const { return static_cast<long long>(parameters.size()); }
};

/// Centre of the tail window: the critical mean -a_{d-1} / (d a_d).
inline Rat sigma(const UniPoly& p) {
    if (p.is_constant()) throw ConstantPolynomialError("window centre");
    PrimitiveForm f = primitive_form(p);
    return make_rat(-f.a[static_cast<std::size_t>(f.d) - 1],
                    f.d * f.a[static_cast<std::size_t>(f.d)]);
}

namespace detail {

/// Certificate material for: |p(t)| > B for every t outside
/// [sigma - eps - rho, sigma + eps + rho] with rho = (B b / a_d)^{1/d}.
/// Write t = sigma + eps + s (right) or t = sigma - eps - s (left); the shifted
/// tails h+(s) = p(sigma+eps+s) - (a_d/b) s^d and
/// h-(s) = (-1)^d p(sigma-eps-s) - (a_d/b) s^d have degree d-1 with leading
/// coefficient d a_d eps / b > 0. Once both are positive on [s0, inf) for an
/// s0 below rho, every t beyond the window satisfies
/// (+-1)^d p(t) > (a_d/b) s^d > B.
struct TailCertificate {
    int d = 0;
    Int ad;  ///< leading coefficient of the primitive form, > 0
    Int b;   ///< primitive denominator
    Rat sigma;
    Rat eps;
    UniPoly hplus, hminus;
    SturmChain chain_plus, chain_minus;

    static UniPoly normalized(const UniPoly& p) {
        if (p.is_constant()) throw ConstantPolynomialError("tail certificate");
        return p.leading() > 0 ? p : Rat(-1) * p;
    }

    /// The shifted tail (+-1)^d p(sigma +- (eps + s)) - (a_d/b) s^d; positive
    /// leading coefficient d a_d eps / b, degree exactly d - 1.
    static UniPoly tail(const UniPoly& p, const Rat& epsilon, bool right) {
        if (!(epsilon > 0)) throw Error("epsilon must be positive");
        UniPoly pn = normalized(p);
        PrimitiveForm f = primitive_form(pn);
        Rat centre = fibertool::sigma(p);
        UniPoly lead = UniPoly::monomial(Rat(f.a[static_cast<std::size_t>(f.d)], f.b), f.d);
        if (right)
            return pn.compose(UniPoly(std::vector<Rat>{centre + epsilon, Rat(1)})) - lead;
        return (f.d % 2 == 0 ? Rat(1) : Rat(-1))
                   * pn.compose(UniPoly(std::vector<Rat>{centre - epsilon, Rat(-1)}))
               - lead;
    }

    TailCertificate(const UniPoly& p, const Rat& epsilon)
        : sigma(fibertool::sigma(p)),
          eps(epsilon),
          hplus(tail(p, epsilon, true)),
          hminus(tail(p, epsilon, false)),
          chain_plus(hplus),
          chain_minus(hminus) {
        PrimitiveForm f = primitive_form(normalized(p));
        d = f.d;
        ad = f.a[static_cast<std::size_t>(d)];
        b = f.b;
    }

    /// Under-approximation of rho(B); monotone in B.
    Rat inner_radius(const Int& B) const { return root_enclosure(Rat(B * b, ad), static_cast<unsigned>(d)).under; }

    bool certifies(const Int& B) const {
        Rat s0 = inner_radius(B);
        if (!(s0 > 0)) return false;
        if (chain_plus.count_above(s0) != 0 || !(hplus.eval(s0) > 0)) return false;
        if (chain_minus.count_above(s0) != 0 || !(hminus.eval(s0) > 0)) return false;
        return true;
    }

    Int threshold() const {
        Int B = 1;
        for (int pass = 0; pass < 600; ++pass, B *= 2)
            if (certifies(B)) return B;
        throw Error("tail certificate did not validate below 2^600");
    }
};

}  // namespace detail

/// Smallest power-of-two height for which the tail certificate validates; the
/// certificate is monotone, so every B >= find_B0(p, eps) is covered.
inline Int find_B0(const UniPoly& p, const Rat& epsilon) {
    return detail::TailCertificate(p, epsilon).threshold();
}

/// Certified window for B >= find_B0; throws BelowThresholdError otherwise.
inline CountWindow window(const UniPoly& p, const Int& B, const Rat& epsilon) {
    detail::TailCertificate cert(p, epsilon);
    Int b0 = cert.threshold();
    if (B < b0) throw BelowThresholdError(B.str(), b0.str());
    Rat rho = root_enclosure(Rat(B * cert.b, cert.ad), static_cast<unsigned>(cert.d)).over;
    CountWindow w;
    w.B = B;
    w.epsilon = epsilon;
    w.sigma = cert.sigma;
    w.t_minus = cert.sigma - epsilon - rho;
    w.t_plus = cert.sigma + epsilon + rho;
    w.b0 = b0;
    return w;
}

/// Outward-rounded value of the sharp bound 2 (a^{d-1} b B)^{1/d} + 1 + eps.
inline Rat bound_M(const UniPoly& p, const Int& B, const Rat& epsilon) {
    if (p.is_constant()) throw ConstantPolynomialError("bound evaluation");
    if (epsilon < 0) throw Error("epsilon must be nonnegative");
    if (B < 0) throw Error("B must be nonnegative");
    PrimitiveForm f = primitive_form(p);
    Int a = abs_i(f.a[static_cast<std::size_t>(f.d)]);
    Int radicand = pow_i(a, static_cast<unsigned>(f.d - 1)) * f.b * B;
    Rat root = root_enclosure(Rat(radicand), static_cast<unsigned>(f.d)).over;
    return 2 * root + 1 + epsilon;
}

/// Enumerate every rational t with p(t) in Z and |p(t)| <= B by scanning the
/// lattice (1/a_d) Z inside the certified window. Any such t has denominator
/// dividing a_d: clearing p(t) = k gives a_d r^d = s (b k s^{d-1} - ...), so
/// s | a_d r^d and gcd(r, s) = 1.
inline MReport enumerate_M(const UniPoly& p, const Int& B, const Rat& epsilon) {
    CountWindow w = window(p, B, epsilon);
    PrimitiveForm f = primitive_form(p);
    Int a = abs_i(f.a[static_cast<std::size_t>(f.d)]);
    MReport rep;
    rep.B = B;
    rep.epsilon = epsilon;
    Int m = ceil_rat(a * w.t_minus);
    const Int m_hi = floor_rat(a * w.t_plus);
    for (; m <= m_hi; ++m) {
        Rat t(m, a);
        Rat val = p.eval(t);
        if (!is_integer(val)) continue;
        if (abs_i(num(val)) > B) continue;
        rep.parameters.push_back(std::move(t));
    }
    rep.bound_value = bound_M(p, B, epsilon);
    rep.bound_holds = Rat(static_cast<long long>(rep.parameters.size())) <= rep.bound_value;
    return rep;
}

namespace detail {

/// Primes below 2e6, built once; enough to factor every |value| < 4e12.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t limit = 2'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                composite[static_cast<std::size_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

/// All positive divisors of n > 0 (unordered).
inline std::vector<Int> divisors_of(Int n) {
    std::vector<std::pair<Int, int>> fac;
    for (std::uint32_t q : small_primes()) {
        if (Int(q) * q > n) break;
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) { n /= q; ++e; }
            fac.emplace_back(Int(q), e);
        }
    }
    if (n > 1) {
        if (n >= Int(4'000'000'000'000LL))
            throw Error("divisor enumeration out of range: " + n.str());
        fac.emplace_back(n, 1);  // below (2e6)^2 and coprime to all small primes
    }
    std::vector<Int> divs{Int(1)};
    for (const auto& [prime, mult] : fac) {
        const std::size_t base = divs.size();
        Int pe(1);
        for (int e = 1; e <= mult; ++e) {
            pe *= prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    return divs;
}

/// Smallest integer >= x^{1/e} for x >= 0.
inline Int ceil_root(const Int& x, unsigned e) {
    Int r = floor_root(x, e);
    return pow_i(r, e) == x ? r : r + 1;
}

/// All rational roots of sum c_i t^i (c ascending, leading nonzero), appended
/// to out. Uses closed forms through degree two and a divisor search with a
/// Fujiwara-style magnitude prune above that.
inline void rational_roots_into(std::vector<Int> c, std::vector<Rat>& out) {
    std::size_t v = 0;
    while (v < c.size() && c[v] == 0) ++v;
    if (v > 0) {
        out.emplace_back(0);
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(v));
    }
    if (c.size() <= 1) return;
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg == 1) {
        out.push_back(make_rat(-c[0], c[1]));
        return;
    }
    if (deg == 2) {
        Int disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (disc < 0) return;
        Int r;
        if (!is_square(disc, r)) return;
        out.push_back(make_rat(-c[1] + r, 2 * c[2]));
        if (r != 0) out.push_back(make_rat(-c[1] - r, 2 * c[2]));
        return;
    }
    const Int lead = abs_i(c.back());
    Int fuj(0);  // outward-rounded Fujiwara root bound: 2 max (|c_{deg-i}|/|c_deg|)^{1/i}
    for (int i = 1; i <= deg; ++i) {
        Int num_i = abs_i(c[static_cast<std::size_t>(deg - i)]);
        if (num_i == 0) continue;
        fuj = std::max(fuj, 2 * ceil_root(ceil_div(num_i, lead), static_cast<unsigned>(i)));
    }
    std::vector<Int> s_cands = divisors_of(lead);
    std::vector<Int> r_cands = divisors_of(abs_i(c[0]));
    for (const Int& s : s_cands) {
        std::vector<Int> spow(static_cast<std::size_t>(deg) + 1);
        spow[0] = 1;
        for (int i = 1; i <= deg; ++i) spow[static_cast<std::size_t>(i)] = spow[static_cast<std::size_t>(i - 1)] * s;
        for (const Int& rpos : r_cands) {
            if (rpos > s * fuj) continue;
            if (gcd_i(rpos, s) != 1) continue;
            for (int sign = 0; sign < 2; ++sign) {
                Int r = sign == 0 ? rpos : -rpos;
                Int acc = c.back();
                for (int i = deg - 1; i >= 0; --i)
                    acc = acc * r + c[static_cast<std::size_t>(i)] * spow[static_cast<std::size_t>(deg - i)];
                if (acc == 0) out.emplace_back(Rat(r, s));
            }
        }
    }
}

}  // namespace detail

/// Independent oracle for enumerate_M: for each target value k in [-B, B],
/// solve p(t) = k exactly for rational t. Shares no window or lattice logic
/// with the certified enumeration.
inline MReport oracle_M(const UniPoly& p, const Int& B) {
    if (p.is_constant()) throw ConstantPolynomialError("oracle enumeration");
    PrimitiveForm f = primitive_form(p);
    MReport rep;
    rep.B = B;
    rep.epsilon = Rat(0);
    for (Int k = -B; k <= B; ++k) {
        std::vector<Int> c = f.a;
        c[0] -= f.b * k;
        detail::rational_roots_into(std::move(c), rep.parameters);
    }
    std::sort(rep.parameters.begin(), rep.parameters.end());
    rep.bound_value = bound_M(p, B, Rat(0));
    rep.bound_holds = Rat(static_cast<long long>(rep.parameters.size())) <= rep.bound_value;
    return rep;
}

}  // namespace fibertool
