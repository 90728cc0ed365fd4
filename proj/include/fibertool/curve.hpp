#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "fibertool/bipoly.hpp"
#include "fibertool/count.hpp"
#include "fibertool/parallel.hpp"
#include "fibertool/reduce.hpp"
#include "fibertool/sturm.hpp"

namespace fibertool {

/// The plane curve P(x, y) = k.
struct CurveSpec {
    BiPoly P;
    Rat k;

    CurveSpec(BiPoly P_, Rat k_) : P(std::move(P_)), k(std::move(k_)) {
        if (P.total_degree().value_or(0) < 1) throw Error("curve equation must be non-constant");
    }
};

using LatticePoint = std::pair<Int, Int>;

/// Integral-point report for a height bound B.
struct NReport {
    Int B{0};
    std::vector<LatticePoint> points;   // lexicographically sorted, deduplicated
    std::vector<Int> vertical_lines;    // x-values whose entire fiber lies on the curve
    std::optional<Rat> bound_value;     // enumeration bound (outward-rounded), when a parametrisation drives the report
    Int singular_budget{0};
    std::optional<Rat> walkowiak_value; // classical baseline (inward-rounded; only its lower side is ever compared)
    bool bound_holds{true};

    long long count() const { return static_cast<long long>(points.size()); }
};

/// Cap on the number of singular points of a degree-d plane curve.
inline Int singular_budget(const Int& d) {
    if (d < 1) throw Error("singular_budget: degree must be positive");
    return (d - 1) * (d - 2) / 2;
}

/// Certified lower bound on 2^48 d^8 ln(B)^5 B^(1/d). Reports compare this
/// value against the parametrisation bound, and only the comparison
/// "baseline > bound" is ever asserted, so rounding down keeps it sound.
inline Rat walkowiak_bound(const Int& d, const Int& B) {
    if (d < 1) throw Error("walkowiak_bound: degree must be positive");
    if (B < 2) throw Error("walkowiak_bound: B must be >= 2");
    double ln_b = std::log(rat_to_double(Rat(B))) * (1.0 - 1e-9);
    Int scale = pow_i(Int(10), 15);
    Rat ln_under = make_rat(Int(static_cast<long long>(std::floor(ln_b * 1e15))), scale);
    if (ln_under < 0) ln_under = Rat(0);
    unsigned du = static_cast<unsigned>(d);
    return Rat(pow_i(Int(2), 48)) * Rat(pow_i(d, 8)) * pow_r(ln_under, 5) * Rat(floor_root(B, du));
}

/// Enumeration bound read off the dominant coordinate of the parametrisation:
/// 2 (a_d^(d-1) b B)^(1/d) + 1 + epsilon, outward-rounded.
inline Rat theorem_bound(const PolyParam& param, const Int& B, const Rat& epsilon) {
    int dp = param.p.degree().value_or(0);
    int dq = param.q.degree().value_or(0);
    const UniPoly& dominant = (dp >= dq) ? param.p : param.q;
    if (dominant.is_constant()) throw ConstantCoordinateError();
    return bound_M(dominant, B, epsilon);
}

/// True iff P(p(t), q(t)) = k identically.
inline bool implicitize_check(const CurveSpec& spec, const PolyParam& param) {
    UniPoly composed = spec.P.substitute_uni(param.p, param.q);
    return composed == UniPoly(spec.k);
}

namespace detail {

struct FiberChunk {
    std::vector<LatticePoint> points;
    std::vector<Int> verticals;
};

}  // namespace detail

/// Enumerate all integral points of P(x, y) = k with |x| <= B and |y| <= B by
/// exact integer root extraction on every vertical fiber. Fibers that lie
/// entirely on the curve are flagged in vertical_lines and clipped to the box.
/// Output is independent of the worker count.
inline NReport bruteforce_points(const CurveSpec& spec, const Int& B, int workers = 1) {
    if (B < 1) throw Error("height bound B must be positive");
    NReport rep;
    rep.B = B;
    Int d(spec.P.total_degree().value_or(1));
    rep.singular_budget = singular_budget(d);
    if (B >= 2) rep.walkowiak_value = walkowiak_bound(d, B);

    auto fiber_chunk = [&](const ChunkRange& r) {
        detail::FiberChunk out;
        for (Int x = r.lo; x <= r.hi; ++x) {
            UniPoly fiber =
                spec.P.substitute_uni(UniPoly(Rat(x)), UniPoly::var()) - UniPoly(spec.k);
            if (fiber.is_zero()) {
                out.verticals.push_back(x);
                for (Int y = -B; y <= B; ++y) out.points.emplace_back(x, y);
                continue;
            }
            for (const Int& y : integer_roots_in(fiber, -B, B)) out.points.emplace_back(x, y);
        }
        return out;
    };
    for (auto& part : map_chunks(-B, B, workers, fiber_chunk)) {
        rep.points.insert(rep.points.end(), part.points.begin(), part.points.end());
        rep.vertical_lines.insert(rep.vertical_lines.end(), part.verticals.begin(),
                                  part.verticals.end());
    }
    // chunks walk x upward and each fiber is emitted in ascending y, so the
    // concatenation is already sorted and duplicate-free
    return rep;
}

/// Enumerate the integral points reached by the parametrisation (p(t), q(t)).
/// Any t with both coordinates integral and bounded by B has denominator
/// dividing the leading coefficient of each non-constant coordinate's
/// primitive form, and lies inside each coordinate's certified window; the
/// candidate set is that lattice restricted to the window intersection, and
/// membership is then decided exactly. Output is independent of worker count.
inline NReport param_points(const PolyParam& param, const Int& B, const Rat& epsilon,
                            int workers = 1) {
    if (B < 1) throw Error("height bound B must be positive");
    const UniPoly& p = param.p;
    const UniPoly& q = param.q;
    const bool p_const = p.is_constant();
    const bool q_const = q.is_constant();
    if (p_const && q_const) throw ConstantCoordinateError();

    NReport rep;
    rep.B = B;
    Int d(std::max(p.degree().value_or(0), q.degree().value_or(0)));
    rep.singular_budget = singular_budget(d);
    if (B >= 2) rep.walkowiak_value = walkowiak_bound(d, B);
    rep.bound_value = theorem_bound(param, B, epsilon);

    Int b0(1);
    if (!p_const) b0 = std::max(b0, find_B0(p, epsilon));
    if (!q_const) b0 = std::max(b0, find_B0(q, epsilon));
    if (B < b0) throw BelowThresholdError(B.str(), b0.str());

    // A constant integer first coordinate sweeps out a whole vertical fiber,
    // matching the flag the fiber-by-fiber enumeration raises for that x.
    if (p_const && is_integer(p.coeff(0)) && abs_i(num(p.coeff(0))) <= B)
        rep.vertical_lines.push_back(num(p.coeff(0)));

    bool have_window = false;
    Rat lo, hi;
    Int lattice(1);
    for (const UniPoly* u : {&p, &q}) {
        if (u->is_constant()) continue;
        CountWindow w = window(*u, B, epsilon);
        if (!have_window) {
            lo = w.t_minus;
            hi = w.t_plus;
            lattice = abs_i(primitive_form(*u).a.back());
            have_window = true;
        } else {
            lo = std::max(lo, w.t_minus);
            hi = std::min(hi, w.t_plus);
            lattice = gcd_i(lattice, abs_i(primitive_form(*u).a.back()));
        }
    }

    Int m_lo = ceil_rat(lo * Rat(lattice));
    Int m_hi = floor_rat(hi * Rat(lattice));
    auto lattice_chunk = [&](const ChunkRange& r) {
        std::vector<LatticePoint> out;
        for (Int m = r.lo; m <= r.hi; ++m) {
            Rat t = make_rat(m, lattice);
            Rat pv = p.eval(t);
            Rat qv = q.eval(t);
            if (!is_integer(pv) || !is_integer(qv)) continue;
            Int x = num(pv);
            Int y = num(qv);
            if (abs_i(x) > B || abs_i(y) > B) continue;
            out.emplace_back(std::move(x), std::move(y));
        }
        return out;
    };
    for (auto& part : map_chunks(m_lo, m_hi, workers, lattice_chunk))
        rep.points.insert(rep.points.end(), part.begin(), part.end());
    std::sort(rep.points.begin(), rep.points.end());
    rep.points.erase(std::unique(rep.points.begin(), rep.points.end()), rep.points.end());

    Rat budgeted = *rep.bound_value + Rat(rep.singular_budget);
    rep.bound_holds = Rat(rep.count()) <= budgeted;
    return rep;
}

// ---------------------------------------------------------------------------
// Projective parametrisations and the shape of the polynomial at infinity
// ---------------------------------------------------------------------------

namespace detail {

/// Degree of a nonzero homogeneous form in (t, s); throws if not homogeneous.
inline int form_degree(const BiPoly& f, const char* which) {
    if (f.is_zero()) throw Error(std::string("projective component ") + which + " is zero");
    int d = -1;
    for (const auto& [key, c] : f.terms()) {
        int total = key.first + key.second;
        if (d < 0)
            d = total;
        else if (total != d)
            throw Error(std::string("projective component ") + which + " is not homogeneous");
    }
    return d;
}

/// Smallest s-exponent appearing in f (f in (t, s) with s as second variable).
inline int s_valuation(const BiPoly& f) {
    int v = -1;
    for (const auto& [key, c] : f.terms())
        if (v < 0 || key.second < v) v = key.second;
    return v;
}

/// f(t, 1) as a univariate polynomial.
inline UniPoly dehomogenize_t(const BiPoly& f) {
    std::vector<Rat> c;
    for (const auto& [key, v] : f.terms()) {
        if (static_cast<int>(c.size()) <= key.first) c.resize(key.first + 1, Rat(0));
        c[static_cast<std::size_t>(key.first)] += v;
    }
    return UniPoly(std::move(c));
}

inline UniPoly pow_poly(const UniPoly& u, int e) {
    UniPoly acc{Rat(1)};
    for (int i = 0; i < e; ++i) acc = acc * u;
    return acc;
}

}  // namespace detail

/// Homogenize u to a form of the given degree: sum u_i t^i s^(degree-i).
inline BiPoly homogenize(const UniPoly& u, int degree) {
    if (u.is_zero()) throw ZeroPolynomialError();
    if (degree < *u.degree()) throw Error("homogenize: target degree below deg(u)");
    BiPoly f;
    for (int i = 0; i <= *u.degree(); ++i) f.set(i, degree - i, u.coeff(i));
    return f;
}

/// A projective parametrisation (p_bar : q_bar : r_bar) by forms in (t, s) of
/// equal degree with integer coefficients and no common non-constant factor.
struct ProjectiveParam {
    BiPoly p_bar, q_bar, r_bar;
    int degree;

    ProjectiveParam(BiPoly p, BiPoly q, BiPoly r)
        : p_bar(std::move(p)), q_bar(std::move(q)), r_bar(std::move(r)), degree(0) {
        int dp = detail::form_degree(p_bar, "p");
        int dq = detail::form_degree(q_bar, "q");
        int dr = detail::form_degree(r_bar, "r");
        if (dp != dq || dq != dr) throw Error("projective components must have equal degrees");
        degree = dp;
        for (const BiPoly* f : {&p_bar, &q_bar, &r_bar})
            if (!f->has_integer_coeffs())
                throw Error("projective components must have integer coefficients");
        int vs = std::min({detail::s_valuation(p_bar), detail::s_valuation(q_bar),
                           detail::s_valuation(r_bar)});
        if (vs > 0) throw Error("projective components share the factor s");
        UniPoly g = gcd_uni(gcd_uni(detail::dehomogenize_t(p_bar), detail::dehomogenize_t(q_bar)),
                            detail::dehomogenize_t(r_bar));
        if (g.degree().value_or(0) > 0)
            throw Error("projective components share a non-constant factor");
    }
};

/// Projective closure of an affine polynomial parametrisation; the third
/// component is always c s^D, reflecting the single place at infinity.
inline ProjectiveParam projectivize(const PolyParam& param) {
    PrimitiveForm fp = primitive_form(param.p);
    PrimitiveForm fq = primitive_form(param.q);
    Int b = lcm_i(fp.b, fq.b);
    UniPoly bp = Rat(b) * param.p;
    UniPoly bq = Rat(b) * param.q;
    int D = std::max(*bp.degree(), *bq.degree());
    Int content = b;
    for (const UniPoly* u : {&bp, &bq})
        for (const Rat& c : u->coeffs()) content = gcd_i(content, num(c));
    Rat inv = make_rat(Int(1), content);
    BiPoly r_bar;
    r_bar.set(0, D, Rat(b) * inv);
    return ProjectiveParam(homogenize(inv * bp, D), homogenize(inv * bq, D), r_bar);
}

/// Topological type of the curve at infinity, read off the third component.
enum class FiberClass { LineLike, PellLike, Other };

inline const char* fiber_class_name(FiberClass c) {
    switch (c) {
        case FiberClass::LineLike: return "line-like";
        case FiberClass::PellLike: return "pell-like";
        default: return "other";
    }
}

/// Syntactic classification of r_bar: a single projective root (a t^D or
/// a s^D), or an exact power of a real-split binary quadratic (two roots), or
/// anything else.
inline FiberClass classify_maillet_form(const ProjectiveParam& param) {
    const BiPoly& r = param.r_bar;
    const int D = param.degree;

    if (r.terms().size() == 1) {
        const auto& key = r.terms().begin()->first;
        if (key.first == D || key.second == D) return FiberClass::LineLike;
    }
    if (D % 2 != 0) return FiberClass::Other;
    const int h = D / 2;
    const int v = detail::s_valuation(r);
    // r = Q^h forces the s-valuation to be h * val_s(Q) with val_s(Q) in {0, 1}
    // (val 2 would make r a pure power of s, handled above)
    if (v != 0 && v != h) return FiberClass::Other;
    const int quad_t_degree = (v == 0) ? 2 : 1;

    UniPoly w = detail::dehomogenize_t(r);
    if (w.degree().value_or(-1) != h * quad_t_degree) return FiberClass::Other;
    UniPoly sf = squarefree_part(w);
    if (sf.degree().value_or(-1) != quad_t_degree) return FiberClass::Other;
    PrimitiveForm pf = primitive_form(sf);
    std::vector<Rat> qc(pf.a.size());
    for (std::size_t i = 0; i < pf.a.size(); ++i) qc[i] = Rat(pf.a[i]);
    UniPoly qhat(std::move(qc));
    if (qhat.leading() < 0) qhat = -qhat;
    Rat lambda = w.leading() / pow_r(qhat.leading(), static_cast<unsigned>(h));
    if (!(w == lambda * detail::pow_poly(qhat, h))) return FiberClass::Other;
    if (quad_t_degree == 2) {
        Rat disc = qhat.coeff(1) * qhat.coeff(1) - Rat(4) * qhat.coeff(2) * qhat.coeff(0);
        if (disc <= 0) return FiberClass::Other;
    }
    // v == h: the quadratic is s (beta t + gamma s); its discriminant beta^2
    // is positive because beta is qhat's nonzero leading coefficient
    return FiberClass::PellLike;
}

/// Number of distinct projective roots of r_bar: distinct affine roots of the
/// dehomogenization plus the point (1 : 0) when the top t-coefficient
/// vanishes.
inline int projective_root_count(const ProjectiveParam& param) {
    UniPoly w = detail::dehomogenize_t(param.r_bar);
    int affine = w.is_constant() ? 0 : *squarefree_part(w).degree();
    int at_infinity = (w.degree().value_or(-1) < param.degree) ? 1 : 0;
    return affine + at_infinity;
}

}  // namespace fibertool
