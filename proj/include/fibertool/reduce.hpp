#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fibertool/automorph.hpp"
#include "fibertool/bipoly.hpp"
#include "fibertool/errors.hpp"
#include "fibertool/unipoly.hpp"

namespace fibertool {

/// A polynomially parametrised plane curve t -> (p(t), q(t)).
struct PolyParam {
    UniPoly p;
    UniPoly q;
    bool operator==(const PolyParam& o) const { return p == o.p && q == o.q; }
};

namespace detail {

/// Polynomials in t whose coefficients live in Q[s]; entry i is the
/// coefficient of t^i.
using TPoly = std::vector<UniPoly>;

inline void trim_tpoly(TPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

/// (p(t) - p(s)) / (t - s) = sum_j t^j * (sum_{i>j} a_i s^{i-1-j}).
inline TPoly diff_quotient(const UniPoly& p) {
    TPoly f;
    const int d = p.degree().value_or(0);
    for (int j = 0; j + 1 <= d; ++j) {
        std::vector<Rat> row(static_cast<std::size_t>(d - 1 - j) + 1, Rat(0));
        for (int i = j + 1; i <= d; ++i) row[static_cast<std::size_t>(i - 1 - j)] = p.coeff(i);
        f.push_back(UniPoly(std::move(row)));
    }
    trim_tpoly(f);
    return f;
}

/// Divide out the Q[s]-content so coefficient growth stays bounded.
inline TPoly primitive_tpoly(TPoly f) {
    trim_tpoly(f);
    if (f.empty()) return f;
    UniPoly content;
    for (const auto& c : f) {
        if (!c.is_zero()) content = gcd_uni(content, c);
        if (content.is_constant() && !content.is_zero()) break;
    }
    if (content.is_constant()) {
        Rat inv = Rat(1) / content.coeff(0);
        for (auto& c : f) c = inv * c;
        return f;
    }
    for (auto& c : f) c = divmod_uni(c, content).first;
    return f;
}

/// Pseudo-remainder of F by G in Q[s][t] (multiply-as-needed variant).
inline TPoly prem_tpoly(TPoly f, const TPoly& g) {
    const int dg = static_cast<int>(g.size()) - 1;
    const UniPoly& lc = g.back();
    trim_tpoly(f);
    while (static_cast<int>(f.size()) - 1 >= dg) {
        const int df = static_cast<int>(f.size()) - 1;
        UniPoly top = f.back();
        for (auto& c : f) c = c * lc;
        for (int j = 0; j <= dg; ++j) {
            const std::size_t idx = static_cast<std::size_t>(j + df - dg);
            f[idx] = f[idx] - top * g[static_cast<std::size_t>(j)];
        }
        trim_tpoly(f);
    }
    return f;
}

/// Degree in t of gcd(F, G) over the fraction field Q(s).
inline int gcd_t_degree(TPoly f, TPoly g) {
    trim_tpoly(f);
    trim_tpoly(g);
    if (f.empty()) return static_cast<int>(g.size()) - 1;
    if (g.empty()) return static_cast<int>(f.size()) - 1;
    if (f.size() < g.size()) std::swap(f, g);
    while (!g.empty()) {
        TPoly r = prem_tpoly(f, g);
        f = std::move(g);
        g = primitive_tpoly(std::move(r));
    }
    return static_cast<int>(f.size()) - 1;
}

}  // namespace detail

/// True when p' and q' have no common root, i.e. the parametrisation has a
/// nonvanishing derivative everywhere (an immersion of the line).
inline bool check_nonsingular_param(const PolyParam& param) {
    if (param.p.is_constant() && param.q.is_constant()) throw BothConstantError();
    UniPoly g = gcd_uni(param.p.derivative(), param.q.derivative());
    return g.is_constant() && !g.is_zero();
}

/// True when the parametrisation is generically injective: the difference
/// quotients of p and q have no common zero (t, s) with t != s, detected by a
/// constant gcd over Q(s).
inline bool check_proper(const PolyParam& param) {
    if (param.p.is_constant() && param.q.is_constant()) throw BothConstantError();
    return detail::gcd_t_degree(detail::diff_quotient(param.p),
                                detail::diff_quotient(param.q)) == 0;
}

/// Outcome of straightening a parametrised line to (a*t + c, e).
struct ReductionResult {
    PlaneAutomorphism phi;  ///< phi(final_param(t)) = input param(t) for all t
    PolyParam final_param;  ///< (a*t + c, e) with a != 0
    std::vector<std::pair<int, int>> degree_trace;  ///< coordinate degrees per pass
    bool integral_inverse = false;  ///< phi^{-1} maps Z^2 into Z^2
};

/// Straighten a proper non-singular polynomial parametrisation by elementary
/// plane maps. Each pass either swaps the coordinates so the lower degree
/// comes first or cancels the leading term of the second coordinate against a
/// power of the first.
inline ReductionResult reduce_param(const PolyParam& param) {
    if (!check_proper(param)) throw ImproperParamError();
    if (!check_nonsingular_param(param)) throw SingularParamError();

    ReductionResult out;
    UniPoly pc = param.p;
    UniPoly qc = param.q;
    const int start_total = param.p.degree().value_or(0) + param.q.degree().value_or(0);
    int guard = 2 * start_total + 4;

    while (true) {
        if (--guard < 0) throw NotReducedError("pass limit exceeded");
        const int dp = pc.degree().value_or(0);
        const int dq = qc.degree().value_or(0);
        out.degree_trace.emplace_back(dp, dq);
        if (dq == 0 && dp <= 1) break;
        if (dp == 0 && dq == 1) {
            out.phi.prepend(ElementaryStep::swap());
            std::swap(pc, qc);
            break;
        }
        if (dp > dq) {
            out.phi.prepend(ElementaryStep::swap());
            std::swap(pc, qc);
            continue;
        }
        if (dp == 0) throw NotReducedError("constant coordinate against degree >= 2");
        if (dq % dp != 0) throw DegreeObstructionError(dp, dq);
        const int l = dq / dp;
        Rat ratio = qc.leading() / pow_r(pc.leading(), static_cast<unsigned>(l));
        const Int N = num(ratio);
        const Int M = den(ratio);
        // E = (x, y/M + (N/M) x^l) has the integer inverse (x, M y - N x^l);
        // applying that inverse cancels the leading term of q exactly.
        out.phi.prepend(ElementaryStep::triangular(Rat(1), Rat(1, M),
                                                   UniPoly::monomial(Rat(N, M), l)));
        qc = Rat(M) * qc - Rat(N) * pc.pow(static_cast<unsigned>(l));
        if (qc.degree().value_or(0) >= dq && !(qc.is_zero() && dq == 0))
            throw NotReducedError("leading term did not cancel");
    }

    if (pc.degree() != std::optional<int>(1) || !qc.is_constant())
        throw NotReducedError("final parametrisation is not a line");
    out.final_param = PolyParam{pc, qc};
    auto [rp, rq] = out.phi.apply_param(pc, qc);
    if (!(rp == param.p && rq == param.q))
        throw NotReducedError("automorphism does not reproduce the input");
    out.integral_inverse = out.phi.has_integral_inverse();
    return out;
}

/// Outcome of straightening the level set P = k along a parametrisation.
struct NormalizationResult {
    PlaneAutomorphism phi;  ///< phi(final_param(t)) = input param(t)
    PolyParam final_param;  ///< (e, a*t + c): the vertical line x = e
    BiPoly transformed;     ///< (P - k) composed with phi
    std::optional<std::pair<Rat, Rat>> normal_form;  ///< (A, B) iff transformed = A*x + B
    bool integral_inverse = false;

    PlaneAutomorphism phi_line;  ///< variant with final parametrisation exactly (0, t)
    BiPoly transformed_line;     ///< (P - k) composed with phi_line
    std::optional<std::pair<Rat, Rat>> normal_form_line;  ///< (A, 0) when linear
    bool integral_inverse_line = false;

    std::vector<std::pair<int, int>> degree_trace;
};

namespace detail {

inline std::optional<std::pair<Rat, Rat>> linear_in_x(const BiPoly& f) {
    BiPoly rest = f;
    Rat a = f.coeff(1, 0);
    Rat b = f.coeff(0, 0);
    rest.set(1, 0, Rat(0));
    rest.set(0, 0, Rat(0));
    if (a == 0 || !rest.is_zero()) return std::nullopt;
    return std::make_pair(a, b);
}

}  // namespace detail

/// Verify P(p(t), q(t)) = k, straighten the parametrisation, and transport
/// P - k along the resulting automorphism. The final parametrisation is the
/// vertical line (e, a*t + c); the phi_line variant renormalises it to (0, t).
inline NormalizationResult normalize_curve(const BiPoly& P, const Rat& k, const PolyParam& param) {
    UniPoly onto = P.substitute_uni(param.p, param.q);
    if (!(onto == UniPoly(k))) throw ParamMismatchError();

    ReductionResult red = reduce_param(param);
    NormalizationResult out;
    out.degree_trace = std::move(red.degree_trace);

    // Move the line to vertical position so the straightened equation reads
    // off the first coordinate.
    out.phi = red.phi;
    out.phi.prepend(ElementaryStep::swap());
    const Rat e = red.final_param.q.coeff(0);
    const Rat a = red.final_param.p.coeff(1);
    const Rat c = red.final_param.p.coeff(0);
    out.final_param = PolyParam{UniPoly(e), red.final_param.p};

    BiPoly level = P - BiPoly(k);
    out.transformed = apply_poly(level, out.phi);
    out.normal_form = detail::linear_in_x(out.transformed);
    out.integral_inverse = out.phi.has_integral_inverse();

    // phi_line additionally maps (0, t) onto the final line: first send
    // (0, t) -> (e, a*t + c), then apply phi.
    out.phi_line = out.phi;
    if (e != 0) out.phi_line.prepend(ElementaryStep::shift(e, Rat(0)));
    if (!(a == 1 && c == 0))
        out.phi_line.prepend(ElementaryStep::triangular(Rat(1), a, UniPoly(c)));
    out.transformed_line = apply_poly(level, out.phi_line);
    out.normal_form_line = detail::linear_in_x(out.transformed_line);
    out.integral_inverse_line = out.phi_line.has_integral_inverse();

    auto [lp, lq] = out.phi_line.apply_param(UniPoly(), UniPoly::var());
    if (!(lp == param.p && lq == param.q))
        throw NotReducedError("line automorphism does not reproduce the input");
    return out;
}

}  // namespace fibertool
