#pragma once

#include <utility>
#include <vector>

#include "fibertool/bipoly.hpp"
#include "fibertool/errors.hpp"
#include "fibertool/unipoly.hpp"

namespace fibertool {

namespace detail {

/// Evaluate a univariate polynomial at a bivariate argument (Horner).
inline BiPoly eval_uni_at(const UniPoly& s, const BiPoly& u) {
    BiPoly acc;
    const auto& c = s.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + BiPoly(*it);
    return acc;
}

}  // namespace detail

enum class StepKind { Triangular, Swap, Shift };

/// One elementary plane map. The three kinds generate the tame automorphisms
/// of the affine plane used throughout:
///   Triangular(lambda, mu, s):  (x, y) -> (lambda*x, mu*y + s(x))
///   Swap:                       (x, y) -> (y, x)
///   Shift(cx, cy):              (x, y) -> (x + cx, y + cy)
class ElementaryStep {
public:
    static ElementaryStep triangular(const Rat& lambda, const Rat& mu, UniPoly s) {
        if (lambda == 0 || mu == 0)
            throw Error("triangular step requires nonzero scaling factors");
        ElementaryStep e;
        e.kind_ = StepKind::Triangular;
        e.lambda_ = lambda;
        e.mu_ = mu;
        e.s_ = std::move(s);
        return e;
    }

    /// The common shear (x, y) -> (x, y + s(x)).
    static ElementaryStep shear(UniPoly s) { return triangular(Rat(1), Rat(1), std::move(s)); }

    static ElementaryStep swap() {
        ElementaryStep e;
        e.kind_ = StepKind::Swap;
        return e;
    }

    static ElementaryStep shift(const Rat& cx, const Rat& cy) {
        ElementaryStep e;
        e.kind_ = StepKind::Shift;
        e.cx_ = cx;
        e.cy_ = cy;
        return e;
    }

    StepKind kind() const { return kind_; }
    const Rat& lambda() const { return lambda_; }
    const Rat& mu() const { return mu_; }
    const UniPoly& s() const { return s_; }
    const Rat& cx() const { return cx_; }
    const Rat& cy() const { return cy_; }

    std::pair<Rat, Rat> apply(const Rat& x, const Rat& y) const {
        switch (kind_) {
            case StepKind::Triangular: return {lambda_ * x, mu_ * y + s_.eval(x)};
            case StepKind::Swap: return {y, x};
            case StepKind::Shift: return {x + cx_, y + cy_};
        }
        throw Error("unreachable step kind");
    }

    /// Apply to a pair of univariate polynomials (a parametrised point).
    std::pair<UniPoly, UniPoly> apply(const UniPoly& p, const UniPoly& q) const {
        switch (kind_) {
            case StepKind::Triangular: {
                UniPoly sp = s_.is_zero() ? UniPoly() : compose_into(p);
                return {lambda_ * p, mu_ * q + sp};
            }
            case StepKind::Swap: return {q, p};
            case StepKind::Shift: return {p + UniPoly(cx_), q + UniPoly(cy_)};
        }
        throw Error("unreachable step kind");
    }

    /// Apply to a pair of bivariate coordinate functions.
    std::pair<BiPoly, BiPoly> apply(const BiPoly& u, const BiPoly& v) const {
        switch (kind_) {
            case StepKind::Triangular:
                return {BiPoly(lambda_) * u, BiPoly(mu_) * v + detail::eval_uni_at(s_, u)};
            case StepKind::Swap: return {v, u};
            case StepKind::Shift: return {u + BiPoly(cx_), v + BiPoly(cy_)};
        }
        throw Error("unreachable step kind");
    }

    ElementaryStep inverse() const {
        switch (kind_) {
            case StepKind::Triangular: {
                // x = x'/lambda, y = (y' - s(x'/lambda)) / mu
                UniPoly scaled = s_.compose(UniPoly(std::vector<Rat>{Rat(0), Rat(1) / lambda_}));
                return triangular(Rat(1) / lambda_, Rat(1) / mu_, (Rat(-1) / mu_) * scaled);
            }
            case StepKind::Swap: return swap();
            case StepKind::Shift: return shift(-cx_, -cy_);
        }
        throw Error("unreachable step kind");
    }

    Rat jacobian() const {
        switch (kind_) {
            case StepKind::Triangular: return lambda_ * mu_;
            case StepKind::Swap: return Rat(-1);
            case StepKind::Shift: return Rat(1);
        }
        throw Error("unreachable step kind");
    }

    bool operator==(const ElementaryStep& o) const {
        if (kind_ != o.kind_) return false;
        switch (kind_) {
            case StepKind::Triangular:
                return lambda_ == o.lambda_ && mu_ == o.mu_ && s_ == o.s_;
            case StepKind::Swap: return true;
            case StepKind::Shift: return cx_ == o.cx_ && cy_ == o.cy_;
        }
        return false;
    }

private:
    UniPoly compose_into(const UniPoly& p) const { return s_.compose(p); }

    StepKind kind_ = StepKind::Swap;
    Rat lambda_{1};
    Rat mu_{1};
    UniPoly s_;
    Rat cx_{0};
    Rat cy_{0};
};

/// A plane automorphism given as a word in elementary steps. Steps are
/// applied to points left to right: with steps [s1, ..., sm],
/// Phi(v) = sm(... s1(v) ...).
class PlaneAutomorphism {
public:
    PlaneAutomorphism() = default;
    explicit PlaneAutomorphism(std::vector<ElementaryStep> steps) : steps_(std::move(steps)) {}

    static PlaneAutomorphism identity() { return PlaneAutomorphism(); }

    const std::vector<ElementaryStep>& steps() const { return steps_; }
    bool is_identity_word() const { return steps_.empty(); }

    /// Phi' = S then Phi (S acts first).
    void prepend(const ElementaryStep& s) { steps_.insert(steps_.begin(), s); }
    /// Phi' = Phi then S (S acts last).
    void append(const ElementaryStep& s) { steps_.push_back(s); }

    /// This automorphism followed by `after`.
    PlaneAutomorphism then(const PlaneAutomorphism& after) const {
        std::vector<ElementaryStep> all = steps_;
        all.insert(all.end(), after.steps_.begin(), after.steps_.end());
        return PlaneAutomorphism(std::move(all));
    }

    PlaneAutomorphism inverse() const {
        std::vector<ElementaryStep> inv;
        inv.reserve(steps_.size());
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) inv.push_back(it->inverse());
        return PlaneAutomorphism(std::move(inv));
    }

    std::pair<Rat, Rat> apply_point(const Rat& x, const Rat& y) const {
        std::pair<Rat, Rat> v{x, y};
        for (const auto& s : steps_) v = s.apply(v.first, v.second);
        return v;
    }

    /// Image of a parametrised point t -> (p(t), q(t)).
    std::pair<UniPoly, UniPoly> apply_param(const UniPoly& p, const UniPoly& q) const {
        std::pair<UniPoly, UniPoly> v{p, q};
        for (const auto& s : steps_) v = s.apply(v.first, v.second);
        return v;
    }

    /// The coordinate functions (X(x,y), Y(x,y)) with Phi(x,y) = (X, Y).
    std::pair<BiPoly, BiPoly> coordinate_polys() const {
        std::pair<BiPoly, BiPoly> v{BiPoly::x(), BiPoly::y()};
        for (const auto& s : steps_) v = s.apply(v.first, v.second);
        return v;
    }

    Rat jacobian_det() const {
        Rat j(1);
        for (const auto& s : steps_) j *= s.jacobian();
        return j;
    }

    /// True when the inverse automorphism has integer coordinate functions,
    /// i.e. Phi^{-1} maps integral points to integral points.
    bool has_integral_inverse() const {
        auto [u, v] = inverse().coordinate_polys();
        return u.has_integer_coeffs() && v.has_integer_coeffs();
    }

    bool operator==(const PlaneAutomorphism& o) const { return steps_ == o.steps_; }

private:
    std::vector<ElementaryStep> steps_;
};

/// P composed with Phi: (apply_poly(P, Phi))(v) = P(Phi(v)). Substitutes the
/// steps into P in reverse word order.
inline BiPoly apply_poly(const BiPoly& P, const PlaneAutomorphism& phi) {
    BiPoly out = P;
    const auto& steps = phi.steps();
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        std::pair<BiPoly, BiPoly> img = it->apply(BiPoly::x(), BiPoly::y());
        out = out.substitute(img.first, img.second);
    }
    return out;
}

}  // namespace fibertool
