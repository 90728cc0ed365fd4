#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "fibertool/errors.hpp"
#include "fibertool/rational.hpp"

namespace fibertool {

/// Reject coefficients whose conic x^2 - d y^2 = 1 is degenerate.
inline void require_pell_coefficient(const Int& d) {
    if (d <= 0) throw Error("Pell coefficient must be positive, got " + d.str());
    Int r;
    if (is_square(d, r)) throw PerfectSquareError(d.str());
}

/// The conic x^2 - d y^2 = 1 for a positive nonsquare d.
struct PellForm {
    Int d;
    explicit PellForm(Int dd) : d(std::move(dd)) { require_pell_coefficient(d); }
};

/// Continued fraction sqrt(d) = [a0; period...], period ending in 2*a0.
struct CFExpansion {
    Int a0;
    std::vector<Int> period;
};

struct PellSolution {
    Int x;
    Int y;
    bool operator==(const PellSolution& o) const { return x == o.x && y == o.y; }
    bool operator<(const PellSolution& o) const { return x != o.x ? x < o.x : y < o.y; }
};

/// Periodic continued fraction of sqrt(d) via the integer (m, q, a)
/// recurrence; the period closes exactly when q returns to 1.
inline CFExpansion cf_sqrt(const Int& d) {
    require_pell_coefficient(d);
    CFExpansion cf;
    cf.a0 = isqrt(d);
    Int m(0), q(1), a = cf.a0;
    while (true) {
        m = a * q - m;
        q = (d - m * m) / q;
        a = (cf.a0 + m) / q;
        cf.period.push_back(a);
        if (q == 1) break;
        if (cf.period.size() > 100000) throw Error("continued fraction failed to close");
    }
    return cf;
}

/// Least solution (x1, y1) with x1, y1 > 0 of x^2 - d y^2 = 1, read off the
/// convergent before the end of the first period (second period when the
/// period length is odd).
inline PellSolution fundamental_solution(const Int& d) {
    CFExpansion cf = cf_sqrt(d);
    const std::size_t r = cf.period.size();
    const std::size_t n = (r % 2 == 0) ? r - 1 : 2 * r - 1;
    Int h_prev(1), h_prev2(0);  // h_{-1}, h_{-2}
    Int k_prev(0), k_prev2(1);  // k_{-1}, k_{-2}
    for (std::size_t i = 0; i <= n; ++i) {
        const Int& ai = i == 0 ? cf.a0 : cf.period[(i - 1) % r];
        Int h = ai * h_prev + h_prev2;
        Int k = ai * k_prev + k_prev2;
        h_prev2 = std::move(h_prev);
        h_prev = std::move(h);
        k_prev2 = std::move(k_prev);
        k_prev = std::move(k);
    }
    PellSolution s{h_prev, k_prev};
    if (s.x * s.x - d * s.y * s.y != 1)
        throw Error("fundamental solution verification failed for d = " + d.str());
    return s;
}

/// All integer points on x^2 - d y^2 = 1 with |x| <= B: the four sign orbits
/// of the powers of the fundamental solution, plus (+-1, 0). Sorted.
inline std::vector<PellSolution> solutions_up_to(const Int& d, const Int& B) {
    require_pell_coefficient(d);
    std::vector<PellSolution> out;
    if (B >= 1) {
        out.push_back({Int(-1), Int(0)});
        out.push_back({Int(1), Int(0)});
    }
    PellSolution fund = fundamental_solution(d);
    Int x = fund.x, y = fund.y;
    while (x <= B) {
        out.push_back({x, y});
        out.push_back({x, -y});
        out.push_back({-x, y});
        out.push_back({-x, -y});
        Int nx = x * fund.x + d * y * fund.y;
        Int ny = x * fund.y + y * fund.x;
        x = std::move(nx);
        y = std::move(ny);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Integer points on x^2 - d y^2 = N with |x| <= B. The unit target reuses
/// the solution group; any other target is resolved by an exact scan over y
/// with a perfect-square test.
inline std::vector<PellSolution> pell_points(const Int& d, const Int& N, const Int& B) {
    if (N == 1) return solutions_up_to(d, B);
    require_pell_coefficient(d);
    std::vector<PellSolution> out;
    if (B < 0) return out;
    if (N == 0) {
        out.push_back({Int(0), Int(0)});  // d nonsquare: the only rational point
        return out;
    }
    for (Int y = 0;; ++y) {
        Int xx = N + d * y * y;
        if (xx > B * B) break;  // strictly increasing in y, so nothing follows
        if (xx < 0) continue;
        Int x;
        if (!is_square(xx, x)) continue;
        out.push_back({x, y});
        if (y != 0) out.push_back({x, -y});
        if (x != 0) {
            out.push_back({-x, y});
            if (y != 0) out.push_back({-x, -y});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Target N = (k - beta) / alpha of a shifted unit form; nullopt when the
/// shift does not land on an integer.
inline std::optional<Int> pell_target(const Rat& alpha, const Rat& beta, const Rat& k) {
    if (alpha == 0) throw Error("pell target needs a nonzero leading coefficient");
    Rat N = (k - beta) / alpha;
    if (!is_integer(N)) return std::nullopt;
    return num(N);
}

/// Logarithmic growth diagnostic: least-squares fit count(B) ~ c1 ln B + c2
/// over a grid of heights, with the largest absolute residual.
struct GrowthCheck {
    std::vector<Int> grid;
    std::vector<long long> counts;
    double c1 = 0.0;
    double c2 = 0.0;
    double max_residual = 0.0;
};

inline GrowthCheck count_growth_check(const Int& d, const std::vector<Int>& grid) {
    if (grid.size() < 2) throw Error("growth check needs at least two heights");
    GrowthCheck g;
    g.grid = grid;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const Int& B : grid) {
        long long n = static_cast<long long>(solutions_up_to(d, B).size());
        g.counts.push_back(n);
        double lx = std::log(B.convert_to<double>());
        sx += lx;
        sy += static_cast<double>(n);
        sxx += lx * lx;
        sxy += lx * static_cast<double>(n);
    }
    const double m = static_cast<double>(grid.size());
    const double denom = m * sxx - sx * sx;
    g.c1 = (m * sxy - sx * sy) / denom;
    g.c2 = (sy - g.c1 * sx) / m;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double lx = std::log(g.grid[i].convert_to<double>());
        double res = std::abs(static_cast<double>(g.counts[i]) - (g.c1 * lx + g.c2));
        g.max_residual = std::max(g.max_residual, res);
    }
    return g;
}

}  // namespace fibertool
