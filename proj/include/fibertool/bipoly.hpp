#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fibertool/rational.hpp"
#include "fibertool/unipoly.hpp"

namespace fibertool {

/// Sparse bivariate polynomial over the rationals, keyed by (x-exp, y-exp).
///
/// Zero coefficients are never stored, so structural equality is semantic
/// equality and iteration order is canonical.
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;
    explicit BiPoly(const Rat& constant) {
        if (constant != 0) m_[{0, 0}] = constant;
    }

    static BiPoly x() { return monomial(Rat(1), 1, 0); }
    static BiPoly y() { return monomial(Rat(1), 0, 1); }

    static BiPoly monomial(const Rat& coeff, int i, int j) {
        BiPoly p;
        if (coeff != 0) p.m_[{i, j}] = coeff;
        return p;
    }

    /// Lifts a univariate polynomial into the x (axis = 0) or y (axis = 1) variable.
    static BiPoly lift(const UniPoly& p, int axis) {
        BiPoly out;
        const auto& c = p.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            if (axis == 0)
                out.m_[{static_cast<int>(i), 0}] = c[i];
            else
                out.m_[{0, static_cast<int>(i)}] = c[i];
        }
        return out;
    }

    bool is_zero() const { return m_.empty(); }

    bool is_constant() const {
        return m_.empty() || (m_.size() == 1 && m_.begin()->first == Key{0, 0});
    }

    const std::map<Key, Rat>& terms() const { return m_; }

    const Rat& coeff(int i, int j) const {
        static const Rat zero(0);
        auto it = m_.find({i, j});
        return it == m_.end() ? zero : it->second;
    }

    void set(int i, int j, const Rat& v) {
        if (v == 0)
            m_.erase({i, j});
        else
            m_[{i, j}] = v;
    }

    /// Total degree, or std::nullopt for the zero polynomial.
    std::optional<int> total_degree() const {
        if (m_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& [k, v] : m_) d = std::max(d, k.first + k.second);
        return d;
    }

    std::optional<int> degree_x() const {
        if (m_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& [k, v] : m_) d = std::max(d, k.first);
        return d;
    }

    std::optional<int> degree_y() const {
        if (m_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& [k, v] : m_) d = std::max(d, k.second);
        return d;
    }

    bool is_homogeneous() const {
        if (m_.empty()) return true;
        const int d = m_.begin()->first.first + m_.begin()->first.second;
        for (const auto& [k, v] : m_)
            if (k.first + k.second != d) return false;
        return true;
    }

    bool has_integer_coeffs() const {
        for (const auto& [k, v] : m_)
            if (!is_integer(v)) return false;
        return true;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly c = a;
        for (const auto& [k, v] : b.m_) {
            auto it = c.m_.find(k);
            if (it == c.m_.end()) {
                c.m_[k] = v;
            } else {
                it->second += v;
                if (it->second == 0) c.m_.erase(it);
            }
        }
        return c;
    }

    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

    BiPoly operator-() const {
        BiPoly c = *this;
        for (auto& [k, v] : c.m_) v = -v;
        return c;
    }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly c;
        for (const auto& [ka, va] : a.m_)
            for (const auto& [kb, vb] : b.m_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                auto it = c.m_.find(k);
                if (it == c.m_.end()) {
                    Rat v = va * vb;
                    if (v != 0) c.m_[k] = std::move(v);
                } else {
                    it->second += va * vb;
                    if (it->second == 0) c.m_.erase(it);
                }
            }
        return c;
    }

    friend BiPoly operator*(const Rat& s, const BiPoly& p) {
        BiPoly c;
        if (s == 0) return c;
        c = p;
        for (auto& [k, v] : c.m_) v *= s;
        return c;
    }

    friend BiPoly operator*(const BiPoly& p, const Rat& s) { return s * p; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.m_ == b.m_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly pow(unsigned e) const {
        BiPoly acc(Rat(1));
        BiPoly base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }

    Rat eval(const Rat& x0, const Rat& y0) const {
        Rat acc(0);
        for (const auto& [k, v] : m_) acc += v * pow_r(x0, k.first) * pow_r(y0, k.second);
        return acc;
    }

    /// Coefficients of y^j, each a univariate polynomial in x (ascending by j).
    std::vector<UniPoly> collect_y() const {
        int dy = degree_y().value_or(0);
        std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(dy) + 1);
        for (const auto& [k, v] : m_) {
            auto& row = rows[static_cast<std::size_t>(k.second)];
            if (static_cast<int>(row.size()) < k.first + 1)
                row.resize(static_cast<std::size_t>(k.first) + 1, Rat(0));
            row[static_cast<std::size_t>(k.first)] = v;
        }
        std::vector<UniPoly> out;
        out.reserve(rows.size());
        for (auto& row : rows) out.emplace_back(std::move(row));
        return out;
    }

    /// Partial evaluation x = x0, leaving a univariate polynomial in y.
    UniPoly eval_x(const Rat& x0) const {
        std::vector<UniPoly> rows = collect_y();
        std::vector<Rat> c;
        c.reserve(rows.size());
        for (const auto& r : rows) c.push_back(r.eval(x0));
        return UniPoly(std::move(c));
    }

    /// Substitution homomorphism x -> u, y -> v (nested Horner).
    BiPoly substitute(const BiPoly& u, const BiPoly& v) const {
        std::vector<UniPoly> rows = collect_y();
        BiPoly acc;
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
            // acc = acc * v + row(u)
            BiPoly row_at_u;
            const auto& rc = it->coeffs();
            for (auto cit = rc.rbegin(); cit != rc.rend(); ++cit)
                row_at_u = row_at_u * u + BiPoly(*cit);
            acc = acc * v + row_at_u;
        }
        return acc;
    }

    /// Substitution with univariate arguments: returns t -> (*this)(p(t), q(t)).
    UniPoly substitute_uni(const UniPoly& p, const UniPoly& q) const {
        std::vector<UniPoly> rows = collect_y();
        UniPoly acc;
        for (auto it = rows.rbegin(); it != rows.rend(); ++it)
            acc = acc * q + it->compose(p);
        return acc;
    }

private:
    std::map<Key, Rat> m_;
};

}  // namespace fibertool
