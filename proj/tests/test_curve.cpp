#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>

#include "fibertool/curve.hpp"
#include "fibertool/jsonio.hpp"
#include "fibertool/pell.hpp"
#include "fibertool/poly_text.hpp"

using namespace fibertool;

namespace {

CurveSpec curve(const std::string& p_text, const std::string& k_text) {
    return CurveSpec(parse_bipoly(p_text), parse_rat(k_text));
}

PolyParam param(const std::string& p_text, const std::string& q_text) {
    return PolyParam{parse_unipoly(p_text), parse_unipoly(q_text)};
}

std::vector<LatticePoint> as_points(const std::vector<PellSolution>& sols) {
    std::vector<LatticePoint> out;
    for (const PellSolution& s : sols) out.emplace_back(s.x, s.y);
    return out;
}

BiPoly form(std::initializer_list<std::tuple<int, int, int>> terms) {
    BiPoly f;
    for (const auto& [i, j, c] : terms) f.set(i, j, Rat(c));
    return f;
}

}  // namespace

TEST_CASE("fiber-by-fiber oracle") {
    SECTION("parabola graph") {
        NReport rep = bruteforce_points(curve("x - y^2", "0"), Int(16));
        std::vector<LatticePoint> expect;
        for (int n = -4; n <= 4; ++n) expect.emplace_back(Int(n) * n, Int(n));
        std::sort(expect.begin(), expect.end());
        CHECK(rep.count() == 9);
        CHECK(rep.points == expect);
        CHECK(rep.vertical_lines.empty());
        CHECK(!rep.bound_value.has_value());
        CHECK(rep.bound_holds);
    }
    SECTION("unit conic matches the group enumeration") {
        NReport rep = bruteforce_points(curve("x^2 - 2*y^2", "1"), Int(100));
        CHECK(rep.count() == 14);
        CHECK(rep.points == as_points(solutions_up_to(Int(2), Int(100))));
    }
    SECTION("empty real locus") {
        CHECK(bruteforce_points(curve("x^2 + y^2", "-1"), Int(50)).count() == 0);
    }
    SECTION("vertical component flagged and clipped") {
        NReport rep = bruteforce_points(curve("x", "5"), Int(7));
        CHECK(rep.vertical_lines == std::vector<Int>{Int(5)});
        REQUIRE(rep.count() == 15);
        for (int i = 0; i < 15; ++i) {
            CHECK(rep.points[i].first == 5);
            CHECK(rep.points[i].second == i - 7);
        }
    }
    SECTION("axis pair") {
        NReport rep = bruteforce_points(curve("x*y", "0"), Int(3));
        CHECK(rep.vertical_lines == std::vector<Int>{Int(0)});
        CHECK(rep.count() == 13);  // the fiber x = 0 plus (x, 0) for x != 0
        CHECK(std::count_if(rep.points.begin(), rep.points.end(),
                            [](const LatticePoint& p) { return p.first == 0; }) == 7);
    }
    SECTION("isolated singular point is still found") {
        NReport rep = bruteforce_points(curve("y^2 - x^3 + x^2", "0"), Int(20));
        std::vector<LatticePoint> expect{{Int(0), Int(0)},  {Int(1), Int(0)}, {Int(2), Int(-2)},
                                         {Int(2), Int(2)},  {Int(5), Int(-10)},
                                         {Int(5), Int(10)}};
        CHECK(rep.points == expect);
    }
    SECTION("worker count never changes the report") {
        NReport one = bruteforce_points(curve("x^2 - 2*y^2", "1"), Int(100), 1);
        NReport four = bruteforce_points(curve("x^2 - 2*y^2", "1"), Int(100), 4);
        CHECK(one.points == four.points);
        CHECK(one.vertical_lines == four.vertical_lines);
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(bruteforce_points(curve("x - y^2", "0"), Int(0)), Error);
        CHECK_THROWS_AS(CurveSpec(parse_bipoly("7"), Rat(0)), Error);
    }
}

TEST_CASE("lattice-window enumeration") {
    const Rat half(1, 2);
    SECTION("cubic graph") {
        NReport rep = param_points(param("t^3", "t"), Int(1000), half);
        std::vector<LatticePoint> expect;
        for (int n = -10; n <= 10; ++n) expect.emplace_back(Int(n) * n * n, Int(n));
        std::sort(expect.begin(), expect.end());
        CHECK(rep.count() == 21);
        CHECK(rep.points == expect);
        CHECK(rep.bound_holds);
    }
    SECTION("horizontal line") {
        NReport rep = param_points(param("t", "5"), Int(50), half);
        CHECK(rep.count() == 101);
        CHECK(rep.bound_holds);
        CHECK(param_points(param("t", "5"), Int(3), half).count() == 0);  // 5 leaves the box
        CHECK(param_points(param("t", "1/2"), Int(10), half).count() == 0);
    }
    SECTION("vertical line agrees with the fiber oracle") {
        NReport rep = param_points(param("5", "t"), Int(7), half);
        CHECK(rep.points == bruteforce_points(curve("x", "5"), Int(7)).points);
    }
    SECTION("half-integer window") {
        NReport rep = param_points(param("1/2*t^2 - 3/2*t + 1", "t"), Int(36), half);
        CHECK(rep.count() == 18);
        CHECK(rep.points == bruteforce_points(curve("2*x - y^2 + 3*y - 2", "0"), Int(36)).points);
        NReport threaded = param_points(param("1/2*t^2 - 3/2*t + 1", "t"), Int(36), half, 5);
        CHECK(threaded.points == rep.points);
    }
    SECTION("non-injective parametrisation deduplicates") {
        NReport rep = param_points(param("t^2", "t^4"), Int(16), half);
        std::vector<LatticePoint> expect{{Int(0), Int(0)}, {Int(1), Int(1)}, {Int(4), Int(16)}};
        CHECK(rep.points == expect);
    }
    SECTION("degenerate and under-threshold inputs") {
        CHECK_THROWS_AS(param_points(param("3", "1/2"), Int(10), half), ConstantCoordinateError);
        try {
            param_points(param("-t^2 + 9*t", "t"), Int(100), half);
            FAIL("expected BelowThresholdError");
        } catch (const BelowThresholdError& e) {
            CHECK(e.b0_text == "512");
        }
        NReport late = param_points(param("-t^2 + 9*t", "t"), Int(512), half);
        CHECK(late.count() == 46);  // integer t with t(9 - t) >= -512: [-18, 27]
        CHECK(late.points == bruteforce_points(curve("x + y^2 - 9*y", "0"), Int(512)).points);
    }
}

TEST_CASE("bound and budget arithmetic") {
    SECTION("singular point budget") {
        CHECK(singular_budget(Int(1)) == 0);
        CHECK(singular_budget(Int(2)) == 0);
        CHECK(singular_budget(Int(3)) == 1);
        CHECK(singular_budget(Int(5)) == 6);
        CHECK_THROWS_AS(singular_budget(Int(0)), Error);
    }
    SECTION("dominant-coordinate bound") {
        CHECK(theorem_bound(param("t^2", "t"), Int(25), Rat(0)) == 11);
        CHECK(theorem_bound(param("t", "t^3"), Int(27), Rat(0)) == 7);   // roles swapped
        CHECK(theorem_bound(param("t^2", "7"), Int(25), Rat(0)) == 11);  // degenerate partner
        Rat b = theorem_bound(param("1/2*t^2 - 3/2*t + 1", "t"), Int(36), Rat(1, 2));
        Rat core = (b - Rat(3, 2)) / 2;  // strip 1 + epsilon, halve: outward root of 72
        CHECK(core * core >= 72);
        CHECK(core * core <= Rat(72) * (Rat(1) + Rat(1, 100000)));
        CHECK_THROWS_AS(theorem_bound(param("3", "4"), Int(10), Rat(0)),
                        ConstantCoordinateError);
    }
    SECTION("classical baseline") {
        Rat w1 = walkowiak_bound(Int(1), Int(3));
        double expect1 = std::pow(2.0, 48) * std::pow(std::log(3.0), 5) * 3.0;
        CHECK(rat_to_double(w1) <= expect1 * (1 + 1e-6));
        CHECK(rat_to_double(w1) >= expect1 * (1 - 1e-3));
        Rat w2 = walkowiak_bound(Int(2), pow_i(Int(10), 6));
        double expect2 =
            std::pow(2.0, 48) * 256.0 * std::pow(std::log(1e6), 5) * 1000.0;
        CHECK(rat_to_double(w2) <= expect2 * (1 + 1e-6));
        CHECK(rat_to_double(w2) >= expect2 * (1 - 1e-3));
        CHECK_THROWS_AS(walkowiak_bound(Int(0), Int(10)), Error);
        CHECK_THROWS_AS(walkowiak_bound(Int(2), Int(1)), Error);
    }
}

TEST_CASE("infinity classification") {
    SECTION("projective closure of polynomial parametrisations") {
        ProjectiveParam cubic = projectivize(param("t^3", "t"));
        CHECK(cubic.degree == 3);
        CHECK(cubic.p_bar == form({{3, 0, 1}}));
        CHECK(cubic.q_bar == form({{1, 2, 1}}));
        CHECK(cubic.r_bar == form({{0, 3, 1}}));
        CHECK(classify_maillet_form(cubic) == FiberClass::LineLike);
        CHECK(projective_root_count(cubic) == 1);

        ProjectiveParam halves = projectivize(param("1/2*t^2 - 3/2*t + 1", "t"));
        CHECK(halves.r_bar == form({{0, 2, 2}}));
        CHECK(halves.p_bar == form({{2, 0, 1}, {1, 1, -3}, {0, 2, 2}}));
        CHECK(classify_maillet_form(halves) == FiberClass::LineLike);
        CHECK(projective_root_count(halves) == 1);
    }
    SECTION("real-split quadratic at infinity") {
        ProjectiveParam pell(form({{2, 0, 2}, {0, 2, 1}}), form({{1, 1, 2}}),
                             form({{2, 0, -2}, {0, 2, 1}}));
        CHECK(classify_maillet_form(pell) == FiberClass::PellLike);
        CHECK(projective_root_count(pell) == 2);

        ProjectiveParam axes(form({{2, 0, 1}}), form({{0, 2, 1}}), form({{1, 1, 1}}));
        CHECK(classify_maillet_form(axes) == FiberClass::PellLike);
        CHECK(projective_root_count(axes) == 2);

        ProjectiveParam squared(form({{4, 0, 1}}), form({{0, 4, 1}}),
                                form({{4, 0, 1}, {2, 2, -4}, {0, 4, 4}}));
        CHECK(classify_maillet_form(squared) == FiberClass::PellLike);
        CHECK(projective_root_count(squared) == 2);
    }
    SECTION("everything else") {
        ProjectiveParam definite(form({{2, 0, 1}}), form({{1, 1, 1}}),
                                 form({{2, 0, 1}, {0, 2, 1}}));
        CHECK(classify_maillet_form(definite) == FiberClass::Other);  // negative discriminant

        ProjectiveParam skew(form({{4, 0, 1}}), form({{0, 4, 1}}), form({{1, 3, 1}}));
        CHECK(classify_maillet_form(skew) == FiberClass::Other);  // t s^3 is no quadratic power

        ProjectiveParam monomial_s(form({{4, 0, 1}}), form({{0, 4, 1}}), form({{0, 4, 5}}));
        CHECK(classify_maillet_form(monomial_s) == FiberClass::LineLike);

        ProjectiveParam doubled(form({{2, 0, 1}}), form({{0, 2, 1}}),
                                form({{2, 0, 1}, {1, 1, -2}, {0, 2, 1}}));
        CHECK(classify_maillet_form(doubled) == FiberClass::Other);  // (t - s)^2, zero disc

        ProjectiveParam lopsided(form({{0, 4, 1}}), form({{4, 0, 1}, {0, 4, 1}}),
                                 form({{4, 0, 1}, {2, 2, -2}}));
        CHECK(classify_maillet_form(lopsided) == FiberClass::Other);  // t^2 (t^2 - 2 s^2)
    }
    SECTION("validation") {
        CHECK_THROWS_AS(ProjectiveParam(form({{2, 0, 1}, {0, 1, 1}}), form({{0, 2, 1}}),
                                        form({{1, 1, 1}})),
                        Error);  // not homogeneous
        CHECK_THROWS_AS(
            ProjectiveParam(form({{3, 0, 1}}), form({{0, 2, 1}}), form({{1, 1, 1}})),
            Error);  // unequal degrees
        BiPoly rational_form;
        rational_form.set(2, 0, Rat(1, 2));
        CHECK_THROWS_AS(ProjectiveParam(rational_form, form({{0, 2, 1}}), form({{1, 1, 1}})),
                        Error);
        CHECK_THROWS_AS(
            ProjectiveParam(form({{1, 1, 1}}), form({{0, 2, 1}}), form({{1, 1, 2}})),
            Error);  // all share s
        CHECK_THROWS_AS(ProjectiveParam(form({{2, 0, 1}, {1, 1, -1}}),
                                        form({{1, 1, 1}, {0, 2, -1}}),
                                        form({{2, 0, 1}, {1, 1, -2}, {0, 2, 1}})),
                        Error);  // common factor t - s
        CHECK_THROWS_AS(homogenize(UniPoly(), 3), ZeroPolynomialError);
        CHECK_THROWS_AS(homogenize(parse_unipoly("t^3"), 2), Error);
    }
}

TEST_CASE("corpus cross-validation") {
    const std::string path = std::string(FIBERTOOL_SOURCE_DIR) + "/data/curves.jsonl";
    auto corpus = load_corpus(path);
    REQUIRE(corpus.size() == 26);

    const Rat eps(1, 2);
    int with_param = 0;
    for (const CorpusEntry& entry : corpus) {
        INFO(entry.name);
        if (!entry.param) continue;
        ++with_param;
        const PolyParam& pr = *entry.param;
        CHECK(implicitize_check(entry.spec, pr));

        Int b0(1);
        if (!pr.p.is_constant()) b0 = std::max(b0, find_B0(pr.p, eps));
        if (!pr.q.is_constant()) b0 = std::max(b0, find_B0(pr.q, eps));
        Int B = std::max(Int(500), b0);

        NReport fast = param_points(pr, B, eps, 3);
        NReport oracle = bruteforce_points(entry.spec, B, 3);
        CHECK(fast.points == oracle.points);
        bool vertical =
            std::find(entry.tags.begin(), entry.tags.end(), "vertical") != entry.tags.end();
        CHECK(oracle.vertical_lines.empty() == !vertical);

        CHECK(fast.bound_holds);
        REQUIRE(fast.bound_value.has_value());
        REQUIRE(fast.walkowiak_value.has_value());
        CHECK(*fast.walkowiak_value > *fast.bound_value);

        ProjectiveParam proj = projectivize(pr);
        CHECK(classify_maillet_form(proj) == FiberClass::LineLike);
        CHECK(projective_root_count(proj) == 1);
    }
    CHECK(with_param == 22);
}
