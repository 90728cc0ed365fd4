#include <catch2/catch_amalgamated.hpp>

#include "fibertool/cli.hpp"
#include "fibertool/jsonio.hpp"
#include "fibertool/poly_text.hpp"

using namespace fibertool;

TEST_CASE("automorphism serialization round trip") {
    PlaneAutomorphism phi;
    phi.append(ElementaryStep::triangular(Rat(2), Rat(1, 2), parse_unipoly("1/2*t^3 - t", 't')));
    phi.append(ElementaryStep::swap());
    phi.append(ElementaryStep::shift(Rat(1), Rat(-2)));

    json j = automorphism_to_json(phi);
    REQUIRE(j.at("steps").size() == 3);
    CHECK(j["steps"][0]["kind"] == "triangular");
    CHECK(j["steps"][0]["s"] == "1/2*x^3 - x");
    CHECK(j["steps"][1]["kind"] == "swap");
    CHECK(j["steps"][2]["cx"] == "1");

    PlaneAutomorphism back = automorphism_from_json(j);
    REQUIRE(back.steps().size() == 3);
    for (const Rat& x : {Rat(0), Rat(3), Rat(-5, 2)}) {
        auto a = phi.apply_point(x, x + 1);
        auto b = back.apply_point(x, x + 1);
        CHECK(a == b);
    }
    CHECK_THROWS_AS(step_from_json(json{{"kind", "rotate"}}), ParseError);
}

TEST_CASE("report serialization") {
    NReport rep = bruteforce_points(CurveSpec(parse_bipoly("x - y^2"), Rat(0)), Int(9));
    json j = nreport_to_json(rep);
    CHECK(j["B"] == "9");
    CHECK(j["count"] == 7);
    CHECK(j["points"].size() == 7);
    CHECK(j["points"][0] == json::array({"0", "0"}));
    CHECK(j["bound_value"].is_null());
    CHECK(j["bound_holds"] == true);

    MReport m = enumerate_M(parse_unipoly("t^2"), Int(9), Rat(1, 2));
    json jm = mreport_to_json(m);
    CHECK(jm["count"] == 7);
    CHECK(jm["parameters"][0] == "-3");
}

TEST_CASE("corpus parsing rejects bad entries") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), Error);
    json good{{"name", "demo"}, {"P", "x - y^2"}, {"k", "0"},
              {"param_p", "t^2"}, {"param_q", "t"}};
    CorpusEntry entry = corpus_entry_from_json(good);
    CHECK(entry.name == "demo");
    REQUIRE(entry.param.has_value());

    json mismatched = good;
    mismatched["param_p"] = "t^3";
    CHECK_THROWS_AS(corpus_entry_from_json(mismatched), ParseError);

    json lonely{{"name", "demo"}, {"P", "x"}, {"k", "0"}, {"param_p", "t"}};
    CHECK_THROWS_AS(corpus_entry_from_json(lonely), ParseError);
}

TEST_CASE("geometric grid parsing") {
    using cli_detail::parse_grid;
    auto grid = parse_grid("10:1e6:x10");
    REQUIRE(grid.size() == 6);
    CHECK(grid.front() == 10);
    CHECK(grid.back() == 1000000);
    CHECK(parse_grid("1:100:x3") == std::vector<Int>{Int(1), Int(3), Int(9), Int(27), Int(81)});
    CHECK_THROWS_AS(parse_grid("10:100"), ParseError);
    CHECK_THROWS_AS(parse_grid("10:100:5"), ParseError);
    CHECK_THROWS_AS(parse_grid("100:10:x10"), ParseError);
    CHECK_THROWS_AS(parse_grid("10:100:x1"), ParseError);
}

TEST_CASE("fixture suite is green") {
    auto results = cli_detail::run_fixtures(std::string(FIBERTOOL_SOURCE_DIR) +
                                            "/data/curves.jsonl");
    CHECK(results.size() >= 12);
    for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.pass);
    }
}
