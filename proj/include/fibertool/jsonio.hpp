#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fibertool/automorph.hpp"
#include "fibertool/count.hpp"
#include "fibertool/curve.hpp"
#include "fibertool/pell.hpp"
#include "fibertool/poly_text.hpp"
#include "fibertool/reduce.hpp"

namespace fibertool {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Plane automorphisms
// ---------------------------------------------------------------------------

inline json step_to_json(const ElementaryStep& e) {
    json j;
    switch (e.kind()) {
        case StepKind::Triangular:
            j["kind"] = "triangular";
            j["lambda"] = rat_to_string(e.lambda());
            j["mu"] = rat_to_string(e.mu());
            j["s"] = print_unipoly(e.s(), 'x');
            break;
        case StepKind::Swap:
            j["kind"] = "swap";
            break;
        case StepKind::Shift:
            j["kind"] = "shift";
            j["cx"] = rat_to_string(e.cx());
            j["cy"] = rat_to_string(e.cy());
            break;
    }
    return j;
}

inline ElementaryStep step_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "triangular")
        return ElementaryStep::triangular(parse_rat(j.at("lambda").get<std::string>()),
                                          parse_rat(j.at("mu").get<std::string>()),
                                          parse_unipoly(j.at("s").get<std::string>(), 'x'));
    if (kind == "swap") return ElementaryStep::swap();
    if (kind == "shift")
        return ElementaryStep::shift(parse_rat(j.at("cx").get<std::string>()),
                                     parse_rat(j.at("cy").get<std::string>()));
    throw ParseError("unknown automorphism step kind: " + kind);
}

inline json automorphism_to_json(const PlaneAutomorphism& phi) {
    json steps = json::array();
    for (const ElementaryStep& e : phi.steps()) steps.push_back(step_to_json(e));
    return json{{"steps", std::move(steps)}};
}

inline PlaneAutomorphism automorphism_from_json(const json& j) {
    PlaneAutomorphism phi;
    for (const json& e : j.at("steps")) phi.append(step_from_json(e));
    return phi;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json param_to_json(const PolyParam& param) {
    return json{{"p", print_unipoly(param.p)}, {"q", print_unipoly(param.q)}};
}

inline json window_to_json(const CountWindow& w) {
    return json{{"B", w.B.str()},
                {"epsilon", rat_to_string(w.epsilon)},
                {"sigma", rat_to_string(w.sigma)},
                {"t_minus", rat_to_string(w.t_minus)},
                {"t_plus", rat_to_string(w.t_plus)},
                {"B0", w.b0.str()}};
}

inline json mreport_to_json(const MReport& rep) {
    json params = json::array();
    for (const Rat& t : rep.parameters) params.push_back(rat_to_string(t));
    return json{{"B", rep.B.str()},
                {"epsilon", rat_to_string(rep.epsilon)},
                {"count", rep.count()},
                {"parameters", std::move(params)},
                {"bound_value", rat_to_string(rep.bound_value)},
                {"bound_holds", rep.bound_holds}};
}

inline json points_to_json(const std::vector<LatticePoint>& pts) {
    json arr = json::array();
    for (const auto& [x, y] : pts) arr.push_back(json::array({x.str(), y.str()}));
    return arr;
}

inline json nreport_to_json(const NReport& rep) {
    json j;
    j["B"] = rep.B.str();
    j["count"] = rep.count();
    j["points"] = points_to_json(rep.points);
    json verticals = json::array();
    for (const Int& x : rep.vertical_lines) verticals.push_back(x.str());
    j["vertical_lines"] = std::move(verticals);
    j["bound_value"] = rep.bound_value ? json(rat_to_string(*rep.bound_value)) : json(nullptr);
    j["singular_budget"] = rep.singular_budget.str();
    j["walkowiak_value"] =
        rep.walkowiak_value ? json(rat_to_string(*rep.walkowiak_value)) : json(nullptr);
    j["bound_holds"] = rep.bound_holds;
    return j;
}

inline json reduction_to_json(const ReductionResult& red) {
    json trace = json::array();
    for (const auto& [dp, dq] : red.degree_trace) trace.push_back(json::array({dp, dq}));
    return json{{"automorphism", automorphism_to_json(red.phi)},
                {"final_param", param_to_json(red.final_param)},
                {"degree_trace", std::move(trace)},
                {"integral_inverse", red.integral_inverse}};
}

inline json normal_form_to_json(const std::optional<std::pair<Rat, Rat>>& nf) {
    if (!nf) return json(nullptr);
    return json::array({rat_to_string(nf->first), rat_to_string(nf->second)});
}

inline json normalization_to_json(const NormalizationResult& n) {
    json trace = json::array();
    for (const auto& [dp, dq] : n.degree_trace) trace.push_back(json::array({dp, dq}));
    return json{{"automorphism", automorphism_to_json(n.phi)},
                {"final_param", param_to_json(n.final_param)},
                {"transformed", print_bipoly(n.transformed)},
                {"normal_form", normal_form_to_json(n.normal_form)},
                {"integral_inverse", n.integral_inverse},
                {"line",
                 json{{"automorphism", automorphism_to_json(n.phi_line)},
                      {"transformed", print_bipoly(n.transformed_line)},
                      {"normal_form", normal_form_to_json(n.normal_form_line)},
                      {"integral_inverse", n.integral_inverse_line}}},
                {"degree_trace", std::move(trace)}};
}

inline json solutions_to_json(const std::vector<PellSolution>& sols) {
    json arr = json::array();
    for (const PellSolution& s : sols) arr.push_back(json::array({s.x.str(), s.y.str()}));
    return arr;
}

inline json growth_to_json(const GrowthCheck& g) {
    json grid = json::array();
    for (const Int& b : g.grid) grid.push_back(b.str());
    json counts = json::array();
    for (long long c : g.counts) counts.push_back(c);
    return json{{"grid", std::move(grid)},
                {"counts", std::move(counts)},
                {"c1", g.c1},
                {"c2", g.c2},
                {"max_residual", g.max_residual}};
}

// ---------------------------------------------------------------------------
// Curve corpus (JSON lines)
// ---------------------------------------------------------------------------

struct CorpusEntry {
    std::string name;
    CurveSpec spec;
    std::optional<PolyParam> param;
    std::vector<std::string> tags;
};

/// Parse one corpus line. Requires the parametrisation, when present, to
/// satisfy the curve equation exactly.
inline CorpusEntry corpus_entry_from_json(const json& j) {
    CorpusEntry entry{j.at("name").get<std::string>(),
                      CurveSpec(parse_bipoly(j.at("P").get<std::string>()),
                                parse_rat(j.at("k").get<std::string>())),
                      std::nullopt,
                      {}};
    if (j.contains("param_p") || j.contains("param_q")) {
        if (!j.contains("param_p") || !j.contains("param_q"))
            throw ParseError(entry.name + ": param_p and param_q must come together");
        entry.param = PolyParam{parse_unipoly(j.at("param_p").get<std::string>()),
                                parse_unipoly(j.at("param_q").get<std::string>())};
        if (!implicitize_check(entry.spec, *entry.param))
            throw ParseError(entry.name + ": parametrisation does not satisfy the curve equation");
    }
    if (j.contains("tags"))
        for (const json& t : j.at("tags")) entry.tags.push_back(t.get<std::string>());
    return entry;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path);
    std::vector<CorpusEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        try {
            out.push_back(corpus_entry_from_json(j));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace fibertool
