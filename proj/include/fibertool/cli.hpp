#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fibertool/jsonio.hpp"

namespace fibertool {

/// Parsed command line; every value is kept as text so that all syntax errors
/// surface through one code path (exit code 2).
struct RunConfig {
    std::string command;

    std::string poly_text;                // count-m coordinate polynomial
    std::string curve_text;               // implicit equation P
    std::string k_text = "0";             // level of the curve P = k
    std::string param_p_text;             // affine parametrisation, x coordinate
    std::string param_q_text;             // affine parametrisation, y coordinate
    std::string p_bar_text;               // projective components in (t, s)
    std::string q_bar_text;
    std::string r_bar_text;
    std::string d_text;                   // Pell coefficient
    std::string n_text = "1";             // Pell target x^2 - d y^2 = N
    std::string corpus_path = "data/curves.jsonl";
    std::string b_text = "100";
    std::string b_grid;                   // geometric grid "lo:hi:xFACTOR"
    std::string epsilon_text = "1/2";
    bool oracle = false;
    int workers = 1;
    std::string out_path;                 // empty: standard output
};

namespace cli_detail {

inline Int parse_grid_value(const std::string& text) {
    auto epos = text.find_first_of("eE");
    if (epos == std::string::npos) return parse_int(text);
    Int mantissa = parse_int(text.substr(0, epos));
    Int exponent = parse_int(text.substr(epos + 1));
    if (exponent < 0 || exponent > 64) throw ParseError("grid exponent out of range: " + text);
    return mantissa * pow_i(Int(10), static_cast<unsigned>(exponent.convert_to<int>()));
}

/// Parse "lo:hi:xFACTOR" into the geometric grid lo, lo*f, ..., (<= hi).
inline std::vector<Int> parse_grid(const std::string& text) {
    auto c1 = text.find(':');
    auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("grid must look like lo:hi:xFACTOR, got: " + text);
    Int lo = parse_grid_value(text.substr(0, c1));
    Int hi = parse_grid_value(text.substr(c1 + 1, c2 - c1 - 1));
    std::string step = text.substr(c2 + 1);
    if (step.empty() || (step[0] != 'x' && step[0] != 'X'))
        throw ParseError("grid step must be a geometric factor xN, got: " + step);
    Int factor = parse_int(step.substr(1));
    if (lo < 1 || hi < lo || factor < 2) throw ParseError("degenerate grid: " + text);
    std::vector<Int> grid;
    for (Int b = lo; b <= hi; b *= factor) grid.push_back(b);
    return grid;
}

inline Int parse_height(const std::string& text) {
    Int b = parse_grid_value(text);
    if (b < 1) throw ParseError("height bound B must be >= 1, got: " + text);
    return b;
}

inline Rat parse_epsilon(const std::string& text) {
    Rat eps = parse_rat(text);
    if (eps <= 0) throw ParseError("epsilon must be positive, got: " + text);
    return eps;
}

inline void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
}

inline double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

/// Candidate count of the window lattice that param_points scans.
inline Int lattice_candidates(const PolyParam& param, const Int& B, const Rat& epsilon) {
    bool have = false;
    Rat lo, hi;
    Int g(1);
    for (const UniPoly* u : {&param.p, &param.q}) {
        if (u->is_constant()) continue;
        CountWindow w = window(*u, B, epsilon);
        Int a = abs_i(primitive_form(*u).a.back());
        if (!have) {
            lo = w.t_minus;
            hi = w.t_plus;
            g = a;
            have = true;
        } else {
            lo = std::max(lo, w.t_minus);
            hi = std::min(hi, w.t_plus);
            g = gcd_i(g, a);
        }
    }
    if (!have) throw ConstantCoordinateError();
    Int m_lo = ceil_rat(lo * Rat(g));
    Int m_hi = floor_rat(hi * Rat(g));
    return (m_hi < m_lo) ? Int(0) : m_hi - m_lo + 1;
}

// -- subcommands ------------------------------------------------------------

inline int cmd_reduce(const RunConfig& cfg) {
    if (cfg.param_p_text.empty() || cfg.param_q_text.empty())
        throw ParseError("reduce needs --param-p and --param-q");
    PolyParam param{parse_unipoly(cfg.param_p_text), parse_unipoly(cfg.param_q_text)};
    json out;
    out["command"] = "reduce";
    if (cfg.curve_text.empty()) {
        ReductionResult red = reduce_param(param);
        out["reduction"] = reduction_to_json(red);
    } else {
        BiPoly P = parse_bipoly(cfg.curve_text);
        Rat k = parse_rat(cfg.k_text);
        NormalizationResult norm = normalize_curve(P, k, param);
        out["normalization"] = normalization_to_json(norm);
    }
    emit(out, cfg.out_path);
    return 0;
}

inline int cmd_count_m(const RunConfig& cfg) {
    if (cfg.poly_text.empty()) throw ParseError("count-m needs --poly");
    UniPoly p = parse_unipoly(cfg.poly_text);
    Rat eps = parse_epsilon(cfg.epsilon_text);
    std::vector<Int> heights = cfg.b_grid.empty()
                                   ? std::vector<Int>{parse_height(cfg.b_text)}
                                   : parse_grid(cfg.b_grid);
    json reports = json::array();
    bool ok = true;
    for (const Int& B : heights) {
        MReport rep = enumerate_M(p, B, eps);
        json entry;
        entry["window"] = window_to_json(window(p, B, eps));
        entry["report"] = mreport_to_json(rep);
        if (cfg.oracle) {
            MReport ref = oracle_M(p, B);
            bool match = rep.parameters == ref.parameters;
            entry["oracle_match"] = match;
            ok = ok && match;
        }
        ok = ok && rep.bound_holds;
        reports.push_back(std::move(entry));
    }
    json out;
    out["command"] = "count-m";
    out["poly"] = print_unipoly(p);
    out["reports"] = std::move(reports);
    out["verified"] = ok;
    emit(out, cfg.out_path);
    return ok ? 0 : 1;
}

inline json count_n_entry(const std::string& name, const CurveSpec& spec,
                          const std::optional<PolyParam>& param, const Int& B, const Rat& eps,
                          bool oracle, int workers, bool& ok) {
    json entry;
    entry["name"] = name;
    std::optional<NReport> fast, brute;
    if (param) {
        fast = param_points(*param, B, eps, workers);
        entry["param_report"] = nreport_to_json(*fast);
        ok = ok && fast->bound_holds;
    }
    if (oracle || !param) {
        brute = bruteforce_points(spec, B, workers);
        entry["oracle_report"] = nreport_to_json(*brute);
    }
    if (fast && brute) {
        bool match = fast->points == brute->points;
        entry["oracle_match"] = match;
        ok = ok && match;
    }
    return entry;
}

inline int cmd_count_n(const RunConfig& cfg) {
    Int B = parse_height(cfg.b_text);
    Rat eps = parse_epsilon(cfg.epsilon_text);
    bool ok = true;
    json curves = json::array();
    if (!cfg.curve_text.empty()) {
        CurveSpec spec(parse_bipoly(cfg.curve_text), parse_rat(cfg.k_text));
        std::optional<PolyParam> param;
        if (!cfg.param_p_text.empty() || !cfg.param_q_text.empty()) {
            if (cfg.param_p_text.empty() || cfg.param_q_text.empty())
                throw ParseError("--param-p and --param-q must come together");
            param = PolyParam{parse_unipoly(cfg.param_p_text), parse_unipoly(cfg.param_q_text)};
            if (!implicitize_check(spec, *param))
                throw ParseError("parametrisation does not satisfy the curve equation");
        }
        curves.push_back(
            count_n_entry("command-line curve", spec, param, B, eps, cfg.oracle, cfg.workers, ok));
    } else {
        for (const CorpusEntry& e : load_corpus(cfg.corpus_path))
            curves.push_back(
                count_n_entry(e.name, e.spec, e.param, B, eps, cfg.oracle, cfg.workers, ok));
    }
    json out;
    out["command"] = "count-n";
    out["B"] = B.str();
    out["epsilon"] = rat_to_string(eps);
    out["curves"] = std::move(curves);
    out["verified"] = ok;
    emit(out, cfg.out_path);
    return ok ? 0 : 1;
}

inline int cmd_pell(const RunConfig& cfg) {
    if (cfg.d_text.empty()) throw ParseError("pell needs --d");
    Int d = parse_int(cfg.d_text);
    Int N = parse_int(cfg.n_text);
    json out;
    out["command"] = "pell";
    out["d"] = d.str();
    out["N"] = N.str();
    if (!cfg.b_grid.empty()) {
        if (N != 1) throw ParseError("--B-grid growth check needs N = 1");
        GrowthCheck g = count_growth_check(d, parse_grid(cfg.b_grid));
        out["growth"] = growth_to_json(g);
    } else {
        Int B = parse_height(cfg.b_text);
        PellSolution fund = fundamental_solution(d);
        out["fundamental"] = json::array({fund.x.str(), fund.y.str()});
        out["B"] = B.str();
        std::vector<PellSolution> sols = pell_points(d, N, B);
        out["count"] = static_cast<long long>(sols.size());
        out["solutions"] = solutions_to_json(sols);
    }
    emit(out, cfg.out_path);
    return 0;
}

inline int cmd_classify(const RunConfig& cfg) {
    json out;
    out["command"] = "classify";
    std::optional<ProjectiveParam> proj;
    if (!cfg.r_bar_text.empty()) {
        if (cfg.p_bar_text.empty() || cfg.q_bar_text.empty())
            throw ParseError("classify needs --p-bar, --q-bar, --r-bar together");
        proj.emplace(parse_bipoly(cfg.p_bar_text, 't', 's'),
                     parse_bipoly(cfg.q_bar_text, 't', 's'),
                     parse_bipoly(cfg.r_bar_text, 't', 's'));
    } else {
        if (cfg.param_p_text.empty() || cfg.param_q_text.empty())
            throw ParseError("classify needs either --r-bar or --param-p/--param-q");
        proj.emplace(projectivize(
            PolyParam{parse_unipoly(cfg.param_p_text), parse_unipoly(cfg.param_q_text)}));
        out["projective"] = json{{"p_bar", print_bipoly(proj->p_bar, 't', 's')},
                                 {"q_bar", print_bipoly(proj->q_bar, 't', 's')},
                                 {"r_bar", print_bipoly(proj->r_bar, 't', 's')}};
    }
    out["degree"] = proj->degree;
    out["class"] = fiber_class_name(classify_maillet_form(*proj));
    out["projective_roots"] = projective_root_count(*proj);
    emit(out, cfg.out_path);
    return 0;
}

inline int cmd_bench(const RunConfig& cfg) {
    Int B = parse_height(cfg.b_text);
    Rat eps = parse_epsilon(cfg.epsilon_text);
    json rows = json::array();
    bool ok = true;
    for (const CorpusEntry& e : load_corpus(cfg.corpus_path)) {
        if (!e.param) continue;
        Int b0(1);
        if (!e.param->p.is_constant()) b0 = std::max(b0, find_B0(e.param->p, eps));
        if (!e.param->q.is_constant()) b0 = std::max(b0, find_B0(e.param->q, eps));
        Int height = std::max(B, b0);

        auto t0 = std::chrono::steady_clock::now();
        NReport fast = param_points(*e.param, height, eps, cfg.workers);
        double fast_ms = elapsed_ms(t0);
        auto t1 = std::chrono::steady_clock::now();
        NReport brute = bruteforce_points(e.spec, height, cfg.workers);
        double brute_ms = elapsed_ms(t1);

        bool match = fast.points == brute.points;
        ok = ok && match;
        json row;
        row["name"] = e.name;
        row["B"] = height.str();
        row["count"] = fast.count();
        row["match"] = match;
        if (match) {  // timings are published only for agreeing runs
            row["param_candidates"] = lattice_candidates(*e.param, height, eps).str();
            row["oracle_candidates"] = Int(2 * height + 1).str();
            row["param_ms"] = fast_ms;
            row["oracle_ms"] = brute_ms;
            row["speedup"] = brute_ms / std::max(fast_ms, 1e-6);
        }
        rows.push_back(std::move(row));
    }
    json out;
    out["command"] = "bench";
    out["curves"] = std::move(rows);
    out["verified"] = ok;
    emit(out, cfg.out_path);
    return ok ? 0 : 1;
}

// -- frozen fixtures --------------------------------------------------------

struct FixtureOutcome {
    std::string name;
    bool pass;
    std::string detail;
};

inline void run_fixture(std::vector<FixtureOutcome>& out, const std::string& name,
                        const std::function<void()>& body) {
    try {
        body();
        out.push_back({name, true, ""});
    } catch (const std::exception& e) {
        out.push_back({name, false, e.what()});
    }
}

#define FIBERTOOL_FIXTURE_REQUIRE(cond)                                             \
    do {                                                                            \
        if (!(cond)) throw Error(std::string("failed: ") + #cond);                  \
    } while (0)

/// The frozen regression suite: worked examples with independently derived
/// expected values. Failures are reported as data, not thrown.
inline std::vector<FixtureOutcome> run_fixtures(const std::string& corpus_path) {
    std::vector<FixtureOutcome> results;
    const Rat half(1, 2);

    run_fixture(results, "epsilon-family-count", [&] {
        MReport rep = enumerate_M(parse_unipoly("t^2 - 1"), Int(99), half);
        FIBERTOOL_FIXTURE_REQUIRE(rep.count() == 21);
        FIBERTOOL_FIXTURE_REQUIRE(rep.parameters == oracle_M(parse_unipoly("t^2 - 1"), Int(99)).parameters);
        FIBERTOOL_FIXTURE_REQUIRE(rep.bound_holds);
    });
    run_fixture(results, "epsilon-necessity", [&] {
        // without the epsilon slack the sharp family would violate the bound
        UniPoly p = parse_unipoly("t^2 - 1");
        Rat bare = bound_M(p, Int(99), Rat(0));
        Rat slack = bound_M(p, Int(99), half);
        FIBERTOOL_FIXTURE_REQUIRE(Rat(21) > bare);
        FIBERTOOL_FIXTURE_REQUIRE(Rat(21) <= slack);
    });
    run_fixture(results, "interval-polynomial-count", [&] {
        UniPoly p = parse_unipoly("1/2*t^2 - 3/2*t + 1");
        MReport rep = enumerate_M(p, Int(36), half);
        FIBERTOOL_FIXTURE_REQUIRE(rep.count() == 18);
        FIBERTOOL_FIXTURE_REQUIRE(rep.parameters == oracle_M(p, Int(36)).parameters);
    });
    run_fixture(results, "pure-power-sharpness", [&] {
        for (int d = 2; d <= 4; ++d) {
            UniPoly p = UniPoly::monomial(Rat(1), d);
            Int B = pow_i(Int(3), static_cast<unsigned>(d));
            MReport rep = enumerate_M(p, B, half);
            FIBERTOOL_FIXTURE_REQUIRE(rep.count() == 7);
            FIBERTOOL_FIXTURE_REQUIRE(bound_M(p, B, Rat(0)) == 7);
        }
    });
    run_fixture(results, "window-edges", [&] {
        FIBERTOOL_FIXTURE_REQUIRE(window(parse_unipoly("t^2"), Int(100), half).t_plus ==
                                  Rat(21, 2));
        FIBERTOOL_FIXTURE_REQUIRE(window(parse_unipoly("2*t^3"), Int(128), Rat(1, 4)).t_plus ==
                                  Rat(17, 4));
    });
    run_fixture(results, "below-threshold-guard", [&] {
        try {
            window(parse_unipoly("-t^2 + 9*t"), Int(100), half);
            throw Error("window certified below its threshold");
        } catch (const BelowThresholdError& e) {
            FIBERTOOL_FIXTURE_REQUIRE(e.b0_text == "512");
        }
    });
    run_fixture(results, "cubic-normal-form", [&] {
        NormalizationResult n = normalize_curve(parse_bipoly("x - y^3"), Rat(0),
                                                PolyParam{parse_unipoly("t^3"), parse_unipoly("t")});
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form.has_value());
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form->first == 1);
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form->second == 0);
        FIBERTOOL_FIXTURE_REQUIRE(n.integral_inverse);
        FIBERTOOL_FIXTURE_REQUIRE(n.final_param.p == UniPoly());
        FIBERTOOL_FIXTURE_REQUIRE(n.final_param.q == UniPoly::var());
    });
    run_fixture(results, "halves-normal-form", [&] {
        NormalizationResult n =
            normalize_curve(parse_bipoly("2*x - y^2 + 3"), Rat(0),
                            PolyParam{parse_unipoly("1/2*t^2 - 3/2"), parse_unipoly("t")});
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form.has_value());
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form->first == 1);
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form->second == 3);
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form_line.has_value());
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form_line->first == 1);
        FIBERTOOL_FIXTURE_REQUIRE(n.normal_form_line->second == 0);
        FIBERTOOL_FIXTURE_REQUIRE(n.integral_inverse_line);
    });
    run_fixture(results, "cubic-reduction-trace", [&] {
        ReductionResult red =
            reduce_param(PolyParam{parse_unipoly("t^3"), parse_unipoly("t")});
        std::vector<std::pair<int, int>> expect{{3, 1}, {1, 3}, {1, 0}};
        FIBERTOOL_FIXTURE_REQUIRE(red.degree_trace == expect);
        FIBERTOOL_FIXTURE_REQUIRE(red.integral_inverse);
    });
    run_fixture(results, "pell-fundamentals", [&] {
        PellSolution two = fundamental_solution(Int(2));
        FIBERTOOL_FIXTURE_REQUIRE(two.x == 3 && two.y == 2);
        PellSolution hard = fundamental_solution(Int(61));
        FIBERTOOL_FIXTURE_REQUIRE(hard.x == Int("1766319049"));
        FIBERTOOL_FIXTURE_REQUIRE(hard.y == Int("226153980"));
    });
    run_fixture(results, "pell-count-at-100", [&] {
        FIBERTOOL_FIXTURE_REQUIRE(solutions_up_to(Int(2), Int(100)).size() == 14);
    });
    run_fixture(results, "pell-growth", [&] {
        std::vector<Int> grid{Int(10), Int(100), Int(1000), Int(10000), Int(100000),
                              Int(1000000)};
        GrowthCheck g = count_growth_check(Int(2), grid);
        std::vector<long long> expect{6, 14, 18, 22, 26, 34};
        FIBERTOOL_FIXTURE_REQUIRE(g.counts == expect);
        FIBERTOOL_FIXTURE_REQUIRE(g.max_residual <= 4.0);
    });
    run_fixture(results, "classification-forms", [&] {
        FIBERTOOL_FIXTURE_REQUIRE(
            classify_maillet_form(projectivize(
                PolyParam{parse_unipoly("t^3"), parse_unipoly("t")})) == FiberClass::LineLike);
        ProjectiveParam pell(parse_bipoly("s^2 + 2*t^2", 't', 's'),
                             parse_bipoly("2*t*s", 't', 's'),
                             parse_bipoly("s^2 - 2*t^2", 't', 's'));
        FIBERTOOL_FIXTURE_REQUIRE(classify_maillet_form(pell) == FiberClass::PellLike);
        ProjectiveParam definite(parse_bipoly("t^2", 't', 's'), parse_bipoly("t*s", 't', 's'),
                                 parse_bipoly("t^2 + s^2", 't', 's'));
        FIBERTOOL_FIXTURE_REQUIRE(classify_maillet_form(definite) == FiberClass::Other);
    });
    run_fixture(results, "corpus-oracle-equivalence", [&] {
        auto corpus = load_corpus(corpus_path);
        FIBERTOOL_FIXTURE_REQUIRE(corpus.size() >= 20);
        int checked = 0;
        for (const CorpusEntry& e : corpus) {
            if (!e.param) continue;
            if (e.name != "cubic-graph" && e.name != "interval-halves" &&
                e.name != "symmetric-conic")
                continue;
            Int B = (e.name == "cubic-graph") ? Int(1000) : Int(200);
            NReport fast = param_points(*e.param, B, half);
            NReport brute = bruteforce_points(e.spec, B);
            FIBERTOOL_FIXTURE_REQUIRE(fast.points == brute.points);
            FIBERTOOL_FIXTURE_REQUIRE(fast.bound_holds);
            ++checked;
        }
        FIBERTOOL_FIXTURE_REQUIRE(checked == 3);
        NReport cubic = param_points(PolyParam{parse_unipoly("t^3"), parse_unipoly("t")},
                                     Int(1000), half);
        FIBERTOOL_FIXTURE_REQUIRE(cubic.count() == 21);
    });
    run_fixture(results, "pell-oracle-equivalence", [&] {
        NReport brute = bruteforce_points(
            CurveSpec(parse_bipoly("x^2 - 2*y^2"), Rat(1)), Int(100));
        std::vector<PellSolution> group = solutions_up_to(Int(2), Int(100));
        FIBERTOOL_FIXTURE_REQUIRE(brute.count() == static_cast<long long>(group.size()));
        for (std::size_t i = 0; i < group.size(); ++i) {
            FIBERTOOL_FIXTURE_REQUIRE(brute.points[i].first == group[i].x);
            FIBERTOOL_FIXTURE_REQUIRE(brute.points[i].second == group[i].y);
        }
    });
    return results;
}

#undef FIBERTOOL_FIXTURE_REQUIRE

inline int cmd_fixtures(const RunConfig& cfg) {
    std::vector<FixtureOutcome> results = run_fixtures(cfg.corpus_path);
    json rows = json::array();
    int passed = 0;
    for (const FixtureOutcome& r : results) {
        json row;
        row["name"] = r.name;
        row["pass"] = r.pass;
        if (!r.pass) row["detail"] = r.detail;
        rows.push_back(std::move(row));
        if (r.pass) ++passed;
    }
    json out;
    out["command"] = "fixtures";
    out["total"] = static_cast<int>(results.size());
    out["passed"] = passed;
    out["fixtures"] = std::move(rows);
    emit(out, cfg.out_path);
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace cli_detail

/// Dispatch a parsed command line. Exit codes: 0 success, 1 verification
/// mismatch (oracle disagreement, bound violation, fixture failure), 2 input
/// or precondition error.
inline int run(const RunConfig& cfg) {
    try {
        if (cfg.workers < 1) throw ParseError("worker count must be >= 1");
        if (cfg.command == "reduce") return cli_detail::cmd_reduce(cfg);
        if (cfg.command == "count-m") return cli_detail::cmd_count_m(cfg);
        if (cfg.command == "count-n") return cli_detail::cmd_count_n(cfg);
        if (cfg.command == "pell") return cli_detail::cmd_pell(cfg);
        if (cfg.command == "classify") return cli_detail::cmd_classify(cfg);
        if (cfg.command == "bench") return cli_detail::cmd_bench(cfg);
        if (cfg.command == "fixtures") return cli_detail::cmd_fixtures(cfg);
        throw ParseError("unknown command: " + cfg.command);
    } catch (const BelowThresholdError& e) {
        json err;
        err["error"] = e.what();
        err["B0"] = e.b0_text;
        std::cout << err.dump(2) << "\n";
        std::cerr << "fibertool: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        json err;
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        std::cerr << "fibertool: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace fibertool
