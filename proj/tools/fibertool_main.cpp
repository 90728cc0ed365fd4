#include <CLI11.hpp>

#include "fibertool/cli.hpp"

int main(int argc, char** argv) {
    fibertool::RunConfig cfg;
    CLI::App app{"exact enumeration and reduction of integral points on parametrised plane curves"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--epsilon", cfg.epsilon_text, "window slack (positive rational)");
        sub->add_option("--workers", cfg.workers, "worker thread count");
        sub->add_option("--out", cfg.out_path, "write the JSON report to this file");
    };

    CLI::App* reduce = app.add_subcommand(
        "reduce", "straighten a polynomial parametrisation by elementary plane maps");
    reduce->add_option("--curve", cfg.curve_text, "implicit equation P(x, y)");
    reduce->add_option("--k", cfg.k_text, "level of the curve P = k");
    reduce->add_option("--param-p", cfg.param_p_text, "x coordinate p(t)")->required();
    reduce->add_option("--param-q", cfg.param_q_text, "y coordinate q(t)")->required();
    add_common(reduce);

    CLI::App* count_m = app.add_subcommand(
        "count-m", "count integral values of one polynomial coordinate up to height B");
    count_m->add_option("--poly", cfg.poly_text, "polynomial p(t)")->required();
    count_m->add_option("--B", cfg.b_text, "height bound");
    count_m->add_option("--B-grid", cfg.b_grid, "geometric grid lo:hi:xFACTOR");
    count_m->add_flag("--oracle", cfg.oracle, "cross-check against the value-by-value oracle");
    add_common(count_m);

    CLI::App* count_n = app.add_subcommand(
        "count-n", "enumerate integral points of corpus curves inside the box |x|,|y| <= B");
    count_n->add_option("--corpus", cfg.corpus_path, "JSON-lines curve corpus");
    count_n->add_option("--curve", cfg.curve_text, "single implicit equation P(x, y)");
    count_n->add_option("--k", cfg.k_text, "level of the curve P = k");
    count_n->add_option("--param-p", cfg.param_p_text, "x coordinate p(t)");
    count_n->add_option("--param-q", cfg.param_q_text, "y coordinate q(t)");
    count_n->add_option("--B", cfg.b_text, "height bound");
    count_n->add_flag("--oracle", cfg.oracle, "also run the fiber-by-fiber oracle and compare");
    add_common(count_n);

    CLI::App* pell = app.add_subcommand("pell", "solve x^2 - d y^2 = N up to height B");
    pell->add_option("--d", cfg.d_text, "positive non-square coefficient")->required();
    pell->add_option("--N", cfg.n_text, "target value (default 1)");
    pell->add_option("--B", cfg.b_text, "height bound");
    pell->add_option("--B-grid", cfg.b_grid, "geometric grid for the growth check");
    add_common(pell);

    CLI::App* classify = app.add_subcommand(
        "classify", "classify the polynomial at infinity of a projective parametrisation");
    classify->add_option("--param-p", cfg.param_p_text, "affine x coordinate p(t)");
    classify->add_option("--param-q", cfg.param_q_text, "affine y coordinate q(t)");
    classify->add_option("--p-bar", cfg.p_bar_text, "projective component in (t, s)");
    classify->add_option("--q-bar", cfg.q_bar_text, "projective component in (t, s)");
    classify->add_option("--r-bar", cfg.r_bar_text, "projective component in (t, s)");
    add_common(classify);

    CLI::App* bench = app.add_subcommand(
        "bench", "time parametrised enumeration against the fiber-by-fiber oracle");
    bench->add_option("--corpus", cfg.corpus_path, "JSON-lines curve corpus");
    bench->add_option("--B", cfg.b_text, "height bound");
    add_common(bench);

    CLI::App* fixtures =
        app.add_subcommand("fixtures", "run the frozen regression fixtures and report");
    fixtures->add_option("--corpus", cfg.corpus_path, "JSON-lines curve corpus");
    add_common(fixtures);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // parse trouble is an input error; --help stays 0
    }

    cfg.command = app.get_subcommands().front()->get_name();
    return fibertool::run(cfg);
}
