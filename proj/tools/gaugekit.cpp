// gaugekit command-line front end: gauge evaluation, unitization, quotients,
// the E_{1,1} counterexample table, map checks, and the verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaugekit/json_io.hpp"
#include "gaugekit/quotient.hpp"
#include "gaugekit/unitization.hpp"
#include "gaugekit/verify.hpp"

using namespace gaugekit;
using ojson = nlohmann::ordered_json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 7;
    double tol = 1e-5;
    int max_iter = 20000;
    int max_level = 3;
    int trials = 0;
    std::string report = "text";
    std::string out;

    SolverConfig solver() const {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        return cfg;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) return;
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw ValidationError("cannot write to '" + g.out + "'");
    out << text;
}

std::string base_dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

Vec parse_coords(const std::string& text, int dim) {
    ojson j = ojson::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("element: not valid JSON");
    if (!j.contains("coords") || !j["coords"].is_array() || int(j["coords"].size()) != dim)
        throw ValidationError("element.coords: expected a vector of length " +
                              std::to_string(dim));
    Vec v;
    for (const auto& x : j["coords"]) {
        if (!x.is_number()) throw ValidationError("element.coords: expected numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

void print_solve_summary(const SolveReport& r, bool exact) {
    if (exact) {
        std::printf("# exact closed-form path\n");
    } else {
        std::printf("# solver: iterations=%d converged=%s infeasibility=%.3e\n", r.iterations,
                    r.converged ? "true" : "false", r.infeasibility);
    }
}

int cmd_eval_gauge(const GlobalOpts& g, const std::string& space_file,
                   const std::string& element_file, int level) {
    Space sp = parse_space(read_file(space_file));
    if (sp.is_poly()) {
        Vec x = parse_coords(read_file(element_file), sp.dim_sa());
        double v = d_gauge_exact(sp.poly().norm, sp.poly().cone, x);
        std::printf("%.10g\n# exact LP path\n", v);
        write_output(g, ojson{{"value", v}, {"exact", true}}.dump(2) + "\n");
        return 0;
    }
    HermitianMatrix a = parse_hermitian(read_file(element_file));
    OrderGaugeValue val = order_gauge(sp.op(), level, a, g.solver());
    std::printf("%.10g\n", val.value);
    print_solve_summary(val.report, val.exact);
    ojson j{{"value", val.value}, {"exact", val.exact}};
    if (!val.exact) j["report"] = ojson::parse(to_json(val.report));
    write_output(g, j.dump(2) + "\n");
    if (!val.exact && !val.report.converged)
        throw ConvergenceError("gauge evaluation did not converge");
    return 0;
}

int cmd_eval_norm(const GlobalOpts& g, const std::string& space_file,
                  const std::string& element_file, int level) {
    Space sp = parse_space(read_file(space_file));
    double v;
    if (sp.is_poly()) {
        Vec x = parse_coords(read_file(element_file), sp.dim_sa());
        Vec nx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) nx[i] = -x[i];
        v = std::max(d_gauge_exact(sp.poly().norm, sp.poly().cone, x),
                     d_gauge_exact(sp.poly().norm, sp.poly().cone, nx));
    } else {
        HermitianMatrix a = parse_hermitian(read_file(element_file));
        v = level_norm(sp.level(level), a, g.solver());
    }
    std::printf("%.10g\n", v);
    write_output(g, ojson{{"value", v}}.dump(2) + "\n");
    return 0;
}

int cmd_eval_rectnorm(const GlobalOpts& g, const std::string& space_file,
                      const std::string& element_file, int rows, int cols) {
    Space sp = parse_space(read_file(space_file));
    if (sp.is_poly()) throw ValidationError("rectnorm: requires a matrix space");
    ojson j = ojson::parse(read_file(element_file), nullptr, false);
    if (j.is_discarded() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ValidationError("element: expected {\"rows\",\"cols\",\"entries\"}");
    int r = j["rows"].get<int>(), c = j["cols"].get<int>();
    const auto& e = j["entries"];
    if (!e.is_array() || int(e.size()) != r)
        throw ValidationError("element.entries: expected " + std::to_string(r) + " rows");
    std::vector<Complex> entries;
    for (int i = 0; i < r; ++i) {
        if (!e[std::size_t(i)].is_array() || int(e[std::size_t(i)].size()) != c)
            throw ValidationError("element.entries[" + std::to_string(i) + "]: expected " +
                                  std::to_string(c) + " entries");
        for (int k = 0; k < c; ++k) {
            const auto& z = e[std::size_t(i)][std::size_t(k)];
            if (!z.is_array() || z.size() != 2)
                throw ValidationError("element.entries[" + std::to_string(i) + "][" +
                                      std::to_string(k) + "]: expected [re, im]");
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    RectBlockMatrix b;
    b.block_rows = rows;
    b.block_cols = cols;
    b.realized = RectMatrix(r, c, std::move(entries));
    double v = rect_norm(sp.op(), b, g.solver());
    std::printf("%.10g\n", v);
    write_output(g, ojson{{"value", v}}.dump(2) + "\n");
    return 0;
}

int cmd_unitize_eval(const GlobalOpts& g, const std::string& space_file, int level,
                     const std::string& element_file, const std::string& scalar_file) {
    Space sp = parse_space(read_file(space_file));
    if (sp.is_poly()) throw ValidationError("unitize: requires a matrix space");
    HermitianMatrix a = parse_hermitian(read_file(element_file));
    HermitianMatrix x = parse_hermitian(read_file(scalar_file));
    double v = u_n(sp.op(), level, a, x, g.solver());
    std::printf("%.10g\n", v);
    write_output(g, ojson{{"value", v}}.dump(2) + "\n");
    return 0;
}

int cmd_quotient(const GlobalOpts& g, const std::string& space_file, const std::string& ideal_file,
                 int level, const std::string& element_file) {
    Space sp = parse_space(read_file(space_file));
    if (sp.is_poly()) throw ValidationError("quotient: requires a matrix space (polyhedral "
                                            "quotients are exposed through the library API)");
    IdealSpec ideal = parse_ideal(read_file(ideal_file));
    HermitianMatrix x = parse_hermitian(read_file(element_file));
    auto q = quotient_gauge(sp.op(), ideal, level, x, g.solver());
    std::printf("%.10g\n", q.value);
    print_solve_summary(q.report, q.exact_parent_gauge);
    write_output(g, to_json(q) + "\n");
    if (!q.exact_parent_gauge && !q.report.converged)
        throw ConvergenceError("quotient gauge evaluation did not converge");
    return 0;
}

int cmd_counterexample(const GlobalOpts& g, int n_max) {
    if (n_max < 1) throw ValidationError("counterexample: --n-max must be >= 1");
    std::ostringstream csv;
    csv << "n,value\n";
    for (int n = 1; n <= n_max; ++n) {
        char line[64];
        std::snprintf(line, sizeof(line), "%d,%.9f\n", n, e11_sequence_value(n, Complex(1)));
        csv << line;
    }
    auto herm2 = OperatorSpace::full(2);
    HermitianMatrix e11(2);
    e11.at(0, 0) = 1.0;
    auto verdict = is_gauge_ideal(herm2, IdealSpec{{e11}}, 8, g.seed, g.solver());
    csv << "verdict," << (verdict.ideal_witnessed ? "ideal-witnessed" : "NOT-an-ideal") << "\n";
    std::fputs(csv.str().c_str(), stdout);
    write_output(g, csv.str());
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    VerifyOptions opts;
    opts.seed = g.seed;
    opts.trials = g.trials;
    opts.max_level = g.max_level;
    opts.solver = g.solver();
    std::vector<SuiteResult> results;
    if (suite == "all") results = run_all(opts);
    else results.push_back(run_suite(suite, opts));

    std::string json_text = suite_results_to_json(results) + "\n";
    if (g.report == "json") std::fputs(json_text.c_str(), stdout);
    else std::fputs(suite_results_to_text(results).c_str(), stdout);
    write_output(g, json_text);
    for (const auto& r : results)
        if (!r.all_passed()) return 1;
    return 0;
}

int cmd_map_gauge_norm(const GlobalOpts& g, const std::string& map_file) {
    LinearMap phi = parse_linear_map(read_file(map_file), base_dir_of(map_file));
    auto est = gauge_norm(phi, g.max_level, g.trials > 0 ? g.trials : 20, g.seed, g.solver());
    if (est.unbounded) std::printf("unbounded\n");
    else std::printf("%.10g\n# lower bound%s, witness level %d\n", est.lower_bound,
                     est.exact ? " (exact)" : "", est.witness_level);
    ojson j{{"lower_bound", est.lower_bound},
            {"unbounded", est.unbounded},
            {"exact", est.exact},
            {"levels_checked", est.levels_checked},
            {"witness_level", est.witness_level},
            {"witness", est.witness}};
    write_output(g, j.dump(2) + "\n");
    return 0;
}

int cmd_map_cpcc(const GlobalOpts& g, const std::string& map_file) {
    LinearMap phi = parse_linear_map(read_file(map_file), base_dir_of(map_file));
    auto rep = check_cpcc(phi, g.max_level, g.trials > 0 ? g.trials : 12, g.seed, g.solver());
    bool pass = rep.positivity_worst <= 1e-5 && rep.contraction_worst <= 1e-5;
    std::printf("%s\n# positivity_worst=%.3e contraction_worst=%.3e levels=%d\n",
                pass ? "cpcc-consistent" : "violation-found", rep.positivity_worst,
                rep.contraction_worst, rep.levels_checked);
    ojson j{{"positivity_worst", rep.positivity_worst},
            {"contraction_worst", rep.contraction_worst},
            {"levels_checked", rep.levels_checked},
            {"pass", pass}};
    if (rep.positivity_witness) {
        j["witness_level"] = rep.positivity_witness_level;
        j["witness"] = ojson::parse(to_json(*rep.positivity_witness));
    }
    write_output(g, j.dump(2) + "\n");
    return 0;
}

int cmd_map_extension(const GlobalOpts& g, const std::string& space_file,
                      const std::string& ideal_file) {
    Space sp = parse_space(read_file(space_file));
    if (sp.is_poly()) throw ValidationError("extension-condition: requires a matrix space");
    IdealSpec s = parse_ideal(read_file(ideal_file));
    auto rep = extension_condition(sp.op(), s.basis, g.trials > 0 ? g.trials : 10, g.max_level,
                                   g.seed, g.solver());
    std::printf("%s\n# max_gap=%.6g min_gap=%.6g levels<=%d probes=%d\n",
                rep.extension_friendly ? "extension-friendly" : "not-extension-friendly",
                rep.max_gap, rep.min_gap, rep.max_level, rep.probes);
    ojson j{{"extension_friendly", rep.extension_friendly},
            {"max_gap", rep.max_gap},
            {"min_gap", rep.min_gap},
            {"max_level", rep.max_level},
            {"probes", rep.probes}};
    write_output(g, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaugekit: order gauges, unitizations and quotients on self-adjoint matrix "
                 "spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "root seed for all sampling");
    app.add_option("--tol", g.tol, "solver tolerance");
    app.add_option("--max-iter", g.max_iter, "solver iteration cap");
    app.add_option("--max-level", g.max_level, "matrix level cap for 'completely' checks");
    app.add_option("--trials", g.trials, "sample count override (0 = per-case defaults)");
    app.add_option("--report", g.report, "report style: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", g.out, "write the JSON/CSV artifact to this path");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate gauges and norms");
    eval->fallthrough();
    eval->require_subcommand(1);
    std::string space_file, element_file, scalar_file, ideal_file, map_file;
    int level = 1, block_rows = 1, block_cols = 1, n_max = 10;

    auto* eg = eval->add_subcommand("gauge", "order gauge d at a level");
    eg->fallthrough();
    eg->add_option("--space", space_file)->required();
    eg->add_option("--element", element_file)->required();
    eg->add_option("--level", level);
    auto* en = eval->add_subcommand("norm", "induced norm at a level");
    en->fallthrough();
    en->add_option("--space", space_file)->required();
    en->add_option("--element", element_file)->required();
    en->add_option("--level", level);
    auto* er = eval->add_subcommand("rectnorm", "rectangular norm via the self-adjoint embedding");
    er->fallthrough();
    er->add_option("--space", space_file)->required();
    er->add_option("--element", element_file)->required();
    er->add_option("--block-rows", block_rows);
    er->add_option("--block-cols", block_cols);
    auto* eu = eval->add_subcommand("unitize", "unitization gauge u_n(A, X)");
    eu->fallthrough();
    eu->add_option("--space", space_file)->required();
    eu->add_option("--level", level);
    eu->add_option("--element", element_file)->required();
    eu->add_option("--scalar", scalar_file)->required();
    auto* eq = eval->add_subcommand("quotient", "quotient gauge q_n(x + S)");
    eq->fallthrough();
    eq->add_option("--space", space_file)->required();
    eq->add_option("--ideal", ideal_file)->required();
    eq->add_option("--element", element_file)->required();
    eq->add_option("--level", level);

    // unitize eval (alias surface)
    auto* unit = app.add_subcommand("unitize", "unitization gauges");
    unit->fallthrough();
    auto* ue = unit->add_subcommand("eval", "evaluate u_n(A, X)");
    ue->fallthrough();
    ue->add_option("--space", space_file)->required();
    ue->add_option("--level", level);
    ue->add_option("--element", element_file)->required();
    ue->add_option("--scalar", scalar_file)->required();

    // quotient (top level)
    auto* quot = app.add_subcommand("quotient", "quotient gauge q_n(x + S)");
    quot->fallthrough();
    quot->add_option("--space", space_file)->required();
    quot->add_option("--ideal", ideal_file)->required();
    quot->add_option("--element", element_file)->required();
    quot->add_option("--level", level);

    // counterexample
    auto* ce = app.add_subcommand("counterexample", "counterexample artifacts");
    ce->fallthrough();
    auto* ce11 = ce->add_subcommand("e11", "the matrix-unit order ideal that is not a gauge ideal");
    ce11->fallthrough();
    ce11->add_option("--n-max", n_max);

    // verify
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->fallthrough();
    std::string suite;
    ver->add_option("suite", suite, "section2|mos-axioms|unitization|maps|quotients|all")
        ->required()
        ->check(CLI::IsMember({"section2", "mos-axioms", "unitization", "maps", "quotients",
                               "all"}));

    // map checks
    auto* mp = app.add_subcommand("map", "linear map checks");
    mp->fallthrough();
    mp->require_subcommand(1);
    auto* mg = mp->add_subcommand("gauge-norm", "certified lower bound on the gauge norm");
    mg->fallthrough();
    mg->add_option("--map", map_file)->required();
    auto* mc = mp->add_subcommand("cpcc", "complete positivity / complete contractivity sampling");
    mc->fallthrough();
    mc->add_option("--map", map_file)->required();
    auto* me = mp->add_subcommand("extension-condition", "restriction-gauge extension criterion");
    me->fallthrough();
    me->add_option("--space", space_file)->required();
    me->add_option("--ideal", ideal_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eg->parsed()) return cmd_eval_gauge(g, space_file, element_file, level);
        if (en->parsed()) return cmd_eval_norm(g, space_file, element_file, level);
        if (er->parsed())
            return cmd_eval_rectnorm(g, space_file, element_file, block_rows, block_cols);
        if (eu->parsed() || ue->parsed())
            return cmd_unitize_eval(g, space_file, level, element_file, scalar_file);
        if (eq->parsed() || quot->parsed())
            return cmd_quotient(g, space_file, ideal_file, level, element_file);
        if (ce11->parsed()) return cmd_counterexample(g, n_max);
        if (ver->parsed()) return cmd_verify(g, suite);
        if (mg->parsed()) return cmd_map_gauge_norm(g, map_file);
        if (mc->parsed()) return cmd_map_cpcc(g, map_file);
        if (me->parsed()) return cmd_map_extension(g, space_file, ideal_file);
        std::fprintf(stderr, "error: no subcommand selected\n");
        return 2;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return 3;
    } catch (const DegenerateError& e) {
        std::fprintf(stderr, "degenerate LP: %s\n", e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
