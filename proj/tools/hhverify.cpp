// hhverify: command-line front end for the verification toolkit.
#include "hhverify/bounds.hpp"
#include "hhverify/convexity.hpp"
#include "hhverify/harness.hpp"
#include "hhverify/means.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

using namespace hhverify;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolations = 2;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ModelArgs {
    std::string spec;
    std::string f;
    std::string domain;
};

void add_model_options(CLI::App* app, ModelArgs& m) {
    app->add_option("--model", m.spec, "Built-in model, e.g. exp:lambda=1, log:c=1, power:s=0.5, affine:slope=1");
    app->add_option("--f", m.f, "Expression for f(x), e.g. \"2*x^0.5\" (needs --domain)");
    app->add_option("--domain", m.domain, "Domain lo,hi (required with --f, optional with --model)");
}

Range parse_pair(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            const double v = std::stod(text);
            return {v, v};
        }
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError(what, "expected lo,hi but got '" + text + "'");
    }
}

ModelSpec model_spec(const ModelArgs& m) {
    ModelSpec spec;
    if (!m.f.empty()) {
        if (m.domain.empty()) throw CLI::ValidationError("--domain", "required with --f");
        spec.kind = ModelKind::Expr;
        spec.f = m.f;
        spec.id = "expr(" + m.f + ")";
    } else if (!m.spec.empty()) {
        spec = parse_model_spec(m.spec);
    } else {
        throw CLI::ValidationError("--model", "give a built-in --model or an expression via --f");
    }
    if (!m.domain.empty()) {
        const Range r = parse_pair(m.domain, "--domain");
        spec.domain = Interval{r.lo, r.hi};
    }
    return spec;
}

ReportFormat parse_format(const std::string& f) { return f == "json" ? ReportFormat::Json : ReportFormat::Csv; }

void print_witnesses(const std::vector<Witness>& ws, std::size_t limit) {
    for (std::size_t i = 0; i < ws.size() && i < limit; ++i)
        std::printf("  witness x=%.17g y=%.17g t=%.17g lhs=%.17g rhs=%.17g\n", ws[i].x, ws[i].y, ws[i].t, ws[i].lhs,
                    ws[i].rhs);
    if (ws.size() > limit) std::printf("  ... %zu more\n", ws.size() - limit);
}

// ---------------------------------------------------------------------------

struct CheckClassArgs {
    ModelArgs model;
    std::string klass = "hypotheses";
    std::string interval;
    double s = 1.0, q = 1.0;
    int grid = 33;
    double slack = 1e-9;
    std::size_t max_witnesses = 5;
};

int run_check_class(const CheckClassArgs& args) {
    const FunctionModel m = build_model(model_spec(args.model));
    Interval iv = m.domain();
    if (!args.interval.empty()) {
        const Range r = parse_pair(args.interval, "--interval");
        iv = {r.lo, r.hi};
    }
    ClassCheckConfig cfg;
    cfg.grid_points = args.grid;
    cfg.slack = args.slack;
    cfg.s = args.s;
    cfg.q = args.q;

    if (args.klass == "hypotheses") {
        const HypothesisReport rep = theorem_hypotheses(m, iv.lo, iv.hi, args.s, args.q, cfg);
        std::printf("model %s on [%.17g, %.17g], s=%g, q=%g\n", m.name().c_str(), iv.lo, iv.hi, args.s, args.q);
        std::printf("class (|f'|^q s-geometrically convex): %s\n", rep.class_ok ? "true" : "false");
        print_witnesses(rep.class_witnesses, args.max_witnesses);
        std::printf("|f'| decreasing: %s\n", rep.monotone_decreasing_ok ? "true" : "false");
        print_witnesses(rep.monotone_witnesses, args.max_witnesses);
        std::printf("|f'(a)| <= 1: %s (|f'(a)| = %.17g)\n", rep.fprime_a_le_1 ? "true" : "false", rep.fprime_a_abs);
        if (!rep.note.empty()) std::printf("note: %s\n", rep.note.c_str());
        return rep.all_ok() ? kExitOk : kExitViolations;
    }

    const double q = args.q;
    RealFn g = [&m, q](double x) { return std::pow(std::fabs(m.fprime(x)), q); };
    ClassCheck c;
    if (args.klass == "convex")
        c = is_convex(g, iv, cfg);
    else if (args.klass == "s-convex")
        c = is_s_convex(g, iv, args.s, cfg);
    else if (args.klass == "geometric")
        c = is_geometrically_convex(g, iv, cfg);
    else if (args.klass == "s-geometric")
        c = is_s_geometrically_convex(g, iv, args.s, cfg);
    else if (args.klass == "decreasing")
        c = is_monotone_decreasing(g, iv, cfg);
    else
        throw CLI::ValidationError("--class", "unknown class '" + args.klass + "'");
    std::printf("|f'|^%g of %s on [%.17g, %.17g] %s: %s (%zu instances checked)\n", q, m.name().c_str(), iv.lo, iv.hi,
                args.klass.c_str(), c.ok ? "true" : "false", c.checked);
    print_witnesses(c.witnesses, args.max_witnesses);
    return c.ok ? kExitOk : kExitViolations;
}

// ---------------------------------------------------------------------------

struct EvalBoundArgs {
    ModelArgs model;
    std::string theorem = "eq10";
    double a = kNaN, b = kNaN, s = 1.0, q = 2.0;
    int grid = 33;
    std::string out;
    std::string format = "csv";
};

int run_eval_bound(const EvalBoundArgs& args) {
    const Theorem t = theorem_from_string(args.theorem);
    EvalSettings settings;
    settings.grid_points = args.grid;
    BoundRecord r;
    if (t == Theorem::Prop41 || t == Theorem::Prop32 || t == Theorem::Prop33) {
        r = evaluate_proposition(t, args.a, args.b, args.s, args.q, settings);
    } else {
        const ModelSpec spec = model_spec(args.model);
        const FunctionModel m = build_model(spec);
        const double a = std::isnan(args.a) ? m.domain().lo : args.a;
        const double b = std::isnan(args.b) ? m.domain().hi : args.b;
        r = evaluate_record(m, spec.id, t, a, b, args.s, args.q, settings);
    }
    emit_report({r}, parse_format(args.format), args.out);
    return r.verdict == Verdict::Violation ? kExitViolations : kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<double> quad_tol, slack, identity_tol;
    std::optional<int> grid_points, lemma_pairs;
    bool quiet = false;
};

int run_verify(const VerifyArgs& args) {
    SweepConfig cfg = load_config(args.config);
    if (args.seed) cfg.seed = *args.seed;
    if (args.quad_tol) cfg.tolerances.quad_tol = *args.quad_tol;
    if (args.slack) cfg.tolerances.slack = *args.slack;
    if (args.identity_tol) cfg.tolerances.identity_tol = *args.identity_tol;
    if (args.grid_points) cfg.grid_points = *args.grid_points;
    if (args.lemma_pairs) cfg.lemma_pairs = *args.lemma_pairs;
    cfg.validate();

    const SweepResult res = run_sweep(cfg);
    emit_report(res.records, parse_format(args.format), args.out);
    if (!args.quiet) {
        // Keep stdout clean for the report when it goes there.
        std::FILE* sink = args.out.empty() || args.out == "-" ? stderr : stdout;
        std::fprintf(sink, "%zu records\n%s", res.records.size(), format_summary(res.summary).c_str());
    }
    return res.summary.violations() ? kExitViolations : kExitOk;
}

// ---------------------------------------------------------------------------

struct TightnessArgs {
    ModelArgs model;
    std::string theorem = "eq10";
    std::string a, b, s = "1", q = "2";
    int coarse = 5;
    int max_evals = 4000;
    bool allow_outside = false;
};

int run_tightness(const TightnessArgs& args) {
    const Theorem t = theorem_from_string(args.theorem);
    const ModelSpec spec = model_spec(args.model);
    const FunctionModel m = build_model(spec);
    TightnessBox box;
    box.a = args.a.empty() ? Range{m.domain().lo, m.domain().hi} : parse_pair(args.a, "--a");
    box.b = args.b.empty() ? Range{m.domain().lo, m.domain().hi} : parse_pair(args.b, "--b");
    box.s = parse_pair(args.s, "--s");
    box.q = parse_pair(args.q, "--q");
    TightnessOptions opts;
    opts.coarse_points = args.coarse;
    opts.max_evaluations = args.max_evals;
    opts.require_hypotheses = !args.allow_outside;

    const TightnessResult r = optimize_tightness(t, spec, box, opts);
    std::printf("theorem %s, model %s\n", to_string(t), m.name().c_str());
    std::printf("max ratio      %.17g\n", r.max_ratio);
    std::printf("best grid      %.17g\n", r.best_grid_ratio);
    std::printf("argmax         a=%.17g b=%.17g s=%.17g q=%.17g\n", r.a, r.b, r.s, r.q);
    std::printf("evaluations    %zu\n", r.trace_length);
    if (r.violation) {
        std::printf("VIOLATION found:\n");
        emit_report({*r.violating_record}, ReportFormat::Csv, "-");
        return kExitViolations;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct MeansArgs {
    double a = kNaN, b = kNaN;
    std::optional<double> p, s, q;
};

int run_means(const MeansArgs& args) {
    std::printf("A(a,b)   = %.17g\n", mean_A(args.a, args.b));
    std::printf("L(a,b)   = %.17g\n", mean_L(args.a, args.b));
    if (args.p) std::printf("L_p(a,b) = %.17g  (p=%g)\n", mean_Lp(args.a, args.b, *args.p), *args.p);
    if (!args.s) return kExitOk;

    const double s = *args.s;
    std::printf("prop lhs = %.17g  (s=%g)\n", prop_lhs(args.a, args.b, s), s);
    auto show = [](const char* name, const IdentityCheck& c) {
        std::printf("%-4s %-10s dev=%.3e  (%.17g vs %.17g)\n", name, to_string(c.status), c.deviation, c.lhs, c.rhs);
    };
    show("aa", identity_aa_check(args.a, args.b, s));
    show("bb", identity_bb_check(args.a, args.b, s));
    if (args.q) {
        const double q = *args.q;
        if (q > 1.0) show("cc", identity_cc_check(args.a, args.b, s, q));
        show("dd", check_U(args.a, args.b, s, q));
        show("ee", check_V(args.a, args.b, s, q));
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of Hermite-Hadamard type bounds for s-geometrically convex functions"};
    app.require_subcommand(1);

    CheckClassArgs cc;
    auto* c1 = app.add_subcommand("check-class", "Grid-check a convexity class or the theorem hypotheses for |f'|^q");
    add_model_options(c1, cc.model);
    c1->add_option("--class", cc.klass, "hypotheses|convex|s-convex|geometric|s-geometric|decreasing")
        ->capture_default_str();
    c1->add_option("--interval", cc.interval, "Sub-interval a,b to check (default: model domain)");
    c1->add_option("--s", cc.s, "s in (0,1]")->capture_default_str();
    c1->add_option("--q", cc.q, "Exponent applied to |f'| (>= 1)")->capture_default_str();
    c1->add_option("--grid", cc.grid, "Grid points per axis")->capture_default_str();
    c1->add_option("--slack", cc.slack, "Absolute slack")->capture_default_str();
    c1->add_option("--max-witnesses", cc.max_witnesses, "Witnesses to print")->capture_default_str();

    EvalBoundArgs eb;
    auto* c2 = app.add_subcommand("eval-bound", "Evaluate one theorem instance and print its record");
    add_model_options(c2, eb.model);
    c2->add_option("--theorem", eb.theorem, "eq8|eq9|eq10|eq11|eq111|prop41|prop32|prop33")->capture_default_str();
    c2->add_option("--a", eb.a, "Left endpoint (default: domain lo)");
    c2->add_option("--b", eb.b, "Right endpoint (default: domain hi)");
    c2->add_option("--s", eb.s, "s in (0,1]")->capture_default_str();
    c2->add_option("--q", eb.q, "q (eq9 derives p = q/(q-1))")->capture_default_str();
    c2->add_option("--grid", eb.grid, "Hypothesis grid points per axis")->capture_default_str();
    c2->add_option("--out", eb.out, "Output path (default: stdout)");
    c2->add_option("--format", eb.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    VerifyArgs vf;
    auto* c3 = app.add_subcommand("verify", "Run a configured sweep and emit a report");
    c3->add_option("--config", vf.config, "Sweep config (JSON)")->required()->check(CLI::ExistingFile);
    c3->add_option("--out", vf.out, "Report path (default: stdout)");
    c3->add_option("--format", vf.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    c3->add_option("--seed", vf.seed, "Override the config seed");
    c3->add_option("--quad-tol", vf.quad_tol, "Override tolerances.quad_tol");
    c3->add_option("--slack", vf.slack, "Override tolerances.slack");
    c3->add_option("--identity-tol", vf.identity_tol, "Override tolerances.identity_tol");
    c3->add_option("--grid-points", vf.grid_points, "Override grid_points");
    c3->add_option("--lemma-pairs", vf.lemma_pairs, "Override lemma_pairs");
    c3->add_flag("--quiet", vf.quiet, "Suppress the summary");

    TightnessArgs tg;
    auto* c4 = app.add_subcommand("tightness", "Maximise lhs/rhs over a parameter box");
    add_model_options(c4, tg.model);
    c4->add_option("--theorem", tg.theorem, "eq8|eq9|eq10|eq11|eq111")->capture_default_str();
    c4->add_option("--a", tg.a, "Range lo,hi for a (default: domain)");
    c4->add_option("--b", tg.b, "Range lo,hi for b (default: domain)");
    c4->add_option("--s", tg.s, "Range lo,hi or value for s")->capture_default_str();
    c4->add_option("--q", tg.q, "Range lo,hi or value for q")->capture_default_str();
    c4->add_option("--coarse", tg.coarse, "Coarse grid points per axis")->capture_default_str();
    c4->add_option("--max-evals", tg.max_evals, "Objective evaluation budget")->capture_default_str();
    c4->add_flag("--allow-outside", tg.allow_outside, "Also search points whose hypotheses fail");

    MeansArgs mn;
    auto* c5 = app.add_subcommand("means", "Special means and the proposition identity checks");
    c5->add_option("--a", mn.a, "a > 0")->required();
    c5->add_option("--b", mn.b, "b > 0")->required();
    c5->add_option("--p", mn.p, "Exponent for L_p");
    c5->add_option("--s", mn.s, "s in (0,1): also print proposition quantities (needs a <= b <= 1)");
    c5->add_option("--q", mn.q, "q >= 1 for the (cc), (dd), (ee) checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        if (*c1) return run_check_class(cc);
        if (*c2) return run_eval_bound(eb);
        if (*c3) return run_verify(vf);
        if (*c4) return run_tightness(tg);
        if (*c5) return run_means(mn);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
