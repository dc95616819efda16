#include "hhverify/bounds.hpp"
#include "hhverify/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace hhverify;
using nlohmann::json;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

json small_config() {
    return json::parse(R"({
      "schema": "hhverify.sweep/1",
      "seed": 7,
      "models": [
        {"kind": "exp", "lambda": 1.0, "domain": [1.0, 2.0]},
        {"kind": "log", "c": 1.0},
        {"kind": "affine", "slope": 1.0, "intercept": 0.0, "domain": [1.0, 2.0]}
      ],
      "a_grid": [1.0, 1.5],
      "b_grid": [1.5, 2.0],
      "s_grid": [0.5, 1.0],
      "q_grid": [1.0, 2.0],
      "propositions": {"a_grid": [0.25], "b_grid": [0.75, 1.0], "s_grid": [0.5], "q_grid": [1.0, 2.0]},
      "grid_points": 9,
      "lemma_pairs": 5
    })");
}

std::string config_error_path(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

EvalSettings quick() { return {Tolerances{}, 9}; }

} // namespace

TEST(Config, ParsesSmallConfig) {
    const SweepConfig cfg = parse_config(small_config());
    ASSERT_EQ(cfg.models.size(), 3u);
    EXPECT_EQ(cfg.models[0].id, "exp(lambda=1)");
    EXPECT_EQ(cfg.models[2].id, "affine(slope=1,intercept=0)");
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_EQ(cfg.theorems.size(), 5u);
    ASSERT_TRUE(cfg.propositions.has_value());
}

TEST(Config, ErrorsNameTheField) {
    json j = small_config();
    j["models"][1]["c"] = "one";
    EXPECT_EQ(config_error_path(j), "models[1].c");

    j = small_config();
    j["models"][0]["lambda"] = -1.0;
    EXPECT_EQ(config_error_path(j), "models[0]");

    j = small_config();
    j["s_grid"] = json::array({0.5, 1.5});
    EXPECT_EQ(config_error_path(j), "s_grid[1]");

    j = small_config();
    j["q_grid"] = json::array();
    EXPECT_EQ(config_error_path(j), "q_grid");

    j = small_config();
    j["schema"] = "hhverify.sweep/0";
    EXPECT_EQ(config_error_path(j), "schema");

    j = small_config();
    j["theorems"] = json::array({"eq10", "eq12"});
    EXPECT_EQ(config_error_path(j), "theorems[1]");

    j = small_config();
    j["a_grid"] = json::array({3.0});
    EXPECT_EQ(config_error_path(j), "a_grid");

    j = small_config();
    j["models"].push_back(j["models"][0]);
    EXPECT_EQ(config_error_path(j), "models[3].id");

    j = small_config();
    j["models"][0] = json{{"kind", "expr"}, {"f", "x^2"}};
    EXPECT_EQ(config_error_path(j), "models[0].domain");

    j = small_config();
    j["tolerances"] = json{{"quad_tol", 0.0}};
    EXPECT_EQ(config_error_path(j), "tolerances.quad_tol");
}

TEST(Config, ModelSpecText) {
    const ModelSpec m = parse_model_spec("exp:lambda=2");
    EXPECT_EQ(m.kind, ModelKind::Exp);
    EXPECT_DOUBLE_EQ(m.lambda, 2.0);
    const ModelSpec a = parse_model_spec("affine:slope=-1,intercept=3");
    EXPECT_DOUBLE_EQ(a.slope, -1.0);
    EXPECT_DOUBLE_EQ(a.intercept, 3.0);
    EXPECT_THROW(parse_model_spec("exp:lambda=abc"), ConfigError);
    EXPECT_THROW(parse_model_spec("sine:w=1"), ConfigError);
    EXPECT_THROW(parse_model_spec("power"), ConfigError);
}

TEST(Theorem, TagRoundTrip) {
    for (Theorem t : {Theorem::Eq8, Theorem::Eq9, Theorem::Eq10, Theorem::Eq11, Theorem::Eq111, Theorem::Prop41,
                      Theorem::Prop32, Theorem::Prop33})
        EXPECT_EQ(theorem_from_string(to_string(t)), t);
    EXPECT_THROW(theorem_from_string("eq7"), std::invalid_argument);
}

TEST(Verdict, Vocabulary) {
    EXPECT_STREQ(to_string(Verdict::Pass), "pass");
    EXPECT_STREQ(to_string(Verdict::Violation), "violation");
    EXPECT_STREQ(to_string(Verdict::OutsideHypotheses), "outside-hypotheses");
    EXPECT_STREQ(to_string(Verdict::EvalError), "eval-error");
    EXPECT_EQ(verdict_from_string("outside-hypotheses"), Verdict::OutsideHypotheses);
}

TEST(Record, AffineEq10Passes) {
    const BoundRecord r =
        evaluate_record(make_affine_model(1.0, 0.0), "affine", Theorem::Eq10, 1.0, 2.0, 1.0, kNaN, quick());
    EXPECT_NEAR(r.lhs, 0.0, 1e-14);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.hyp_class, Flag::True);
    EXPECT_TRUE(std::isnan(r.q));
    EXPECT_NEAR(r.gap, r.rhs - r.lhs, 0.0);
    EXPECT_LT(r.residuals.at("lemma1"), 1e-12);
}

TEST(Record, ExpModelClassicalPassGeometricOutside) {
    const FunctionModel m = make_exp_model(1.0, {1.0, 2.0});
    for (Theorem t : {Theorem::Eq8, Theorem::Eq9}) {
        const BoundRecord r = evaluate_record(m, "exp", t, 1.0, 2.0, kNaN, 2.0, quick());
        EXPECT_EQ(r.verdict, Verdict::Pass) << to_string(t);
        EXPECT_GT(r.ratio, 0.0);
        EXPECT_LT(r.ratio, 1.0);
        EXPECT_EQ(r.hyp_monotone, Flag::NotApplicable);
        EXPECT_TRUE(std::isnan(r.s));
    }
    for (Theorem t : {Theorem::Eq10, Theorem::Eq11, Theorem::Eq111}) {
        const BoundRecord r = evaluate_record(m, "exp", t, 1.0, 2.0, 1.0, 2.0, quick());
        EXPECT_EQ(r.verdict, Verdict::OutsideHypotheses) << to_string(t);
        EXPECT_EQ(r.hyp_class, Flag::False);
        EXPECT_EQ(r.hyp_monotone, Flag::True);
        EXPECT_EQ(r.hyp_fprime_a, Flag::True);
        EXPECT_TRUE(r.holds()); // the inequality still holds empirically
    }
}

TEST(Record, EvaluationErrorsAreCaptured) {
    const BoundRecord r =
        evaluate_record(make_affine_model(0.0, 1.0), "flat", Theorem::Eq10, 1.0, 2.0, 1.0, kNaN, quick());
    EXPECT_EQ(r.verdict, Verdict::EvalError);
    EXPECT_EQ(r.discrepancy.rfind("error:", 0), 0u);
    EXPECT_EQ(r.discrepancy.find(','), std::string::npos);
}

TEST(Record, PropositionsFailFprimeCondition) {
    for (Theorem t : {Theorem::Prop41, Theorem::Prop32, Theorem::Prop33}) {
        const BoundRecord r = evaluate_proposition(t, 0.25, 0.75, 0.5, 2.0, quick());
        EXPECT_EQ(r.hyp_fprime_a, Flag::False) << to_string(t);
        EXPECT_NE(r.verdict, Verdict::Pass);
        EXPECT_NE(r.verdict, Verdict::Violation);
        EXPECT_LE(r.residuals.at("aa"), 1e-10);
    }
    const BoundRecord r33 = evaluate_proposition(Theorem::Prop33, 0.25, 0.75, 0.5, 2.0, quick());
    EXPECT_NE(r33.discrepancy.find("ee:discrepant"), std::string::npos);
}

TEST(Sweep, DeterministicAndSorted) {
    const SweepConfig cfg = parse_config(small_config());
    const SweepResult a = run_sweep(cfg), b = run_sweep(cfg);
    EXPECT_EQ(to_csv(a.records), to_csv(b.records));
    EXPECT_EQ(a.summary.violations(), 0u);
    for (const BoundRecord& r : a.records)
        if (r.theorem == Theorem::Prop41 || r.theorem == Theorem::Prop32 || r.theorem == Theorem::Prop33)
            EXPECT_EQ(r.hyp_fprime_a, Flag::False);
    for (std::size_t i = 1; i < a.records.size(); ++i)
        EXPECT_LE(a.records[i - 1].model, a.records[i].model);
    EXPECT_EQ(a.summary.lemma1_max_residual.size(), 3u);
    const std::string text = format_summary(a.summary);
    EXPECT_NE(text.find("prop41"), std::string::npos);
    EXPECT_NE(text.find("violations: 0"), std::string::npos);
}

TEST(Sweep, RecordCountMatchesGrid) {
    const SweepConfig cfg = parse_config(small_config());
    const SweepResult res = run_sweep(cfg);
    // exp and affine: pairs (1,1.5),(1,2),(1.5,2); log on [1,8]: same three.
    // per pair: eq8 1, eq9 1 (q=2), eq10 2, eq11 2, eq111 4 -> 10
    // propositions: 2 pairs x (prop41 1 + prop32 1 + prop33 2) = 8
    EXPECT_EQ(res.records.size(), 3u * 3u * 10u + 8u);
}

TEST(Report, CsvShape) {
    const BoundRecord r =
        evaluate_record(make_affine_model(1.0, 0.0), "affine(slope=1,intercept=0)", Theorem::Eq8, 1.0, 2.0, kNaN,
                        kNaN, quick());
    const std::string csv = to_csv({r});
    std::istringstream in(csv);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_FALSE(std::getline(in, extra));
    EXPECT_EQ(header, kCsvHeader);
    EXPECT_EQ(row.rfind("\"affine(slope=1,intercept=0)\",eq8,1,2,,,", 0), 0u) << row;
    EXPECT_NE(row.find(",na,na,pass,"), std::string::npos) << row;
}

TEST(Report, SeventeenDigits) {
    BoundRecord r;
    r.model = "m";
    r.a = 0.1;
    r.b = 1.0 / 3.0;
    r.s = r.q = r.lhs = r.rhs = r.gap = r.ratio = kNaN;
    const std::string csv = to_csv({r});
    EXPECT_NE(csv.find("0.10000000000000001,0.33333333333333331"), std::string::npos) << csv;
}

TEST(Report, JsonRoundTrip) {
    const SweepResult res = run_sweep(parse_config(small_config()));
    const json j = json::parse(to_json(res.records).dump());
    const std::vector<BoundRecord> back = records_from_json(j);
    ASSERT_EQ(back.size(), res.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_TRUE(back[i] == res.records[i]) << i;
    EXPECT_TRUE(j["records"][0].contains("hyp_fprime_a"));
}

TEST(Report, EmitToFileAndErrors) {
    const SweepResult res = run_sweep(parse_config(small_config()));
    const std::string path = ::testing::TempDir() + "hhv_report.csv";
    emit_report(res.records, ReportFormat::Csv, path);
    EXPECT_EQ(read_file(path), to_csv(res.records));
    EXPECT_THROW(emit_report({}, ReportFormat::Csv, path), std::invalid_argument);
    try {
        emit_report(res.records, ReportFormat::Json, "/nonexistent-dir/x.json");
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.json"), std::string::npos);
    }
}

TEST(Tightness, AffineIsZero) {
    ModelSpec m = parse_model_spec("affine:slope=1,intercept=0");
    m.domain = Interval{1.0, 2.0};
    const TightnessResult r = optimize_tightness(Theorem::Eq10, m, {{1.0, 2.0}, {1.0, 2.0}});
    EXPECT_NEAR(r.max_ratio, 0.0, 1e-12);
    EXPECT_FALSE(r.violation);
}

TEST(Tightness, EmptyBox) {
    ModelSpec m = parse_model_spec("exp:lambda=1");
    m.domain = Interval{1.0, 2.0};
    EXPECT_THROW(optimize_tightness(Theorem::Eq10, m, {{1.8, 2.0}, {1.0, 1.5}}), EmptyFeasibleSet);
    // exp-family never passes the geometric class check
    EXPECT_THROW(optimize_tightness(Theorem::Eq10, m, {{1.0, 2.0}, {1.0, 2.0}}), EmptyFeasibleSet);
}

TEST(Tightness, RefinementNeverLosesToGrid) {
    ModelSpec m = parse_model_spec("log:c=1");
    TightnessOptions opts;
    opts.max_evaluations = 300;
    for (Theorem t : {Theorem::Eq8, Theorem::Eq10, Theorem::Eq111}) {
        const TightnessResult r = optimize_tightness(t, m, {{1.0, 8.0}, {1.0, 8.0}, {1.0, 1.0}, {1.0, 4.0}}, opts);
        EXPECT_GE(r.max_ratio, r.best_grid_ratio);
        EXPECT_LE(r.max_ratio, 1.0 + 1e-9);
        EXPECT_GT(r.max_ratio, 0.0);
        EXPECT_FALSE(r.violation);
        EXPECT_LT(r.a, r.b);
    }
}

TEST(Tightness, RegressionFixtures) {
    const json fx = json::parse(read_file(std::string(HHV_SOURCE_DIR) + "/tests/fixtures/tightness.json"));
    for (const json& c : fx.at("cases")) {
        ModelSpec m = parse_model_spec(c.at("model").get<std::string>());
        m.domain = Interval{c.at("domain")[0].get<double>(), c.at("domain")[1].get<double>()};
        TightnessBox box;
        box.a = {c.at("a")[0].get<double>(), c.at("a")[1].get<double>()};
        box.b = {c.at("b")[0].get<double>(), c.at("b")[1].get<double>()};
        box.s = {c.at("s")[0].get<double>(), c.at("s")[1].get<double>()};
        box.q = {c.at("q")[0].get<double>(), c.at("q")[1].get<double>()};
        TightnessOptions opts;
        opts.require_hypotheses = c.at("require_hypotheses").get<bool>();
        const TightnessResult r = optimize_tightness(theorem_from_string(c.at("theorem")), m, box, opts);
        EXPECT_NEAR(r.max_ratio, c.at("max_ratio").get<double>(), 1e-9) << c.at("name");
        EXPECT_GT(r.max_ratio, 0.0);
        EXPECT_LT(r.max_ratio, 1.0);
    }
}
