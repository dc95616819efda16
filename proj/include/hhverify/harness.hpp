#pragma once

#include "hhverify/convexity.hpp"
#include "hhverify/fnmodel.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hhverify {

// ---------------------------------------------------------------------------
// Configuration

inline constexpr const char* kConfigSchema = "hhverify.sweep/1";

/// Raised for malformed configs; path() is a JSON-pointer-like field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

enum class ModelKind { Power, Exp, Log, Affine, Expr };

struct ModelSpec {
    std::string id;
    ModelKind kind = ModelKind::Exp;
    double s = 0.5;         // power
    double lambda = 1.0;    // exp
    double c = 1.0;         // log
    double slope = 1.0;     // affine
    double intercept = 0.0; // affine
    std::string f;          // expr
    std::optional<Interval> domain;
    std::vector<double> a_grid; // empty -> sweep-level grid
    std::vector<double> b_grid;
};

/// "power:s=0.5", "exp:lambda=2", "log:c=1", "affine:slope=1,intercept=0".
ModelSpec parse_model_spec(const std::string& text);

FunctionModel build_model(const ModelSpec& spec);

enum class Theorem { Eq8, Eq9, Eq10, Eq11, Eq111, Prop41, Prop32, Prop33 };

const char* to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

struct Tolerances {
    double quad_tol = 1e-13;
    double slack = 1e-9;
    double identity_tol = 1e-8;
};

struct PropositionGrid {
    std::vector<double> a_grid, b_grid, s_grid, q_grid;
};

struct SweepConfig {
    std::vector<ModelSpec> models;
    std::vector<double> a_grid, b_grid, s_grid, q_grid;
    std::vector<Theorem> theorems = {Theorem::Eq8, Theorem::Eq9, Theorem::Eq10, Theorem::Eq11, Theorem::Eq111};
    std::optional<PropositionGrid> propositions;
    Tolerances tolerances;
    int grid_points = 33;
    int lemma_pairs = 20;
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

SweepConfig parse_config(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);

// ---------------------------------------------------------------------------
// Records

enum class Verdict { Pass, Violation, OutsideHypotheses, EvalError };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// lhs <= rhs + kInequalitySlack counts as holding.
inline constexpr double kInequalitySlack = 1e-12;

struct BoundRecord {
    std::string model;
    Theorem theorem = Theorem::Eq10;
    double a = 0.0, b = 0.0;
    double s = 0.0, q = 0.0; // NaN when the theorem has no such parameter
    double lhs = 0.0, rhs = 0.0;
    double gap = 0.0, ratio = 0.0; // ratio NaN unless rhs > 0
    Flag hyp_class = Flag::NotApplicable;
    Flag hyp_monotone = Flag::NotApplicable;
    Flag hyp_fprime_a = Flag::NotApplicable;
    Verdict verdict = Verdict::EvalError;
    std::string discrepancy; // ';'-separated tags, empty when none
    std::map<std::string, double> residuals;

    /// Empirical truth of lhs <= rhs regardless of hypotheses.
    bool holds() const;
};

bool operator==(const BoundRecord& x, const BoundRecord& y);

struct EvalSettings {
    Tolerances tolerances;
    int grid_points = 33;
};

/// Evaluates one (model, theorem, parameters) instance; evaluation failures
/// are captured in the record (verdict eval-error), never thrown.
BoundRecord evaluate_record(const FunctionModel& m, const std::string& model_id, Theorem t, double a, double b,
                            double s, double q, const EvalSettings& settings);

/// Proposition record for x^s/s on [a, b] (q ignored for prop41).
BoundRecord evaluate_proposition(Theorem t, double a, double b, double s, double q, const EvalSettings& settings);

// ---------------------------------------------------------------------------
// Sweep

struct TheoremTally {
    std::size_t pass = 0, violation = 0, outside = 0, eval_error = 0;
    std::size_t holds = 0, evaluated = 0; // empirical lhs <= rhs over finite records
};

struct SweepSummary {
    std::map<std::string, TheoremTally> by_theorem;
    std::map<std::string, double> lemma1_max_residual; // model id -> max over random pairs
    std::size_t lemma1_failures = 0;
    std::map<std::string, std::array<std::size_t, 2>> identity_status; // tag -> {consistent, discrepant}

    std::size_t violations() const;
};

struct SweepResult {
    std::vector<BoundRecord> records;
    SweepSummary summary;
};

/// One record per (model, params, theorem); records sorted canonically.
SweepResult run_sweep(const SweepConfig& cfg);

std::string format_summary(const SweepSummary& s);

// ---------------------------------------------------------------------------
// Tightness

struct Range {
    double lo = 0.0, hi = 0.0;
};

struct TightnessBox {
    Range a, b;
    Range s{1.0, 1.0};
    Range q{2.0, 2.0};
};

struct TightnessOptions {
    int coarse_points = 5;
    double min_step_fraction = 1e-6;
    int max_evaluations = 4000;
    bool require_hypotheses = true;
    EvalSettings settings{Tolerances{}, 17};
};

struct TightnessResult {
    Theorem theorem = Theorem::Eq10;
    double a = 0.0, b = 0.0, s = 0.0, q = 0.0;
    double max_ratio = 0.0;
    double best_grid_ratio = 0.0;
    std::size_t trace_length = 0; // objective evaluations
    bool violation = false;       // a hypothesis-passing point exceeded ratio 1 + 1e-9
    std::optional<BoundRecord> violating_record;
};

class EmptyFeasibleSet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maximises lhs/rhs over the box: coarse grid, then compass pattern search.
TightnessResult optimize_tightness(Theorem t, const ModelSpec& model, const TightnessBox& box,
                                   const TightnessOptions& opts = {});

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { Csv, Json };

inline constexpr const char* kCsvHeader =
    "model,theorem,a,b,s,q,lhs,rhs,gap,ratio,hyp_class,hyp_monotone,hyp_fprime_a,verdict,discrepancy";

std::string to_csv(const std::vector<BoundRecord>& records);
nlohmann::json to_json(const std::vector<BoundRecord>& records);
std::vector<BoundRecord> records_from_json(const nlohmann::json& j);

void emit_report(const std::vector<BoundRecord>& records, ReportFormat format, const std::string& path);

} // namespace hhverify
