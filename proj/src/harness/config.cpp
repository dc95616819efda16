#include "hhverify/harness.hpp"

#include "hhverify/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hhverify {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

namespace {

constexpr std::array<const char*, 8> kTheoremNames = {"eq8",  "eq9",    "eq10",   "eq11",
                                                      "eq111", "prop41", "prop32", "prop33"};

double number_at(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ConfigError(path + "." + key, "missing required field");
    if (!j.at(key).is_number()) throw ConfigError(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
    return j.contains(key) ? number_at(j, key, path) : fallback;
}

std::vector<double> grid_at(const json& j, const std::string& key, const std::string& path, bool required) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!j.contains(key)) {
        if (required) throw ConfigError(here, "missing required grid");
        return {};
    }
    const json& g = j.at(key);
    if (!g.is_array()) throw ConfigError(here, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_number()) throw ConfigError(here + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(g[i].get<double>());
    }
    return out;
}

Interval interval_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(path, "expected [lo, hi]");
    return {j[0].get<double>(), j[1].get<double>()};
}

ModelKind kind_from_string(const std::string& k, const std::string& path) {
    if (k == "power") return ModelKind::Power;
    if (k == "exp") return ModelKind::Exp;
    if (k == "log") return ModelKind::Log;
    if (k == "affine") return ModelKind::Affine;
    if (k == "expr") return ModelKind::Expr;
    throw ConfigError(path, "unknown model kind '" + k + "' (power|exp|log|affine|expr)");
}

std::string default_id(const ModelSpec& m) {
    std::ostringstream os;
    os.precision(12);
    switch (m.kind) {
    case ModelKind::Power:
        os << "power(s=" << m.s << ")";
        break;
    case ModelKind::Exp:
        os << "exp(lambda=" << m.lambda << ")";
        break;
    case ModelKind::Log:
        os << "log(c=" << m.c << ")";
        break;
    case ModelKind::Affine:
        os << "affine(slope=" << m.slope << ",intercept=" << m.intercept << ")";
        break;
    case ModelKind::Expr:
        os << "expr(" << m.f << ")";
        break;
    }
    return os.str();
}

ModelSpec model_at(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError(path + ".kind", "missing model kind");
    ModelSpec m;
    m.kind = kind_from_string(j.at("kind").get<std::string>(), path + ".kind");
    switch (m.kind) {
    case ModelKind::Power:
        m.s = number_at(j, "s", path);
        break;
    case ModelKind::Exp:
        m.lambda = number_at(j, "lambda", path);
        break;
    case ModelKind::Log:
        m.c = number_or(j, "c", path, 1.0);
        break;
    case ModelKind::Affine:
        m.slope = number_at(j, "slope", path);
        m.intercept = number_or(j, "intercept", path, 0.0);
        break;
    case ModelKind::Expr:
        if (!j.contains("f") || !j.at("f").is_string()) throw ConfigError(path + ".f", "missing expression text");
        m.f = j.at("f").get<std::string>();
        if (!j.contains("domain")) throw ConfigError(path + ".domain", "expression models need a domain");
        break;
    }
    if (j.contains("domain")) m.domain = interval_at(j.at("domain"), path + ".domain");
    m.a_grid = grid_at(j, "a_grid", path, false);
    m.b_grid = grid_at(j, "b_grid", path, false);
    m.id = j.contains("id") && j.at("id").is_string() ? j.at("id").get<std::string>() : default_id(m);
    return m;
}

void check_grid(const std::vector<double>& g, const std::string& path, double lo, double hi, bool lo_open) {
    if (g.empty()) throw ConfigError(path, "grid must be nonempty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = g[i];
        const bool ok = std::isfinite(v) && (lo_open ? v > lo : v >= lo) && v <= hi;
        if (!ok) throw ConfigError(path + "[" + std::to_string(i) + "]", "value out of range");
    }
}

bool has_ordered_pair(const std::vector<double>& a, const std::vector<double>& b) {
    for (double x : a)
        for (double y : b)
            if (x < y) return true;
    return false;
}

} // namespace

const char* to_string(Theorem t) { return kTheoremNames[static_cast<std::size_t>(t)]; }

Theorem theorem_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kTheoremNames.size(); ++i)
        if (s == kTheoremNames[i]) return static_cast<Theorem>(i);
    throw std::invalid_argument("unknown theorem tag '" + s + "'");
}

ModelSpec parse_model_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    json j = json::object();
    j["kind"] = kind;
    if (colon != std::string::npos) {
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ConfigError("model", "expected key=value in '" + item + "'");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            try {
                std::size_t used = 0;
                j[key] = std::stod(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::logic_error&) {
                throw ConfigError("model." + key, "expected a number, got '" + val + "'");
            }
        }
    }
    if (kind == "expr") throw ConfigError("model", "expression models are given with --f and --domain");
    return model_at(j, "model");
}

FunctionModel build_model(const ModelSpec& spec) {
    switch (spec.kind) {
    case ModelKind::Power:
        return spec.domain ? make_power_model(spec.s, *spec.domain) : make_power_model(spec.s);
    case ModelKind::Exp:
        return spec.domain ? make_exp_model(spec.lambda, *spec.domain) : make_exp_model(spec.lambda);
    case ModelKind::Log:
        return spec.domain ? make_log_model(spec.c, *spec.domain) : make_log_model(spec.c);
    case ModelKind::Affine:
        return spec.domain ? make_affine_model(spec.slope, spec.intercept, *spec.domain)
                           : make_affine_model(spec.slope, spec.intercept);
    case ModelKind::Expr:
        if (!spec.domain) throw PreconditionError("expression model needs a domain");
        return model_from_expr(spec.f, *spec.domain);
    }
    throw PreconditionError("unknown model kind");
}

void SweepConfig::validate() const {
    if (models.empty()) throw ConfigError("models", "at least one model is required");
    check_grid(a_grid, "a_grid", 0.0, HUGE_VAL, true);
    check_grid(b_grid, "b_grid", 0.0, HUGE_VAL, true);
    check_grid(s_grid, "s_grid", 0.0, 1.0, true);
    check_grid(q_grid, "q_grid", 1.0, HUGE_VAL, false);
    if (!has_ordered_pair(a_grid, b_grid)) throw ConfigError("a_grid", "no (a, b) pair with a < b");
    if (!(tolerances.quad_tol > 0.0)) throw ConfigError("tolerances.quad_tol", "must be > 0");
    if (!(tolerances.slack > 0.0)) throw ConfigError("tolerances.slack", "must be > 0");
    if (!(tolerances.identity_tol > 0.0)) throw ConfigError("tolerances.identity_tol", "must be > 0");
    if (grid_points < 3) throw ConfigError("grid_points", "must be >= 3");
    if (lemma_pairs < 0) throw ConfigError("lemma_pairs", "must be >= 0");
    for (std::size_t i = 0; i < models.size(); ++i) {
        const std::string path = "models[" + std::to_string(i) + "]";
        const ModelSpec& m = models[i];
        if (!m.a_grid.empty()) check_grid(m.a_grid, path + ".a_grid", 0.0, HUGE_VAL, true);
        if (!m.b_grid.empty()) check_grid(m.b_grid, path + ".b_grid", 0.0, HUGE_VAL, true);
        const auto& ag = m.a_grid.empty() ? a_grid : m.a_grid;
        const auto& bg = m.b_grid.empty() ? b_grid : m.b_grid;
        if (!has_ordered_pair(ag, bg)) throw ConfigError(path + ".a_grid", "no (a, b) pair with a < b");
        try {
            (void)build_model(m);
        } catch (const std::exception& e) {
            throw ConfigError(path, e.what());
        }
        for (std::size_t k = 0; k < i; ++k)
            if (models[k].id == m.id) throw ConfigError(path + ".id", "duplicate model id '" + m.id + "'");
    }
    if (propositions) {
        check_grid(propositions->a_grid, "propositions.a_grid", 0.0, 1.0, true);
        check_grid(propositions->b_grid, "propositions.b_grid", 0.0, 1.0, true);
        check_grid(propositions->s_grid, "propositions.s_grid", 0.0, 1.0, true);
        check_grid(propositions->q_grid, "propositions.q_grid", 1.0, HUGE_VAL, false);
        for (std::size_t i = 0; i < propositions->s_grid.size(); ++i)
            if (!(propositions->s_grid[i] < 1.0))
                throw ConfigError("propositions.s_grid[" + std::to_string(i) + "]", "propositions need s < 1");
    }
}

SweepConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("$", "config must be a JSON object");
    if (!j.contains("schema") || j.at("schema") != kConfigSchema)
        throw ConfigError("schema", std::string("expected \"") + kConfigSchema + "\"");

    SweepConfig cfg;
    if (!j.contains("models") || !j.at("models").is_array()) throw ConfigError("models", "expected an array");
    for (std::size_t i = 0; i < j.at("models").size(); ++i)
        cfg.models.push_back(model_at(j.at("models")[i], "models[" + std::to_string(i) + "]"));
    cfg.a_grid = grid_at(j, "a_grid", "", true);
    cfg.b_grid = grid_at(j, "b_grid", "", true);
    cfg.s_grid = grid_at(j, "s_grid", "", true);
    cfg.q_grid = grid_at(j, "q_grid", "", true);

    if (j.contains("theorems")) {
        const json& t = j.at("theorems");
        if (!t.is_array()) throw ConfigError("theorems", "expected an array of theorem tags");
        cfg.theorems.clear();
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string path = "theorems[" + std::to_string(i) + "]";
            if (!t[i].is_string()) throw ConfigError(path, "expected a string");
            Theorem th;
            try {
                th = theorem_from_string(t[i].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(path, e.what());
            }
            if (th == Theorem::Prop41 || th == Theorem::Prop32 || th == Theorem::Prop33)
                throw ConfigError(path, "propositions are configured through the 'propositions' block");
            cfg.theorems.push_back(th);
        }
    }

    if (j.contains("propositions")) {
        const json& p = j.at("propositions");
        if (!p.is_object()) throw ConfigError("propositions", "expected an object");
        PropositionGrid g;
        g.a_grid = grid_at(p, "a_grid", "propositions", true);
        g.b_grid = grid_at(p, "b_grid", "propositions", true);
        g.s_grid = grid_at(p, "s_grid", "propositions", true);
        g.q_grid = grid_at(p, "q_grid", "propositions", true);
        cfg.propositions = std::move(g);
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
        cfg.tolerances.quad_tol = number_or(t, "quad_tol", "tolerances", cfg.tolerances.quad_tol);
        cfg.tolerances.slack = number_or(t, "slack", "tolerances", cfg.tolerances.slack);
        cfg.tolerances.identity_tol = number_or(t, "identity_tol", "tolerances", cfg.tolerances.identity_tol);
    }
    if (j.contains("grid_points")) {
        if (!j.at("grid_points").is_number_integer()) throw ConfigError("grid_points", "expected an integer");
        cfg.grid_points = j.at("grid_points").get<int>();
    }
    if (j.contains("lemma_pairs")) {
        if (!j.at("lemma_pairs").is_number_integer()) throw ConfigError("lemma_pairs", "expected an integer");
        cfg.lemma_pairs = j.at("lemma_pairs").get<int>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed", "expected a nonnegative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return parse_config(j);
}

} // namespace hhverify
