#include "hhverify/harness.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace hhverify {

namespace {

bool same(double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; }

std::string num(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// NaN -> null; infinities as strings so the round trip stays lossless.
nlohmann::json jnum(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double from_jnum(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("bad numeric field '" + s + "'");
    }
    return j.get<double>();
}

Flag flag_from_string(const std::string& s) {
    if (s == "true") return Flag::True;
    if (s == "false") return Flag::False;
    if (s == "na") return Flag::NotApplicable;
    throw std::invalid_argument("unknown hypothesis flag '" + s + "'");
}

} // namespace

bool operator==(const BoundRecord& x, const BoundRecord& y) {
    if (x.residuals.size() != y.residuals.size()) return false;
    for (auto ix = x.residuals.begin(), iy = y.residuals.begin(); ix != x.residuals.end(); ++ix, ++iy)
        if (ix->first != iy->first || !same(ix->second, iy->second)) return false;
    return x.model == y.model && x.theorem == y.theorem && same(x.a, y.a) && same(x.b, y.b) && same(x.s, y.s) &&
           same(x.q, y.q) && same(x.lhs, y.lhs) && same(x.rhs, y.rhs) && same(x.gap, y.gap) &&
           same(x.ratio, y.ratio) && x.hyp_class == y.hyp_class && x.hyp_monotone == y.hyp_monotone &&
           x.hyp_fprime_a == y.hyp_fprime_a && x.verdict == y.verdict && x.discrepancy == y.discrepancy;
}

std::string to_csv(const std::vector<BoundRecord>& records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const BoundRecord& r : records) {
        out += csv_field(r.model) + ',' + to_string(r.theorem) + ',' + num(r.a) + ',' + num(r.b) + ',' + num(r.s) +
               ',' + num(r.q) + ',' + num(r.lhs) + ',' + num(r.rhs) + ',' + num(r.gap) + ',' + num(r.ratio) + ',' +
               to_string(r.hyp_class) + ',' + to_string(r.hyp_monotone) + ',' + to_string(r.hyp_fprime_a) + ',' +
               to_string(r.verdict) + ',' + csv_field(r.discrepancy) + '\n';
    }
    return out;
}

nlohmann::json to_json(const std::vector<BoundRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BoundRecord& r : records) {
        nlohmann::json res = nlohmann::json::object();
        for (const auto& [k, v] : r.residuals) res[k] = jnum(v);
        arr.push_back({{"model", r.model},
                       {"theorem", to_string(r.theorem)},
                       {"a", jnum(r.a)},
                       {"b", jnum(r.b)},
                       {"s", jnum(r.s)},
                       {"q", jnum(r.q)},
                       {"lhs", jnum(r.lhs)},
                       {"rhs", jnum(r.rhs)},
                       {"gap", jnum(r.gap)},
                       {"ratio", jnum(r.ratio)},
                       {"hyp_class", to_string(r.hyp_class)},
                       {"hyp_monotone", to_string(r.hyp_monotone)},
                       {"hyp_fprime_a", to_string(r.hyp_fprime_a)},
                       {"verdict", to_string(r.verdict)},
                       {"discrepancy", r.discrepancy},
                       {"residuals", res}});
    }
    return {{"records", arr}};
}

std::vector<BoundRecord> records_from_json(const nlohmann::json& j) {
    std::vector<BoundRecord> out;
    for (const auto& e : j.at("records")) {
        BoundRecord r;
        r.model = e.at("model").get<std::string>();
        r.theorem = theorem_from_string(e.at("theorem").get<std::string>());
        r.a = from_jnum(e.at("a"));
        r.b = from_jnum(e.at("b"));
        r.s = from_jnum(e.at("s"));
        r.q = from_jnum(e.at("q"));
        r.lhs = from_jnum(e.at("lhs"));
        r.rhs = from_jnum(e.at("rhs"));
        r.gap = from_jnum(e.at("gap"));
        r.ratio = from_jnum(e.at("ratio"));
        r.hyp_class = flag_from_string(e.at("hyp_class").get<std::string>());
        r.hyp_monotone = flag_from_string(e.at("hyp_monotone").get<std::string>());
        r.hyp_fprime_a = flag_from_string(e.at("hyp_fprime_a").get<std::string>());
        r.verdict = verdict_from_string(e.at("verdict").get<std::string>());
        r.discrepancy = e.at("discrepancy").get<std::string>();
        for (const auto& [k, v] : e.at("residuals").items()) r.residuals[k] = from_jnum(v);
        out.push_back(std::move(r));
    }
    return out;
}

void emit_report(const std::vector<BoundRecord>& records, ReportFormat format, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_report: no records to write");
    const std::string body = format == ReportFormat::Csv ? to_csv(records) : to_json(records).dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error(path + ": cannot open for writing: " + std::strerror(errno));
    os << body;
    os.flush();
    if (!os) throw std::runtime_error(path + ": write failed");
}

} // namespace hhverify
