#include "qwstar/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qwstar {

namespace {

using nlohmann::json;

constexpr const char* kHeader = "t,p_vstar,psi_K_plus_re,psi_K_plus_im,psi_S_plus_re,psi_S_plus_im";

LeafPhase parse_leaf_phase(const std::string& s) {
    if (s == "reverse" || s == "reversal") return LeafPhase::reversal;
    if (s == "plain") return LeafPhase::plain;
    throw std::runtime_error("unknown leaf phase '" + s + "'");
}

std::string leaf_phase_token(LeafPhase phase) { return phase == LeafPhase::reversal ? "reverse" : "plain"; }

double parse_real(const std::string& s) {
    if (s == "nan") return std::nan("");
    double value = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw std::runtime_error("malformed real '" + s + "'");
    return value;
}

std::size_t parse_count(const std::string& s) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::runtime_error("malformed integer '" + s + "'");
    return value;
}

} // namespace

std::size_t ProbabilityTrace::argmax(std::size_t last) const {
    if (rows.empty()) throw std::out_of_range("argmax of an empty trace");
    last = std::min(last, rows.size() - 1);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= last; ++i)
        if (rows[i].p_vstar > rows[best].p_vstar) best = i;
    return best;
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const ProbabilityTrace& trace) {
    const auto& md = trace.metadata;
    out << "# N=" << md.clique_size << '\n'
        << "# m=" << md.leaf_count << '\n'
        << "# alpha=" << (md.alpha ? format_real(*md.alpha) : std::string("none")) << '\n'
        << "# mode=" << md.mode << '\n'
        << "# leaf_phase=" << leaf_phase_token(md.leaf_phase) << '\n'
        << "# version=" << md.version << '\n'
        << kHeader << '\n';
    for (const auto& r : trace.rows) {
        out << r.t << ',' << format_real(r.p_vstar) << ',' << format_real(r.psi_K_plus.real()) << ','
            << format_real(r.psi_K_plus.imag()) << ',' << format_real(r.psi_S_plus.real()) << ','
            << format_real(r.psi_S_plus.imag()) << '\n';
    }
}

ProbabilityTrace read_csv(std::istream& in) {
    ProbabilityTrace trace;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            const std::string value = line.substr(eq + 1);
            auto& md = trace.metadata;
            if (key == "N") md.clique_size = parse_count(value);
            else if (key == "m") md.leaf_count = parse_count(value);
            else if (key == "alpha") md.alpha = value == "none" ? std::nullopt : std::optional<double>(parse_real(value));
            else if (key == "mode") md.mode = value;
            else if (key == "leaf_phase") md.leaf_phase = parse_leaf_phase(value);
            else if (key == "version") md.version = value;
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) throw std::runtime_error("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw std::runtime_error("trace row must have 6 fields: " + line);
        trace.rows.push_back(TraceRow{parse_count(fields[0]), parse_real(fields[1]),
                                      Complex(parse_real(fields[2]), parse_real(fields[3])),
                                      Complex(parse_real(fields[4]), parse_real(fields[5]))});
    }
    if (!header_seen) throw std::runtime_error("CSV trace has no header line");
    return trace;
}

void write_json(std::ostream& out, const ProbabilityTrace& trace) {
    const auto& md = trace.metadata;
    json doc;
    doc["metadata"] = {{"N", md.clique_size},
                       {"m", md.leaf_count},
                       {"alpha", md.alpha ? json(*md.alpha) : json(nullptr)},
                       {"mode", md.mode},
                       {"leaf_phase", leaf_phase_token(md.leaf_phase)},
                       {"version", md.version}};
    doc["columns"] = {"t", "p_vstar", "psi_K_plus_re", "psi_K_plus_im", "psi_S_plus_re", "psi_S_plus_im"};
    json rows = json::array();
    for (const auto& r : trace.rows)
        rows.push_back({r.t, r.p_vstar, r.psi_K_plus.real(), r.psi_K_plus.imag(), r.psi_S_plus.real(),
                        r.psi_S_plus.imag()});
    doc["rows"] = std::move(rows);
    out << doc.dump(1) << '\n';
}

ProbabilityTrace read_json(std::istream& in) {
    const json doc = json::parse(in);
    ProbabilityTrace trace;
    const auto& md = doc.at("metadata");
    trace.metadata.clique_size = md.at("N").get<std::size_t>();
    trace.metadata.leaf_count = md.at("m").get<std::size_t>();
    if (!md.at("alpha").is_null()) trace.metadata.alpha = md.at("alpha").get<double>();
    trace.metadata.mode = md.at("mode").get<std::string>();
    trace.metadata.leaf_phase = parse_leaf_phase(md.at("leaf_phase").get<std::string>());
    trace.metadata.version = md.at("version").get<std::string>();
    for (const auto& r : doc.at("rows")) {
        trace.rows.push_back(TraceRow{r.at(0).get<std::size_t>(), r.at(1).get<double>(),
                                      Complex(r.at(2).get<double>(), r.at(3).get<double>()),
                                      Complex(r.at(4).get<double>(), r.at(5).get<double>())});
    }
    return trace;
}

} // namespace qwstar
