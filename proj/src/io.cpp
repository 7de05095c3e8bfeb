#include "elastoplasmon/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "elastoplasmon/errors.hpp"

namespace epl {

const char* version() { return ELASTOPLASMON_VERSION; }

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

void dump(const Json& j, int indent, int depth, std::ostringstream& os) {
    const std::string pad = indent > 0 ? std::string(std::size_t(indent) * (depth + 1), ' ') : "";
    const std::string end_pad = indent > 0 ? std::string(std::size_t(indent) * depth, ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{' << nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
                dump(it.value(), indent, depth + 1, os);
            }
            os << nl << end_pad << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[' << nl;
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad;
                dump(v, indent, depth + 1, os);
            }
            os << nl << end_pad << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            // JSON has no literal for non-finite numbers
            if (std::isfinite(v))
                os << format_double(v);
            else
                os << Json(format_double(v)).dump();
            return;
        }
        default: os << j.dump(); return;
    }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::ostringstream os;
    dump(j, indent, 0, os);
    os << '\n';
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw ArgumentError("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta_) os << "# " << k << '=' << v << "\r\n";
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
        os << "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

Json to_json(const ModalField& f) {
    Json modes = Json::array();
    for (const auto& [k, v] : f.entries())
        modes.push_back({{"family", k.family}, {"n", k.n}, {"m", k.m}, {"re", v.real()}, {"im", v.imag()}});
    return {{"N_max", f.n_max()}, {"modes", modes}};
}

ModalField modal_field_from_json(const Json& j) {
    ModalField f(j.at("N_max").get<int>());
    for (const auto& e : j.at("modes"))
        f.set(ModeIndex::make(e.at("family").get<int>(), e.at("n").get<int>(), e.at("m").get<int>()),
              Complex(e.at("re").get<double>(), e.value("im", 0.0)));
    return f;
}

Json to_json(const LameParams& p) {
    return {{"lambda_re", p.lambda.real()}, {"lambda_im", p.lambda.imag()}, {"mu_re", p.mu.real()}, {"mu_im", p.mu.imag()}};
}

}  // namespace epl
