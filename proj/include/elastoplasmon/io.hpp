#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "elastoplasmon/elastic_kernels.hpp"
#include "elastoplasmon/sphere_modes.hpp"

namespace epl {

using Json = nlohmann::ordered_json;

const char* version();

// 17 significant digits, scientific notation.
std::string format_double(double v);

// JSON text with every float printed by format_double; key order is insertion order.
std::string dump_json(const Json& j, int indent = 2);

std::string csv_field(const std::string& s);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    // Lines written as "# key=value" ahead of the header.
    void add_meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }
    void add_row(std::vector<std::string> cells);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<std::string>> rows_;
};

Json to_json(const ModalField& f);
ModalField modal_field_from_json(const Json& j);
Json to_json(const LameParams& p);

}  // namespace epl
