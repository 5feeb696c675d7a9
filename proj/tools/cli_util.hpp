#pragma once

// Angle parsing and table output shared by the command-line tool and its tests.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rhombsaw/geometry.hpp"

namespace rhombsaw::cli {

// Accepts plain radians ("1.5707963") or multiples of pi written as
// "pi", "pi/3", "2pi/3", "2*pi/3", "-pi/6", "0.5pi".
inline double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([+-]?)\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)",
                                  std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double coeff = m[2].length() ? std::stod(m[2].str()) : 1.0;
    const double denom = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (denom == 0) throw std::invalid_argument("angle '" + text + "' divides by zero");
    return (m[1].str() == "-" ? -1.0 : 1.0) * coeff * kPi / denom;
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot read angle '" + text + "'");
  }
  if (text.find_first_not_of(" \t", used) != std::string::npos) {
    throw std::invalid_argument("cannot read angle '" + text + "'");
  }
  return v;
}

using Cell = std::variant<std::monostate, double, long long, std::string>;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  } v;
  return std::visit(v, c);
}

inline nlohmann::ordered_json json_field(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  } v;
  return std::visit(v, c);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match header");
    rows.push_back(std::move(row));
  }

  void write_csv(std::ostream& out, const std::string& header_comment = {}) const {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << csv_field(r[k]);
      out << '\n';
    }
  }

  void write_json(std::ostream& out, const nlohmann::ordered_json& meta) const {
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t k = 0; k < r.size(); ++k) obj[columns[k]] = json_field(r[k]);
      doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
  }
};

}  // namespace rhombsaw::cli
