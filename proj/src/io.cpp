#include "pcm/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace pcm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

double to_double(std::string_view s, std::string_view whole) {
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw ParseError("malformed cell '" + std::string(whole) + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

IncompletePCM parse_csv(std::string_view text) {
  Grid grid;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<Cell> row;
    while (true) {
      const auto comma = line.find(',');
      try {
        row.push_back(parse_cell(line.substr(0, comma)));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    grid.push_back(std::move(row));
  }
  if (grid.empty()) throw ParseError("empty matrix");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i].size() != grid.size())
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(grid[i].size()) +
                       " cells; expected a square " + std::to_string(grid.size()) + "x" +
                       std::to_string(grid.size()) + " layout");
  return IncompletePCM::from_grid(grid);
}

IncompletePCM parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw ParseError("JSON matrix must be an object with an \"entries\" array");
  const auto& rows = doc["entries"];
  const std::size_t n = rows.size();
  if (doc.contains("order")) {
    if (!doc["order"].is_number_integer() || doc["order"].get<long long>() != static_cast<long long>(n))
      throw ParseError("\"order\" does not match the number of rows");
  }
  Grid grid;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError("row " + std::to_string(i + 1) + " is not an array of length " + std::to_string(n));
    std::vector<Cell> row;
    for (const auto& cell : rows[i]) {
      if (cell.is_null())
        row.emplace_back();
      else if (cell.is_number())
        row.emplace_back(cell.get<double>());
      else if (cell.is_string())
        row.push_back(parse_cell(cell.get<std::string>()));
      else
        throw ParseError("unsupported JSON cell " + cell.dump());
    }
    grid.push_back(std::move(row));
  }
  if (grid.empty()) throw ParseError("empty matrix");
  return IncompletePCM::from_grid(grid);
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ParseError("unknown format '" + std::string(name) + "'");
}

Cell parse_cell(std::string_view raw) {
  const std::string_view cell = trim(raw);
  if (cell.empty()) throw ParseError("empty cell");
  if (cell == "*") return std::nullopt;
  if (const auto slash = cell.find('/'); slash != std::string_view::npos) {
    const auto num = trim(cell.substr(0, slash));
    const auto den = trim(cell.substr(slash + 1));
    if (!is_integer(num) || !is_integer(den)) throw ParseError("malformed fraction '" + std::string(cell) + "'");
    long long p = 0, q = 0;
    const auto r1 = std::from_chars(num.data() + (num.front() == '+'), num.data() + num.size(), p);
    const auto r2 = std::from_chars(den.data() + (den.front() == '+'), den.data() + den.size(), q);
    if (r1.ec != std::errc{} || r2.ec != std::errc{}) throw ParseError("fraction out of range '" + std::string(cell) + "'");
    if (q == 0) throw ParseError("zero denominator in '" + std::string(cell) + "'");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  return to_double(cell, cell);
}

IncompletePCM parse_matrix(std::string_view text, Format format) {
  return format == Format::Csv ? parse_csv(text) : parse_json(text);
}

std::string to_csv(const IncompletePCM& pcm) {
  std::string out;
  for (int i = 0; i < pcm.order(); ++i) {
    for (int j = 0; j < pcm.order(); ++j) {
      if (j) out += ',';
      const Cell c = pcm.at(i, j);
      out += c ? format_double(*c) : "*";
    }
    out += '\n';
  }
  return out;
}

std::string to_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const IncompletePCM& pcm) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < pcm.order(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < pcm.order(); ++j) {
      const Cell c = pcm.at(i, j);
      row.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
    }
    rows.push_back(std::move(row));
  }
  return {{"order", pcm.order()}, {"entries", std::move(rows)}};
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"order", m.rows()}, {"entries", std::move(rows)}};
}

}  // namespace pcm
