#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "relamp/cli.hpp"
#include "relamp/errors.hpp"

namespace relamp::cli {

namespace {

constexpr const char* kVersion = "relamp 1.0.0";

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << body;
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

void ResultTable::check() const {
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw std::logic_error("table " + name + ": ragged row");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::logic_error("table " + name + ": non-finite value");
    }
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::logic_error("number formatting failed");
  return std::string(buf, end);
}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += quote(table.columns[i].name + " [" + table.columns[i].unit + "]");
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

void write_outputs(const RunResult& result, const std::string& dir) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : result.tables) {
    write_file(root / (t.name + ".csv"), to_csv(t));
    tables.push_back(t.name + ".csv");
  }
  nlohmann::json summary = result.summary;
  summary["version"] = kVersion;
  summary["tables"] = tables;
  write_file(root / "summary.json", summary.dump(2) + "\n");
}

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConsistencyError*>(&e)) return ExitCode::consistency;
  if (dynamic_cast<const ConvergenceError*>(&e)) return ExitCode::convergence;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e)) {
    return ExitCode::validation;
  }
  return ExitCode::internal;
}

}  // namespace relamp::cli
