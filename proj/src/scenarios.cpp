#include "drbcp/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "drbcp/errors.hpp"

namespace drbcp {

const char* to_string(Sense sense) { return sense == Sense::cost ? "cost" : "capacity"; }

Sense parse_sense(const std::string& text) {
  if (text == "cost") return Sense::cost;
  if (text == "capacity") return Sense::capacity;
  fail(ErrorKind::domain, "sense must be cost or capacity, got '" + text + "'");
}

ScenarioSet::ScenarioSet(int n_, std::vector<std::vector<double>> rows, std::string source_)
    : n(n_), N(static_cast<int>(rows.size())), source(std::move(source_)) {
  for (const auto& r : rows) {
    require(static_cast<int>(r.size()) == n, ErrorKind::dimension, "scenario row length differs from n");
    costs.insert(costs.end(), r.begin(), r.end());
  }
  validate();
}

ScenarioSet ScenarioSet::subset(const std::vector<int>& rows) const {
  ScenarioSet out;
  out.n = n;
  out.N = static_cast<int>(rows.size());
  out.source = source;
  for (int k : rows) {
    auto r = row(k);
    out.costs.insert(out.costs.end(), r.begin(), r.end());
  }
  return out;
}

void ScenarioSet::validate() const {
  require(n >= 1, ErrorKind::dimension, "scenarios need at least one element");
  require(N >= 1, ErrorKind::domain, "scenario set is empty");
  require(costs.size() == static_cast<std::size_t>(n) * N, ErrorKind::dimension, "scenario storage size mismatch");
  for (double c : costs) require(std::isfinite(c), ErrorKind::domain, "scenario costs must be finite");
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace

ScenarioSet read_scenarios(std::istream& in, int expected_n, const std::string& source) {
  std::string line;
  using D = ParseError::Detail;
  if (!std::getline(in, line)) throw ParseError(D::malformed_header, 1, 1, "missing header row");
  auto header = split_line(trimmed(line));
  if (header.empty()) throw ParseError(D::malformed_header, 1, 1, "empty header row");
  for (std::size_t col = 0; col < header.size(); ++col) {
    std::string cell = trimmed(header[col]);
    int id = -1;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), id);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || id != static_cast<int>(col))
      throw ParseError(D::malformed_header, 1, static_cast<long>(col) + 1,
                       "expected element id " + std::to_string(col) + ", found '" + cell + "'");
  }
  const int n = static_cast<int>(header.size());
  if (expected_n >= 0 && n != expected_n) {
    long bad = std::min(n, expected_n) + 1;
    fail(ErrorKind::dimension, "scenario header has " + std::to_string(n) + " columns but the instance has " +
                                   std::to_string(expected_n) + " elements (first offending column " +
                                   std::to_string(bad) + ")");
  }

  ScenarioSet set;
  set.n = n;
  set.source = source;
  long row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    line = trimmed(line);
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (static_cast<int>(cells.size()) != n)
      throw ParseError(D::ragged_row, row_no, static_cast<long>(std::min<std::size_t>(cells.size(), n)) + 1,
                       "expected " + std::to_string(n) + " cells, found " + std::to_string(cells.size()));
    for (int col = 0; col < n; ++col) {
      double v = 0.0;
      std::string cell = trimmed(cells[col]);
      if (!parse_number(cell, v) || !std::isfinite(v))
        throw ParseError(D::non_numeric, row_no, col + 1, "cannot read '" + cell + "' as a finite number");
      set.costs.push_back(v);
    }
    ++set.N;
  }
  set.validate();
  return set;
}

void write_scenarios(std::ostream& out, const ScenarioSet& set) {
  for (int j = 0; j < set.n; ++j) out << (j ? "," : "") << j;
  out << '\n';
  for (int k = 0; k < set.N; ++k) {
    auto r = set.row(k);
    for (int j = 0; j < set.n; ++j) out << (j ? "," : "") << format_double(r[j]);
    out << '\n';
  }
}

ScenarioSet load_scenarios(const std::string& path, int expected_n) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::parse, "cannot open scenario file " + path);
  return read_scenarios(in, expected_n, path);
}

void save_scenarios(const std::string& path, const ScenarioSet& set) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::parse, "cannot write scenario file " + path);
  write_scenarios(out, set);
}

}  // namespace drbcp
