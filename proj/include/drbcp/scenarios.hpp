#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace drbcp {

enum class Sense { cost, capacity };

const char* to_string(Sense sense);
Sense parse_sense(const std::string& text);

struct ScenarioSet {
  int n = 0;
  int N = 0;
  std::vector<double> costs;  // row-major, N rows of length n
  std::string source;

  ScenarioSet() = default;
  ScenarioSet(int n, std::vector<std::vector<double>> rows, std::string source = {});

  std::span<const double> row(int k) const { return {costs.data() + static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)}; }
  std::span<double> row(int k) { return {costs.data() + static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)}; }
  ScenarioSet subset(const std::vector<int>& rows) const;
  void validate() const;
};

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

ScenarioSet read_scenarios(std::istream& in, int expected_n = -1, const std::string& source = "stream");
void write_scenarios(std::ostream& out, const ScenarioSet& set);

ScenarioSet load_scenarios(const std::string& path, int expected_n = -1);
void save_scenarios(const std::string& path, const ScenarioSet& set);

}  // namespace drbcp
