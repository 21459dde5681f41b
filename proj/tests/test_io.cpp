#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "drbcp/io.hpp"
#include "test_support.hpp"

using namespace drbcp;
using namespace testing_support;

namespace {

ParseError parse_failure(const std::string& text, int n = -1) {
  std::istringstream in(text);
  try {
    read_scenarios(in, n);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError(ParseError::Detail::bad_json, 0, 0, "");
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("drbcp_test_" + name)).string();
}

}  // namespace

TEST(ScenarioCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(81);
  auto sc = random_scenarios(rng, 7, 20);
  sc.costs[3] = 0.1 + 0.2;
  sc.costs[4] = 1e-300;
  sc.costs[5] = -123456789.123456789;
  std::stringstream buf;
  write_scenarios(buf, sc);
  auto back = read_scenarios(buf, 7);
  EXPECT_EQ(back.costs, sc.costs);
  EXPECT_EQ(back.N, 20);
  const auto path = temp_path("roundtrip.csv");
  save_scenarios(path, sc);
  EXPECT_EQ(load_scenarios(path, 7).costs, sc.costs);
}

TEST(ScenarioCsv, DistinctParseErrors) {
  auto header = parse_failure("0,2\n1,2\n");
  EXPECT_EQ(header.detail(), ParseError::Detail::malformed_header);
  EXPECT_EQ(header.column(), 2);
  auto ragged = parse_failure("0,1\n1,2\n3\n");
  EXPECT_EQ(ragged.detail(), ParseError::Detail::ragged_row);
  EXPECT_EQ(ragged.row(), 3);
  auto text = parse_failure("0,1\n1,abc\n");
  EXPECT_EQ(text.detail(), ParseError::Detail::non_numeric);
  EXPECT_EQ(text.row(), 2);
  EXPECT_EQ(text.column(), 2);
}

TEST(ScenarioCsv, WidthMismatchNamesColumn) {
  std::istringstream in("0,1,2\n1,2,3\n");
  try {
    read_scenarios(in, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension);
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
}

TEST(ScenarioCsv, SyntheticMonthlyMatrix) {
  auto sc = load_scenarios(std::string(DRBCP_DATA_DIR) + "/matching_9x9_monthly.csv", 81);
  EXPECT_EQ(sc.N, 12);
  EXPECT_EQ(sc.n, 81);
  auto sys = load_instance(std::string(DRBCP_DATA_DIR) + "/matching_9x9.instance.json");
  EXPECT_EQ(sys.size(), 81);
}

TEST(InstanceJson, RoundTripEveryType) {
  std::vector<CombinatorialSystem> systems{triangle(), CombinatorialSystem::tree(3, {{0, 1}, {1, 2}, {0, 2}}),
                                           CombinatorialSystem::assignment(3),
                                           CombinatorialSystem::explicit_family(4, {{0, 1}, {2, 3}})};
  for (const auto& sys : systems) {
    auto doc = instance_to_json(sys);
    auto back = instance_from_json(doc);
    EXPECT_EQ(instance_to_json(back), doc);
    EXPECT_EQ(brute_force_members(back), brute_force_members(sys));
  }
  const auto path = temp_path("instance.json");
  save_instance(path, triangle());
  EXPECT_EQ(instance_to_json(load_instance(path)), instance_to_json(triangle()));
}

TEST(InstanceJson, Errors) {
  using nlohmann::json;
  EXPECT_THROW(instance_from_json(json{{"type", "ring"}}), ParseError);
  EXPECT_THROW(instance_from_json(json{{"type", "path"}, {"nodes", 3}}), ParseError);
  json sparse = {{"type", "tree"}, {"nodes", 2}, {"edges", {{{"id", 1}, {"u", 0}, {"v", 1}}}}};
  try {
    instance_from_json(sparse);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_instance);
  }
  const auto path = temp_path("broken.json");
  std::ofstream(path) << "{\"type\": ";
  EXPECT_THROW(load_instance(path), ParseError);
}

TEST(ResultJson, DecisionCarriesPermutation) {
  auto sys = CombinatorialSystem::assignment(2);
  ScenarioSet sc(4, {{1, 2, 3, 4}, {4, 3, 2, 1}});
  auto doc = to_json(drbcp_d(sys, sc, 0.5), &sys);
  EXPECT_EQ(doc["schema"], kResultSchema);
  EXPECT_EQ(doc["objective"], 3.5);
  EXPECT_EQ(doc["permutation"], (std::vector<int>{1, 0}));
  auto quote = to_json(drbcp_u(triangle(), ScenarioSet(3, {{3, 5, 7}}), AmbiguityConfig::wasserstein(1.0)));
  EXPECT_EQ(quote["v_U"], 6.0);
  EXPECT_EQ(quote["config"]["q"], "inf");
}
