#include "drbcp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace drbcp {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw ParseError(ParseError::Detail::bad_json, 0, 0, message);
}

int int_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) bad(std::string("missing integer field '") + key + "'");
  return doc[key].get<int>();
}

std::vector<Edge> read_edges(const json& doc) {
  if (!doc.contains("edges") || !doc["edges"].is_array()) bad("missing 'edges' array");
  const auto& list = doc["edges"];
  std::vector<Edge> edges(list.size());
  std::vector<bool> seen(list.size(), false);
  for (const auto& e : list) {
    if (!e.is_object()) bad("edge entries must be objects");
    int id = int_field(e, "id");
    if (id < 0 || id >= static_cast<int>(list.size()) || seen[id])
      fail(ErrorKind::invalid_instance, "edge ids must be dense 0..n-1 without repeats");
    seen[id] = true;
    edges[id] = Edge{int_field(e, "u"), int_field(e, "v")};
  }
  return edges;
}

json edges_json(const std::vector<Edge>& edges) {
  json list = json::array();
  for (std::size_t i = 0; i < edges.size(); ++i) list.push_back({{"id", i}, {"u", edges[i].u}, {"v", edges[i].v}});
  return list;
}

}  // namespace

CombinatorialSystem instance_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) bad("missing 'type'");
  const std::string type = doc["type"];
  if (type == "path") return CombinatorialSystem::path(int_field(doc, "nodes"), read_edges(doc), int_field(doc, "s"), int_field(doc, "t"));
  if (type == "tree") return CombinatorialSystem::tree(int_field(doc, "nodes"), read_edges(doc));
  if (type == "assignment") return CombinatorialSystem::assignment(int_field(doc, "m"));
  if (type == "explicit") {
    if (!doc.contains("sets") || !doc["sets"].is_array()) bad("missing 'sets' array");
    std::vector<Subset> sets;
    int top = -1;
    for (const auto& s : doc["sets"]) {
      if (!s.is_array()) bad("each set must be an array of ids");
      Subset set;
      for (const auto& v : s) {
        if (!v.is_number_integer()) bad("set members must be integers");
        set.push_back(v.get<int>());
        top = std::max(top, set.back());
      }
      sets.push_back(std::move(set));
    }
    int n = doc.contains("n") ? int_field(doc, "n") : top + 1;
    return CombinatorialSystem::explicit_family(n, std::move(sets));
  }
  bad("unknown instance type '" + type + "'");
}

json instance_to_json(const CombinatorialSystem& system) {
  return std::visit(
      [&](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PathSystem>)
          return {{"type", "path"}, {"nodes", s.nodes}, {"edges", edges_json(s.edges)}, {"s", s.s}, {"t", s.t}};
        else if constexpr (std::is_same_v<T, TreeSystem>)
          return {{"type", "tree"}, {"nodes", s.nodes}, {"edges", edges_json(s.edges)}};
        else if constexpr (std::is_same_v<T, AssignmentSystem>)
          return {{"type", "assignment"}, {"m", s.m}};
        else
          return {{"type", "explicit"}, {"n", system.size()}, {"sets", s.sets}};
      },
      system.structure());
}

CombinatorialSystem load_instance(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::domain, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Detail::bad_json, 0, static_cast<long>(e.byte), path + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const std::string& path, const CombinatorialSystem& system) {
  write_json(path, instance_to_json(system));
}

json to_json(const RobustQuote& quote) {
  json per = json::array();
  for (const auto& s : quote.per_scenario) per.push_back({{"t_star", s.t_star}, {"raised", s.raised}, {"blocker", s.blocker.elements}});
  const auto& c = quote.config;
  json config = {{"kind", c.kind == AmbiguityConfig::Kind::wasserstein ? "wasserstein" : "total_variation"},
                 {"theta", c.theta}, {"r", c.r}, {"d", c.d}};
  config["q"] = std::isinf(c.q) ? json("inf") : json(c.q);
  return {{"schema", kResultSchema}, {"v_U", quote.v_U}, {"saa", quote.saa}, {"sense", to_string(quote.sense)},
          {"config", config}, {"per_scenario", per}};
}

json to_json(const DecisionReport& report, const CombinatorialSystem* system) {
  json doc = {{"schema", kResultSchema}, {"model", report.model},  {"x", report.x},
              {"objective", report.objective}, {"mean", report.mean}, {"variance", report.variance},
              {"per_scenario", report.per_scenario}};
  if (report.threshold) doc["threshold"] = *report.threshold;
  if (system && system->kind() == SystemKind::assignment) doc["permutation"] = as_permutation(*system, report.x);
  return doc;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::domain, "cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace drbcp
