#include "drbcp/members.hpp"

#include <algorithm>
#include <cstdint>

#include "graph_algos.hpp"

namespace drbcp {

namespace {

void walk_paths(const PathSystem& sys, MemberVisitor& visitor) {
  auto inc = detail::incidence(sys.nodes, sys.edges);
  std::vector<char> visited(sys.nodes, 0);
  std::vector<int> path;
  auto dfs = [&](auto&& self, int v) -> void {
    for (int e : inc[v]) {
      int w = sys.edges[e].u == v ? sys.edges[e].v : sys.edges[e].u;
      if (visited[w]) continue;
      path.push_back(e);
      if (visitor.enter(e)) {
        if (w == sys.t) {
          visitor.member(path);
        } else {
          visited[w] = 1;
          self(self, w);
          visited[w] = 0;
        }
      }
      visitor.leave(e);
      path.pop_back();
    }
  };
  visited[sys.s] = 1;
  dfs(dfs, sys.s);
}

void walk_trees(const TreeSystem& sys, MemberVisitor& visitor) {
  const int edge_count = static_cast<int>(sys.edges.size());
  std::vector<int> chosen;
  auto completable = [&](detail::UnionFind uf, int from) {
    for (int e = from; e < edge_count && uf.components() > 1; ++e) uf.unite(sys.edges[e].u, sys.edges[e].v);
    return uf.components() == 1;
  };
  auto dfs = [&](auto&& self, int k, const detail::UnionFind& uf) -> void {
    if (static_cast<int>(chosen.size()) == sys.nodes - 1) {
      visitor.member(chosen);
      return;
    }
    if (k == edge_count) return;
    detail::UnionFind with = uf;
    if (with.unite(sys.edges[k].u, sys.edges[k].v)) {
      chosen.push_back(k);
      if (visitor.enter(k)) self(self, k + 1, with);
      visitor.leave(k);
      chosen.pop_back();
    }
    if (completable(uf, k + 1)) self(self, k + 1, uf);
  };
  dfs(dfs, 0, detail::UnionFind(sys.nodes));
}

void walk_assignments(const AssignmentSystem& sys, MemberVisitor& visitor) {
  const int m = sys.m;
  std::vector<int> cells;
  auto dfs = [&](auto&& self, int row, std::uint32_t used) -> void {
    if (row == m) {
      visitor.member(cells);
      return;
    }
    for (int col = 0; col < m; ++col) {
      if ((used >> col) & 1u) continue;
      int cell = row * m + col;
      cells.push_back(cell);
      if (visitor.enter(cell)) self(self, row + 1, used | (1u << col));
      visitor.leave(cell);
      cells.pop_back();
    }
  };
  dfs(dfs, 0, 0u);
}

void walk_explicit(const ExplicitSystem& sys, MemberVisitor& visitor) {
  for (const Subset& s : sys.sets) {
    std::size_t entered = 0;
    bool alive = true;
    while (alive && entered < s.size()) {
      alive = visitor.enter(s[entered]);
      ++entered;
    }
    if (alive) visitor.member(s);
    while (entered > 0) visitor.leave(s[--entered]);
  }
}

class Collector final : public MemberVisitor {
 public:
  bool enter(int) override { return true; }
  void leave(int) override {}
  void member(const std::vector<int>& elements) override {
    Subset s = elements;
    std::sort(s.begin(), s.end());
    found.push_back(std::move(s));
  }
  std::vector<Subset> found;
};

}  // namespace

void for_each_member(const CombinatorialSystem& system, MemberVisitor& visitor) {
  std::visit(
      [&](const auto& sys) {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PathSystem>) walk_paths(sys, visitor);
        else if constexpr (std::is_same_v<T, TreeSystem>) walk_trees(sys, visitor);
        else if constexpr (std::is_same_v<T, AssignmentSystem>) walk_assignments(sys, visitor);
        else walk_explicit(sys, visitor);
      },
      system.structure());
}

void require_enumerable(const CombinatorialSystem& system, const MemberLimits& limits) {
  std::visit(
      [&](const auto& sys) {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PathSystem> || std::is_same_v<T, TreeSystem>) {
          require(sys.nodes <= limits.max_graph_nodes, ErrorKind::enumeration_limit,
                  "member enumeration guard: graph has " + std::to_string(sys.nodes) + " nodes (limit " +
                      std::to_string(limits.max_graph_nodes) + ")");
        } else if constexpr (std::is_same_v<T, AssignmentSystem>) {
          require(sys.m <= limits.max_assignment_side, ErrorKind::enumeration_limit,
                  "member enumeration guard: assignment side " + std::to_string(sys.m) + " (limit " +
                      std::to_string(limits.max_assignment_side) + ")");
        } else {
          require(static_cast<int>(sys.sets.size()) <= limits.max_explicit_members, ErrorKind::enumeration_limit,
                  "member enumeration guard: explicit family too large");
        }
      },
      system.structure());
}

std::vector<Subset> brute_force_members(const CombinatorialSystem& system, bool force) {
  if (!force) require_enumerable(system);
  Collector collector;
  for_each_member(system, collector);
  std::sort(collector.found.begin(), collector.found.end());
  collector.found.erase(std::unique(collector.found.begin(), collector.found.end()), collector.found.end());
  return collector.found;
}

}  // namespace drbcp
