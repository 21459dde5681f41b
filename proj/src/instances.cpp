#include "drbcp/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <mutex>
#include <numeric>

#include "graph_algos.hpp"

namespace drbcp {

namespace {

using Mask = std::uint64_t;

Mask to_mask(const Subset& s) {
  Mask m = 0;
  for (int j : s) m |= Mask{1} << j;
  return m;
}

Subset from_mask(Mask m) {
  Subset s;
  while (m) {
    s.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return s;
}

Subset normalized(Subset s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool is_subset(const Subset& a, const Subset& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Berge's incremental construction on bit masks.
std::vector<Mask> transversal_masks(std::vector<Mask> edges) {
  std::sort(edges.begin(), edges.end(), [](Mask a, Mask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<Mask> minimal;
  for (Mask e : edges) {
    bool dominated = false;
    for (Mask f : minimal)
      if ((f & e) == f) dominated = true;
    if (!dominated) minimal.push_back(e);
  }

  std::vector<Mask> current{0};
  for (Mask e : minimal) {
    std::vector<Mask> next, candidates;
    for (Mask t : current) {
      if (t & e) {
        next.push_back(t);
        continue;
      }
      for (Mask bits = e; bits; bits &= bits - 1) candidates.push_back(t | (bits & -bits));
    }
    std::sort(candidates.begin(), candidates.end(), [](Mask a, Mask b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (Mask c : candidates) {
      bool dominated = false;
      for (std::size_t i = 0; i < next.size() && !dominated; ++i) dominated = (next[i] & c) == next[i];
      if (!dominated) next.push_back(c);
    }
    current = std::move(next);
  }
  return current;
}

double sum_over(const Subset& s, std::span<const double> w) {
  double total = 0.0;
  for (int j : s) total += w[j];
  return total;
}

void validate_graph(int nodes, const std::vector<Edge>& edges) {
  require(nodes >= 2, ErrorKind::invalid_instance, "graph needs at least two nodes");
  require(!edges.empty(), ErrorKind::invalid_instance, "graph has no edges");
  for (const Edge& e : edges) {
    require(e.u >= 0 && e.u < nodes && e.v >= 0 && e.v < nodes, ErrorKind::invalid_instance,
            "edge endpoint out of range");
    require(e.u != e.v, ErrorKind::invalid_instance, "self-loops are not allowed");
  }
}

BlockerElement cut_element(const std::vector<Edge>& edges, const std::vector<char>& labels) {
  BlockerElement y;
  y.tag = BlockerTag::cut;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    char a = labels[edges[e].u], b = labels[edges[e].v];
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) y.elements.push_back(e);
  }
  for (int v = 0; v < static_cast<int>(labels.size()); ++v)
    if (labels[v] == 1) y.side.push_back(v);
  return y;
}

// Enumerates vertex sets A over `pool` containing `anchor` and avoiding `excluded`,
// with both A and pool \ A connected; returns the largest number of crossing edges.
int largest_bond(int nodes, const std::vector<Edge>& edges, std::uint32_t pool, int anchor, int excluded) {
  std::vector<std::uint32_t> adj(nodes, 0);
  for (const Edge& e : edges) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  auto connected = [&](std::uint32_t mask) {
    if (!mask) return false;
    std::uint32_t seen = mask & -mask, frontier = seen;
    while (frontier) {
      std::uint32_t grow = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) grow |= adj[std::countr_zero(f)];
      grow &= mask & ~seen;
      seen |= grow;
      frontier = grow;
    }
    return seen == mask;
  };
  std::uint32_t free = pool & ~(1u << anchor);
  if (excluded >= 0) free &= ~(1u << excluded);
  int best = 0;
  std::uint32_t sub = 0;
  while (true) {
    std::uint32_t a = sub | (1u << anchor);
    std::uint32_t b = pool & ~a;
    if (b && connected(a) && connected(b)) {
      int crossing = 0;
      for (const Edge& e : edges) {
        bool ua = (a >> e.u) & 1u, va = (a >> e.v) & 1u;
        bool ub = (b >> e.u) & 1u, vb = (b >> e.v) & 1u;
        if ((ua && vb) || (va && ub)) ++crossing;
      }
      best = std::max(best, crossing);
    }
    if (sub == free) break;
    sub = (sub - free) & free;
  }
  return best;
}

}  // namespace

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::path: return "path";
    case SystemKind::tree: return "tree";
    case SystemKind::assignment: return "assignment";
    case SystemKind::explicit_family: return "explicit";
  }
  return "unknown";
}

struct CombinatorialSystem::Cache {
  std::once_flag once;
  std::vector<Subset> blocker;
};

CombinatorialSystem::CombinatorialSystem(GroundSet ground, Structure structure)
    : ground_(std::move(ground)), structure_(std::move(structure)), cache_(std::make_shared<Cache>()) {}

CombinatorialSystem CombinatorialSystem::path(int nodes, std::vector<Edge> edges, int s, int t) {
  validate_graph(nodes, edges);
  require(s >= 0 && s < nodes && t >= 0 && t < nodes, ErrorKind::invalid_instance, "terminal out of range");
  require(s != t, ErrorKind::invalid_instance, "source equals sink");
  auto inc = detail::incidence(nodes, edges);
  require(detail::reach(nodes, edges, inc, s, {}, {})[t], ErrorKind::invalid_instance, "no s-t path exists");
  GroundSet g{static_cast<int>(edges.size()), {}};
  return CombinatorialSystem(g, PathSystem{nodes, std::move(edges), s, t});
}

CombinatorialSystem CombinatorialSystem::tree(int nodes, std::vector<Edge> edges) {
  validate_graph(nodes, edges);
  detail::UnionFind uf(nodes);
  for (const Edge& e : edges) uf.unite(e.u, e.v);
  require(uf.components() == 1, ErrorKind::invalid_instance, "graph is not connected");
  GroundSet g{static_cast<int>(edges.size()), {}};
  return CombinatorialSystem(g, TreeSystem{nodes, std::move(edges)});
}

CombinatorialSystem CombinatorialSystem::assignment(int m) {
  require(m >= 1, ErrorKind::invalid_instance, "assignment side must be positive");
  return CombinatorialSystem(GroundSet{m * m, {}}, AssignmentSystem{m});
}

CombinatorialSystem CombinatorialSystem::explicit_family(int n, std::vector<Subset> sets) {
  require(n >= 1, ErrorKind::invalid_instance, "ground set must be nonempty");
  require(!sets.empty(), ErrorKind::invalid_instance, "family is empty");
  for (Subset& s : sets) {
    s = normalized(std::move(s));
    require(!s.empty(), ErrorKind::invalid_instance, "family contains an empty subset");
    require(s.front() >= 0 && s.back() < n, ErrorKind::invalid_instance, "subset element out of range");
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return CombinatorialSystem(GroundSet{n, {}}, ExplicitSystem{std::move(sets)});
}

SystemKind CombinatorialSystem::kind() const { return static_cast<SystemKind>(structure_.index()); }

void CombinatorialSystem::set_labels(std::vector<std::string> labels) {
  require(static_cast<int>(labels.size()) == ground_.n, ErrorKind::dimension, "label count differs from n");
  ground_.labels = std::move(labels);
}

const std::vector<Subset>& CombinatorialSystem::explicit_blocker() const {
  const auto* ex = std::get_if<ExplicitSystem>(&structure_);
  require(ex != nullptr, ErrorKind::domain, "explicit blocker requested for a structural system");
  require(ground_.n <= kBlockerEnumerationLimit, ErrorKind::enumeration_limit,
          "explicit blocker enumeration needs n <= 20; use a structural system");
  std::call_once(cache_->once, [&] { cache_->blocker = minimal_transversals(ground_.n, ex->sets); });
  return cache_->blocker;
}

Clutter::Clutter(int ground_size, std::vector<Subset> members) : n_(ground_size) {
  require(ground_size >= 1, ErrorKind::invalid_instance, "ground set must be nonempty");
  require(!members.empty(), ErrorKind::invalid_instance, "clutter is empty");
  for (Subset& s : members) {
    s = normalized(std::move(s));
    require(!s.empty() && s.front() >= 0 && s.back() < n_, ErrorKind::invalid_instance,
            "clutter member empty or out of range");
  }
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j)
      if (i != j)
        require(!is_subset(members[i], members[j]), ErrorKind::invalid_instance,
                "clutter members are not mutually noncomparable");
  members_ = std::move(members);
}

Clutter antichain_reduce(const std::vector<Subset>& family, int n) {
  require(!family.empty(), ErrorKind::invalid_instance, "family is empty");
  std::vector<Subset> sets;
  int largest = -1;
  for (const Subset& s : family) {
    sets.push_back(normalized(s));
    require(!sets.back().empty(), ErrorKind::invalid_instance, "family contains an empty subset");
    largest = std::max(largest, sets.back().back());
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Subset> kept;
  for (const Subset& s : sets) {
    bool strict_superset = false;
    for (const Subset& o : sets)
      if (o.size() < s.size() && is_subset(o, s)) strict_superset = true;
    if (!strict_superset) kept.push_back(s);
  }
  return Clutter(n < 0 ? largest + 1 : n, std::move(kept));
}

std::vector<Subset> minimal_transversals(int n, const std::vector<Subset>& family) {
  require(n <= 64, ErrorKind::enumeration_limit, "transversal enumeration supports at most 64 elements");
  std::vector<Mask> edges;
  for (const Subset& s : family) {
    require(!s.empty(), ErrorKind::invalid_instance, "cannot hit an empty set");
    edges.push_back(to_mask(s));
  }
  std::vector<Subset> out;
  for (Mask m : transversal_masks(edges)) out.push_back(from_mask(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BlockerElement> blocker_enumerate(const Clutter& clutter, int limit) {
  require(clutter.ground_size() <= std::min(limit, 64), ErrorKind::enumeration_limit,
          "blocker enumeration guard exceeded (n = " + std::to_string(clutter.ground_size()) +
              "); use min_weight_blocker on a structural system");
  std::vector<BlockerElement> out;
  for (Subset& s : minimal_transversals(clutter.ground_size(), clutter.members()))
    out.push_back(BlockerElement{std::move(s), BlockerTag::raw, {}, {}, {}});
  return out;
}

WeightedBlocker min_weight_blocker(const CombinatorialSystem& system, std::span<const double> weights) {
  require(static_cast<int>(weights.size()) == system.size(), ErrorKind::dimension, "weight vector length differs from n");
  for (double w : weights)
    require(std::isfinite(w) && w >= 0.0, ErrorKind::domain, "blocker weights must be finite and nonnegative");

  WeightedBlocker out;
  std::visit(
      [&](const auto& sys) {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PathSystem>) {
          out.witness = cut_element(sys.edges, detail::min_st_cut_shores(sys.nodes, sys.edges, weights, sys.s, sys.t));
        } else if constexpr (std::is_same_v<T, TreeSystem>) {
          out.witness = cut_element(sys.edges, detail::global_min_cut_shores(sys.nodes, sys.edges, weights));
        } else if constexpr (std::is_same_v<T, AssignmentSystem>) {
          const int m = sys.m;
          require(m <= 10, ErrorKind::enumeration_limit, "assignment blocker oracle needs m <= 10");
          double best = INFINITY;
          std::vector<double> col(m);
          std::vector<int> order(m);
          for (std::uint32_t h = 1; h < (1u << m); ++h) {
            const int need = m + 1 - std::popcount(h);
            std::fill(col.begin(), col.end(), 0.0);
            for (int i = 0; i < m; ++i)
              if ((h >> i) & 1u)
                for (int j = 0; j < m; ++j) col[j] += weights[i * m + j];
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return col[a] < col[b]; });
            double value = 0.0;
            for (int c = 0; c < need; ++c) value += col[order[c]];
            if (value < best) {
              best = value;
              BlockerElement y;
              y.tag = BlockerTag::submatrix;
              for (int i = 0; i < m; ++i)
                if ((h >> i) & 1u) y.rows.push_back(i);
              y.cols.assign(order.begin(), order.begin() + need);
              std::sort(y.cols.begin(), y.cols.end());
              for (int i : y.rows)
                for (int j : y.cols) y.elements.push_back(i * m + j);
              std::sort(y.elements.begin(), y.elements.end());
              out.witness = std::move(y);
            }
          }
        } else {
          const Subset* best = nullptr;
          double best_value = INFINITY;
          for (const Subset& y : system.explicit_blocker()) {
            double v = sum_over(y, weights);
            if (v < best_value) {
              best_value = v;
              best = &y;
            }
          }
          out.witness = BlockerElement{*best, BlockerTag::raw, {}, {}, {}};
        }
      },
      system.structure());
  out.value = sum_over(out.witness.elements, weights);
  return out;
}

std::optional<Subset> threshold_member(const CombinatorialSystem& system, std::span<const double> costs, double t) {
  require(static_cast<int>(costs.size()) == system.size(), ErrorKind::dimension, "cost vector length differs from n");
  return std::visit(
      [&](const auto& sys) -> std::optional<Subset> {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PathSystem>) {
          auto inc = detail::incidence(sys.nodes, sys.edges);
          std::vector<int> via(sys.nodes, -1);
          std::vector<char> seen(sys.nodes, 0);
          std::deque<int> queue{sys.s};
          seen[sys.s] = 1;
          while (!queue.empty() && !seen[sys.t]) {
            int v = queue.front();
            queue.pop_front();
            for (int e : inc[v]) {
              if (costs[e] > t) continue;
              int w = sys.edges[e].u == v ? sys.edges[e].v : sys.edges[e].u;
              if (seen[w]) continue;
              seen[w] = 1;
              via[w] = e;
              queue.push_back(w);
            }
          }
          if (!seen[sys.t]) return std::nullopt;
          Subset path;
          for (int v = sys.t; v != sys.s;) {
            int e = via[v];
            path.push_back(e);
            v = sys.edges[e].u == v ? sys.edges[e].v : sys.edges[e].u;
          }
          std::sort(path.begin(), path.end());
          return path;
        } else if constexpr (std::is_same_v<T, TreeSystem>) {
          detail::UnionFind uf(sys.nodes);
          Subset tree;
          for (int e = 0; e < static_cast<int>(sys.edges.size()); ++e)
            if (costs[e] <= t && uf.unite(sys.edges[e].u, sys.edges[e].v)) tree.push_back(e);
          if (uf.components() != 1) return std::nullopt;
          return tree;
        } else if constexpr (std::is_same_v<T, AssignmentSystem>) {
          const int m = sys.m;
          std::vector<char> ok(m * m);
          for (int c = 0; c < m * m; ++c) ok[c] = costs[c] <= t;
          auto match = detail::max_matching(m, ok);
          Subset cells;
          for (int i = 0; i < m; ++i) {
            if (match[i] < 0) return std::nullopt;
            cells.push_back(i * m + match[i]);
          }
          return cells;
        } else {
          for (const Subset& s : sys.sets) {
            bool cheap = std::all_of(s.begin(), s.end(), [&](int j) { return costs[j] <= t; });
            if (cheap) return s;
          }
          return std::nullopt;
        }
      },
      system.structure());
}

bool feasible_at_threshold(const CombinatorialSystem& system, std::span<const double> costs, double t) {
  for (double c : costs) require(std::isfinite(c), ErrorKind::domain, "costs must be finite");
  return threshold_member(system, costs, t).has_value();
}

int min_member_size(const CombinatorialSystem& system) {
  return std::visit(
      [&](const auto& sys) -> int {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PathSystem>) {
          std::vector<double> zero(sys.edges.size(), 0.0);
          return static_cast<int>(threshold_member(system, zero, 0.0)->size());
        } else if constexpr (std::is_same_v<T, TreeSystem>) {
          return sys.nodes - 1;
        } else if constexpr (std::is_same_v<T, AssignmentSystem>) {
          return sys.m;
        } else {
          std::size_t best = sys.sets.front().size();
          for (const Subset& s : sys.sets) best = std::min(best, s.size());
          return static_cast<int>(best);
        }
      },
      system.structure());
}

int min_blocker_size(const CombinatorialSystem& system) {
  std::vector<double> ones(system.size(), 1.0);
  return static_cast<int>(std::lround(min_weight_blocker(system, ones).value));
}

BlockerSizeBound max_blocker_size(const CombinatorialSystem& system) {
  return std::visit(
      [&](const auto& sys) -> BlockerSizeBound {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PathSystem>) {
          if (sys.nodes > 20) return {static_cast<int>(sys.edges.size()), false};
          auto inc = detail::incidence(sys.nodes, sys.edges);
          auto comp = detail::reach(sys.nodes, sys.edges, inc, sys.s, {}, {});
          std::uint32_t pool = 0;
          for (int v = 0; v < sys.nodes; ++v)
            if (comp[v]) pool |= 1u << v;
          return {largest_bond(sys.nodes, sys.edges, pool, sys.s, sys.t), true};
        } else if constexpr (std::is_same_v<T, TreeSystem>) {
          if (sys.nodes > 20) return {static_cast<int>(sys.edges.size()), false};
          std::uint32_t pool = (1u << sys.nodes) - 1;
          return {largest_bond(sys.nodes, sys.edges, pool, 0, -1), true};
        } else if constexpr (std::is_same_v<T, AssignmentSystem>) {
          int best = 0;
          for (int a = 1; a <= sys.m; ++a) best = std::max(best, a * (sys.m + 1 - a));
          return {best, true};
        } else {
          if (system.size() > kBlockerEnumerationLimit) return {system.size(), false};
          std::size_t best = 0;
          for (const Subset& y : system.explicit_blocker()) best = std::max(best, y.size());
          return {static_cast<int>(best), true};
        }
      },
      system.structure());
}

bool intersects(const Subset& a, const Subset& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

}  // namespace drbcp
