#include "graph_algos.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace drbcp::detail {

std::vector<std::vector<int>> incidence(int nodes, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> inc(nodes);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    inc[edges[e].u].push_back(e);
    inc[edges[e].v].push_back(e);
  }
  return inc;
}

std::vector<char> reach(int nodes, const std::vector<Edge>& edges, const std::vector<std::vector<int>>& inc,
                        int start, const std::vector<char>& allowed, const std::vector<char>& blocked) {
  std::vector<char> seen(nodes, 0);
  if (!blocked.empty() && blocked[start]) return seen;
  std::deque<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : inc[v]) {
      if (!allowed.empty() && !allowed[e]) continue;
      int w = edges[e].u == v ? edges[e].v : edges[e].u;
      if (seen[w] || (!blocked.empty() && blocked[w])) continue;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return seen;
}

namespace {

// Given a connected shore `first` (label 1), label as 2 the component of `anchor`
// in the graph with shore 1 removed; the edges between the two form a minimal cut.
std::vector<char> close_shores(int nodes, const std::vector<Edge>& edges, const std::vector<std::vector<int>>& inc,
                               const std::vector<char>& first, int anchor) {
  std::vector<char> second = reach(nodes, edges, inc, anchor, {}, first);
  std::vector<char> label(nodes, 0);
  for (int v = 0; v < nodes; ++v) {
    if (first[v]) label[v] = 1;
    else if (second[v]) label[v] = 2;
  }
  return label;
}

}  // namespace

std::vector<char> min_st_cut_shores(int nodes, const std::vector<Edge>& edges, std::span<const double> w,
                                    int s, int t) {
  const int m = static_cast<int>(edges.size());
  std::vector<int> head(2 * m);
  std::vector<double> residual(2 * m);
  std::vector<std::vector<int>> out(nodes);
  double total = 0.0;
  for (int e = 0; e < m; ++e) {
    head[2 * e] = edges[e].v;
    head[2 * e + 1] = edges[e].u;
    residual[2 * e] = residual[2 * e + 1] = w[e];
    out[edges[e].u].push_back(2 * e);
    out[edges[e].v].push_back(2 * e + 1);
    total += w[e];
  }
  const double eps = 1e-12 * std::max(1.0, total);

  std::vector<int> via(nodes);
  auto bfs = [&]() {
    std::fill(via.begin(), via.end(), -1);
    std::vector<char> seen(nodes, 0);
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int a : out[v]) {
        if (residual[a] <= eps || seen[head[a]]) continue;
        seen[head[a]] = 1;
        via[head[a]] = a;
        queue.push_back(head[a]);
      }
    }
    return seen;
  };

  std::vector<char> seen = bfs();
  while (seen[t]) {
    double push = std::numeric_limits<double>::infinity();
    for (int v = t; v != s; v = head[via[v] ^ 1]) push = std::min(push, residual[via[v]]);
    for (int v = t; v != s; v = head[via[v] ^ 1]) {
      residual[via[v]] -= push;
      residual[via[v] ^ 1] += push;
    }
    seen = bfs();
  }
  auto inc = incidence(nodes, edges);
  return close_shores(nodes, edges, inc, seen, t);
}

std::vector<char> global_min_cut_shores(int nodes, const std::vector<Edge>& edges,
                                        std::span<const double> w) {
  std::vector<std::vector<double>> weight(nodes, std::vector<double>(nodes, 0.0));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    weight[edges[e].u][edges[e].v] += w[e];
    weight[edges[e].v][edges[e].u] += w[e];
  }
  std::vector<std::vector<int>> group(nodes);
  for (int v = 0; v < nodes; ++v) group[v] = {v};
  std::vector<int> active(nodes);
  std::iota(active.begin(), active.end(), 0);

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_group;
  while (active.size() > 1) {
    const int k = static_cast<int>(active.size());
    std::vector<double> key(k, 0.0);
    std::vector<char> added(k, 0);
    int prev = -1, last = -1;
    for (int i = 0; i < k; ++i) {
      int pick = -1;
      for (int j = 0; j < k; ++j)
        if (!added[j] && (pick < 0 || key[j] > key[pick])) pick = j;
      added[pick] = 1;
      prev = last;
      last = pick;
      for (int j = 0; j < k; ++j)
        if (!added[j]) key[j] += weight[active[pick]][active[j]];
    }
    if (key[last] < best) {
      best = key[last];
      best_group = group[active[last]];
    }
    int a = active[prev], b = active[last];
    group[a].insert(group[a].end(), group[b].begin(), group[b].end());
    for (int v = 0; v < nodes; ++v) {
      weight[a][v] += weight[b][v];
      weight[v][a] = weight[a][v];
    }
    weight[a][a] = 0.0;
    active.erase(active.begin() + last);
  }

  auto inc = incidence(nodes, edges);
  std::vector<char> in_group(nodes, 0);
  for (int v : best_group) in_group[v] = 1;
  std::vector<char> outside(nodes, 0);
  for (int v = 0; v < nodes; ++v) outside[v] = !in_group[v];
  int root = *std::min_element(best_group.begin(), best_group.end());
  std::vector<char> first = reach(nodes, edges, inc, root, {}, outside);
  int anchor = 0;
  while (first[anchor]) ++anchor;
  return close_shores(nodes, edges, inc, first, anchor);
}

std::vector<int> max_matching(int m, const std::vector<char>& cell_ok) {
  std::vector<int> match_row(m, -1), match_col(m, -1);
  std::vector<char> visited(m);
  auto augment = [&](auto&& self, int row) -> bool {
    for (int col = 0; col < m; ++col) {
      if (!cell_ok[row * m + col] || visited[col]) continue;
      visited[col] = 1;
      if (match_col[col] < 0 || self(self, match_col[col])) {
        match_col[col] = row;
        match_row[row] = col;
        return true;
      }
    }
    return false;
  };
  for (int row = 0; row < m; ++row) {
    std::fill(visited.begin(), visited.end(), 0);
    augment(augment, row);
  }
  return match_row;
}

}  // namespace drbcp::detail
