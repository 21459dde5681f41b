#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "drbcp/instances.hpp"

namespace drbcp::detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    --components_;
    return true;
  }
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  int components_;
};

// Edge ids incident to each vertex, ascending.
std::vector<std::vector<int>> incidence(int nodes, const std::vector<Edge>& edges);

// Shore labels of a minimal cut: 1 and 2 mark the two connected shores whose
// crossing edges form the cut, 0 marks vertices on neither.
//
// Undirected s-t minimum cut on real capacities (shortest augmenting paths).
std::vector<char> min_st_cut_shores(int nodes, const std::vector<Edge>& edges, std::span<const double> w,
                                    int s, int t);

// Global minimum cut of a connected graph (Stoer-Wagner).
std::vector<char> global_min_cut_shores(int nodes, const std::vector<Edge>& edges,
                                        std::span<const double> w);

// Vertices reachable from `start` using edges with allowed[e] and vertices with !blocked[v].
std::vector<char> reach(int nodes, const std::vector<Edge>& edges, const std::vector<std::vector<int>>& inc,
                        int start, const std::vector<char>& allowed, const std::vector<char>& blocked);

// Maximum bipartite matching on an m x m cell mask; match_row[i] = column or -1.
std::vector<int> max_matching(int m, const std::vector<char>& cell_ok);

}  // namespace drbcp::detail
