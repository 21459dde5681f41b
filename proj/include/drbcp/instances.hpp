#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "drbcp/errors.hpp"

namespace drbcp {

// Element ids sorted ascending.
using Subset = std::vector<int>;

struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;
};

struct Edge {
  int u = 0;
  int v = 0;
};

struct PathSystem {
  int nodes = 0;
  std::vector<Edge> edges;
  int s = 0;
  int t = 1;
};

struct TreeSystem {
  int nodes = 0;
  std::vector<Edge> edges;
};

// Ground element i*m + j is the cell in row i, column j.
struct AssignmentSystem {
  int m = 0;
};

struct ExplicitSystem {
  std::vector<Subset> sets;
};

enum class SystemKind { path, tree, assignment, explicit_family };

const char* to_string(SystemKind kind);

class CombinatorialSystem {
 public:
  using Structure = std::variant<PathSystem, TreeSystem, AssignmentSystem, ExplicitSystem>;

  static CombinatorialSystem path(int nodes, std::vector<Edge> edges, int s, int t);
  static CombinatorialSystem tree(int nodes, std::vector<Edge> edges);
  static CombinatorialSystem assignment(int m);
  static CombinatorialSystem explicit_family(int n, std::vector<Subset> sets);

  int size() const { return ground_.n; }
  SystemKind kind() const;
  const GroundSet& ground() const { return ground_; }
  const Structure& structure() const { return structure_; }
  void set_labels(std::vector<std::string> labels);

  // Blocker of an explicit family, computed once on first use (n <= 20).
  const std::vector<Subset>& explicit_blocker() const;

 private:
  CombinatorialSystem(GroundSet ground, Structure structure);

  struct Cache;
  GroundSet ground_;
  Structure structure_;
  std::shared_ptr<Cache> cache_;
};

class Clutter {
 public:
  Clutter(int ground_size, std::vector<Subset> members);
  int ground_size() const { return n_; }
  const std::vector<Subset>& members() const { return members_; }
  bool operator==(const Clutter&) const = default;

 private:
  int n_;
  std::vector<Subset> members_;
};

enum class BlockerTag { cut, submatrix, raw };

struct BlockerElement {
  Subset elements;
  BlockerTag tag = BlockerTag::raw;
  std::vector<int> side;  // cut: vertices on one shore
  std::vector<int> rows;  // submatrix
  std::vector<int> cols;
};

struct WeightedBlocker {
  double value = 0.0;
  BlockerElement witness;
};

inline constexpr int kBlockerEnumerationLimit = 20;

// Drops duplicates and members strictly containing another member.
// Ground size is inferred from the largest element when n < 0.
Clutter antichain_reduce(const std::vector<Subset>& family, int n = -1);

// All minimal subsets of [n] meeting every member.
std::vector<Subset> minimal_transversals(int n, const std::vector<Subset>& family);

std::vector<BlockerElement> blocker_enumerate(const Clutter& clutter,
                                              int limit = kBlockerEnumerationLimit);

WeightedBlocker min_weight_blocker(const CombinatorialSystem& system, std::span<const double> weights);

bool feasible_at_threshold(const CombinatorialSystem& system, std::span<const double> costs, double t);

// Member using only elements with cost <= t, if any.
std::optional<Subset> threshold_member(const CombinatorialSystem& system, std::span<const double> costs,
                                       double t);

// Smallest cardinality of a member of X.
int min_member_size(const CombinatorialSystem& system);

struct BlockerSizeBound {
  int size = 0;
  bool exact = false;
};

// max |y| over the blocker; an upper bound when exact enumeration is out of reach.
BlockerSizeBound max_blocker_size(const CombinatorialSystem& system);

// min |y| over the blocker.
int min_blocker_size(const CombinatorialSystem& system);

bool intersects(const Subset& a, const Subset& b);

}  // namespace drbcp
