#pragma once

#include <vector>

#include "drbcp/instances.hpp"

namespace drbcp {

// Depth-first walk over the members of X. Each member is built one element at a
// time; enter() returning false prunes everything below. Every enter() is matched
// by a leave(), pruned or not.
class MemberVisitor {
 public:
  virtual ~MemberVisitor() = default;
  virtual bool enter(int element) = 0;
  virtual void leave(int element) = 0;
  // Elements in insertion order.
  virtual void member(const std::vector<int>& elements) = 0;
};

void for_each_member(const CombinatorialSystem& system, MemberVisitor& visitor);

struct MemberLimits {
  int max_graph_nodes = 8;
  int max_assignment_side = 4;
  int max_explicit_members = 512;
};

// Throws enumeration_limit when the system is beyond `limits`.
void require_enumerable(const CombinatorialSystem& system, const MemberLimits& limits = {});

// Every member of X, each sorted, in lexicographic order.
std::vector<Subset> brute_force_members(const CombinatorialSystem& system, bool force = false);

}  // namespace drbcp
