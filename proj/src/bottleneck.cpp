#include "drbcp/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "drbcp/members.hpp"
#include "drbcp/stats.hpp"
#include "graph_algos.hpp"

namespace drbcp {

namespace {

void require_costs(const CombinatorialSystem& system, std::span<const double> c) {
  require(static_cast<int>(c.size()) == system.size(), ErrorKind::dimension, "cost vector length differs from n");
  for (double v : c) require(std::isfinite(v), ErrorKind::domain, "costs must be finite");
}

std::vector<double> distinct_sorted(std::span<const double> c) {
  std::vector<double> values(c.begin(), c.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

double threshold_search(const CombinatorialSystem& system, std::span<const double> c) {
  auto values = distinct_sorted(c);
  std::size_t lo = 0, hi = values.size() - 1;
  require(feasible_at_threshold(system, c, values[hi]), ErrorKind::invalid_instance, "system has no member");
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible_at_threshold(system, c, values[mid])) hi = mid;
    else lo = mid + 1;
  }
  return values[lo];
}

// Row set h and column set k with |h|+|k| = m+1 avoiding every cell cheaper than z.
BlockerElement hall_witness(int m, std::span<const double> c, double z) {
  std::vector<char> cheap(m * m);
  for (int i = 0; i < m * m; ++i) cheap[i] = c[i] < z;
  auto match_row = detail::max_matching(m, cheap);
  std::vector<int> match_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (match_row[i] >= 0) match_col[match_row[i]] = i;
  int start = 0;
  while (match_row[start] >= 0) ++start;

  std::vector<char> row_in(m, 0), col_in(m, 0);
  std::deque<int> queue{start};
  row_in[start] = 1;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < m; ++j) {
      if (!cheap[i * m + j] || col_in[j]) continue;
      col_in[j] = 1;
      int next = match_col[j];
      if (next >= 0 && !row_in[next]) {
        row_in[next] = 1;
        queue.push_back(next);
      }
    }
  }
  BlockerElement y;
  y.tag = BlockerTag::submatrix;
  for (int i = 0; i < m; ++i)
    if (row_in[i]) y.rows.push_back(i);
  for (int j = 0; j < m; ++j)
    if (!col_in[j]) y.cols.push_back(j);
  while (static_cast<int>(y.rows.size() + y.cols.size()) > m + 1) {
    if (y.cols.size() > 1) y.cols.pop_back();
    else y.rows.pop_back();
  }
  for (int i : y.rows)
    for (int j : y.cols) y.elements.push_back(i * m + j);
  std::sort(y.elements.begin(), y.elements.end());
  return y;
}

// Greedy shrink of {j : c_j >= z} to a minimal hitting set of the family.
BlockerElement explicit_witness(const std::vector<Subset>& sets, int n, std::span<const double> c, double z) {
  std::vector<char> in(n, 0);
  for (int j = 0; j < n; ++j) in[j] = c[j] >= z;
  auto hits_all = [&]() {
    for (const Subset& s : sets)
      if (std::none_of(s.begin(), s.end(), [&](int j) { return in[j]; })) return false;
    return true;
  };
  for (int j = n - 1; j >= 0; --j) {
    if (!in[j]) continue;
    in[j] = 0;
    if (!hits_all()) in[j] = 1;
  }
  BlockerElement y;
  for (int j = 0; j < n; ++j)
    if (in[j]) y.elements.push_back(j);
  return y;
}

std::vector<double> below_indicator(std::span<const double> c, double t) {
  std::vector<double> w(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) w[j] = c[j] < t ? 1.0 : 0.0;
  return w;
}

class GammaSearch final : public MemberVisitor {
 public:
  GammaSearch(std::span<const double> c, int gamma) : c_(c), gamma_(gamma) {}

  bool enter(int element) override {
    forced_.push_back(c_[element]);
    if (static_cast<int>(forced_.size()) < gamma_ || best_.argmin.empty()) return true;
    return top_sum(forced_, gamma_) <= best_.value;
  }
  void leave(int) override { forced_.pop_back(); }
  void member(const std::vector<int>& elements) override {
    std::vector<double> costs;
    for (int j : elements) costs.push_back(c_[j]);
    double value = top_sum(costs, gamma_);
    Subset x = elements;
    std::sort(x.begin(), x.end());
    if (best_.argmin.empty() || value < best_.value || (value == best_.value && x < best_.argmin)) {
      best_.value = value;
      best_.argmin = std::move(x);
    }
  }
  GammaSumResult result() const { return best_; }

 private:
  std::span<const double> c_;
  int gamma_;
  std::vector<double> forced_;
  GammaSumResult best_;
};

}  // namespace

double bottleneck_cost(const CombinatorialSystem& system, std::span<const double> c) {
  require_costs(system, c);
  return threshold_search(system, c);
}

BottleneckResult bottleneck_value(const CombinatorialSystem& system, std::span<const double> c) {
  require_costs(system, c);
  BottleneckResult out;
  out.value = threshold_search(system, c);
  out.argmin = *threshold_member(system, c, out.value);
  const double z = out.value;
  std::visit(
      [&](const auto& sys) {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, AssignmentSystem>) {
          out.dual_witness = hall_witness(sys.m, c, z);
        } else if constexpr (std::is_same_v<T, ExplicitSystem>) {
          out.dual_witness = explicit_witness(sys.sets, system.size(), c, z);
        } else {
          auto w = below_indicator(c, z);
          auto cut = min_weight_blocker(system, w);
          require(cut.value == 0.0, ErrorKind::invariant_violation, "no blocker element avoids the cheap elements");
          out.dual_witness = std::move(cut.witness);
        }
      },
      system.structure());
  double dual = std::numeric_limits<double>::infinity();
  for (int j : out.dual_witness.elements) dual = std::min(dual, c[j]);
  require(dual == z, ErrorKind::invariant_violation, "dual witness does not attain the bottleneck value");
  return out;
}

double dual_bottleneck_value(const CombinatorialSystem& system, std::span<const double> c) {
  require_costs(system, c);
  if (system.kind() == SystemKind::explicit_family) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Subset& y : system.explicit_blocker()) {
      double low = std::numeric_limits<double>::infinity();
      for (int j : y) low = std::min(low, c[j]);
      best = std::max(best, low);
    }
    return best;
  }
  // Largest t for which some blocker element avoids every element cheaper than t.
  auto values = distinct_sorted(c);
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    auto w = below_indicator(c, values[mid]);
    if (min_weight_blocker(system, w).value == 0.0) lo = mid;
    else hi = mid - 1;
  }
  return values[lo];
}

void require_gamma_feasible(const CombinatorialSystem& system, int gamma) {
  require(gamma >= 1, ErrorKind::domain, "gamma must be a positive integer");
  require(gamma <= min_member_size(system), ErrorKind::domain,
          "gamma exceeds the size of the smallest member of X");
}

GammaSumResult gamma_sum_value(const CombinatorialSystem& system, std::span<const double> c, int gamma) {
  require_costs(system, c);
  require_gamma_feasible(system, gamma);
  GammaSearch search(c, gamma);
  for_each_member(system, search);
  return search.result();
}

std::vector<SetFamily> gamma_blocker_enumerate(const Clutter& clutter, int gamma) {
  const int n = clutter.ground_size();
  require(gamma >= 1, ErrorKind::domain, "gamma must be a positive integer");
  require(n <= 8 && gamma <= 3, ErrorKind::enumeration_limit, "gamma-blocker enumeration needs n <= 8 and gamma <= 3");
  std::vector<Subset> pieces;
  Subset current;
  auto choose = [&](auto&& self, int from) -> void {
    if (static_cast<int>(current.size()) == gamma) {
      pieces.push_back(current);
      return;
    }
    for (int j = from; j < n; ++j) {
      current.push_back(j);
      self(self, j + 1);
      current.pop_back();
    }
  };
  choose(choose, 0);

  std::vector<Subset> hyperedges;
  for (const Subset& h : clutter.members()) {
    require(static_cast<int>(h.size()) >= gamma, ErrorKind::domain, "a clutter member is smaller than gamma");
    Subset edge;
    for (int p = 0; p < static_cast<int>(pieces.size()); ++p)
      if (std::includes(h.begin(), h.end(), pieces[p].begin(), pieces[p].end())) edge.push_back(p);
    hyperedges.push_back(std::move(edge));
  }
  std::vector<SetFamily> out;
  for (const Subset& y : minimal_transversals(static_cast<int>(pieces.size()), hyperedges)) {
    SetFamily family;
    for (int p : y) family.push_back(pieces[p]);
    out.push_back(std::move(family));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace drbcp
