#include "drbcp/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "drbcp/members.hpp"
#include "drbcp/stats.hpp"
#include "drbcp/uncertainty.hpp"
#include "parallel.hpp"
#include "radius_common.hpp"

namespace drbcp {

double simplex_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                        const std::vector<double>& c, std::vector<double>* solution) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  const int width = n + m + 1;
  const double eps = 1e-12;
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    require(static_cast<int>(A[i].size()) == n, ErrorKind::dimension, "simplex row width mismatch");
    require(b[i] >= 0.0, ErrorKind::domain, "simplex needs b >= 0");
    std::copy(A[i].begin(), A[i].end(), T[i].begin());
    T[i][n + i] = 1.0;
    T[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) T[m][j] = -c[j];

  for (int iter = 0;; ++iter) {
    require(iter < 100000, ErrorKind::numerical_convergence, "simplex did not terminate");
    int enter = -1;
    for (int j = 0; j < n + m && enter < 0; ++j)
      if (T[m][j] < -eps) enter = j;
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= eps) continue;
      double ratio = T[i][width - 1] / T[i][enter];
      if (ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    require(leave >= 0, ErrorKind::numerical_convergence, "linear program is unbounded");
    const double pivot = T[leave][enter];
    for (double& v : T[leave]) v /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0.0) continue;
      const double f = T[i][enter];
      for (int j = 0; j < width; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  if (solution) {
    solution->assign(n, 0.0);
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) (*solution)[basis[i]] = T[i][width - 1];
  }
  return T[m][width - 1];
}

namespace {

void project_to_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double running = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    running += u[j];
    double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - tau);
}

struct FamilyData {
  std::vector<int> support;                 // union of the pieces
  std::vector<std::vector<int>> local;      // piece -> positions in support
  std::vector<double> base;                 // sum of cbar over each piece
};

FamilyData describe(const SetFamily& y, std::span<const double> cbar) {
  FamilyData f;
  for (const Subset& s : y) f.support.insert(f.support.end(), s.begin(), s.end());
  std::sort(f.support.begin(), f.support.end());
  f.support.erase(std::unique(f.support.begin(), f.support.end()), f.support.end());
  for (const Subset& s : y) {
    std::vector<int> pos;
    double total = 0.0;
    for (int j : s) {
      pos.push_back(static_cast<int>(std::lower_bound(f.support.begin(), f.support.end(), j) - f.support.begin()));
      total += cbar[j];
    }
    f.local.push_back(std::move(pos));
    f.base.push_back(total);
  }
  return f;
}

double linear_value(const FamilyData& f, double theta) {
  const int p = static_cast<int>(f.support.size());
  const double floor = *std::min_element(f.base.begin(), f.base.end());
  // variables: u (gain over the smallest piece sum), beta_1..beta_p
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t s = 0; s < f.local.size(); ++s) {
    std::vector<double> row(p + 1, 0.0);
    row[0] = 1.0;
    for (int pos : f.local[s]) row[pos + 1] -= 1.0;
    A.push_back(std::move(row));
    b.push_back(f.base[s] - floor);
  }
  std::vector<double> budget(p + 1, 1.0);
  budget[0] = 0.0;
  A.push_back(std::move(budget));
  b.push_back(theta);
  std::vector<double> objective(p + 1, 0.0);
  objective[0] = 1.0;
  return floor + simplex_maximize(A, b, objective);
}

// Dual: min over the simplex of mu.base + theta * ||A^T mu||_{r*}, solved by
// accelerated projected gradient; returns the best primal value recovered.
double norm_value(const FamilyData& f, double theta, double r) {
  const int k = static_cast<int>(f.base.size());
  const int p = static_cast<int>(f.support.size());
  const double dual_order = r / (r - 1.0);

  auto cover = [&](const std::vector<double>& mu) {
    std::vector<double> w(p, 0.0);
    for (int s = 0; s < k; ++s)
      for (int pos : f.local[s]) w[pos] += mu[s];
    return w;
  };
  auto norm = [&](const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += std::pow(x, dual_order);
    return std::pow(total, 1.0 / dual_order);
  };
  auto dual = [&](const std::vector<double>& mu) {
    double value = theta * norm(cover(mu));
    for (int s = 0; s < k; ++s) value += mu[s] * f.base[s];
    return value;
  };
  // Unit-norm maximizer of w.beta over ||beta||_r <= 1.
  auto direction = [&](const std::vector<double>& w) {
    double nw = norm(w);
    std::vector<double> g(p);
    for (int j = 0; j < p; ++j) g[j] = std::pow(w[j] / nw, dual_order - 1.0);
    return g;
  };
  auto gradient = [&](const std::vector<double>& mu) {
    auto g = direction(cover(mu));
    std::vector<double> grad(f.base);
    for (int s = 0; s < k; ++s)
      for (int pos : f.local[s]) grad[s] += theta * g[pos];
    return grad;
  };
  auto primal = [&](const std::vector<double>& mu) {
    auto g = direction(cover(mu));
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < k; ++s) {
      double v = f.base[s];
      for (int pos : f.local[s]) v += theta * g[pos];
      worst = std::min(worst, v);
    }
    return worst;
  };

  std::vector<double> x(k, 1.0 / k), yv = x;
  double step_inv = 1.0, momentum = 1.0;
  double best_primal = primal(x), best_dual = dual(x);
  for (int iter = 0; iter < 200000; ++iter) {
    if (best_dual - best_primal <= 1e-11 * (1.0 + std::abs(best_dual))) break;
    auto grad = gradient(yv);
    const double fy = dual(yv);
    std::vector<double> z(k);
    for (int attempt = 0; attempt < 60; ++attempt) {
      for (int s = 0; s < k; ++s) z[s] = yv[s] - grad[s] / step_inv;
      project_to_simplex(z);
      double model = fy, dist = 0.0;
      for (int s = 0; s < k; ++s) {
        model += grad[s] * (z[s] - yv[s]);
        dist += (z[s] - yv[s]) * (z[s] - yv[s]);
      }
      if (dual(z) <= model + 0.5 * step_inv * dist + 1e-15) break;
      step_inv *= 2.0;
    }
    const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    for (int s = 0; s < k; ++s) yv[s] = z[s] + ((momentum - 1.0) / next) * (z[s] - x[s]);
    momentum = next;
    x = z;
    best_primal = std::max(best_primal, primal(x));
    best_dual = std::min(best_dual, dual(x));
  }
  return best_primal;
}

bool pairwise_disjoint(const SetFamily& y) {
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = a + 1; b < y.size(); ++b)
      if (intersects(y[a], y[b])) return false;
  return true;
}

}  // namespace

double gamma_family_value(const SetFamily& y, std::span<const double> cbar, double theta, double r) {
  require(!y.empty(), ErrorKind::domain, "empty gamma-blocker member");
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "r must be >= 1");
  FamilyData f = describe(y, cbar);
  if (theta == 0.0) return *std::min_element(f.base.begin(), f.base.end());
  if (pairwise_disjoint(y)) {
    const double size = static_cast<double>(y.front().size());
    return t_star_closed_form(f.base, std::pow(size, (r - 1.0) / r) * theta, r);
  }
  if (r == 1.0) return linear_value(f, theta);
  return norm_value(f, theta, r);
}

GammaQuote gamma_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double r, int gamma,
                   bool want_exact, Execution exec) {
  require(scenarios.n == system.size(), ErrorKind::dimension, "scenario width differs from the ground set size");
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "r must be >= 1");
  require_gamma_feasible(system, gamma);

  GammaQuote quote;
  std::vector<double> saa(scenarios.N);
  detail::parallel_for(scenarios.N, exec,
                       [&](int k) { saa[k] = gamma_sum_value(system, scenarios.row(k), gamma).value; });
  quote.saa = canonical_mean(saa);

  std::vector<SetFamily> blocker;
  bool have_blocker = false;
  try {
    auto members = brute_force_members(system);
    blocker = gamma_blocker_enumerate(antichain_reduce(members, system.size()), gamma);
    have_blocker = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::enumeration_limit) throw;
  }

  quote.max_union_size = system.size();
  if (have_blocker) {
    quote.union_exact = true;
    quote.max_union_size = 0;
    for (const SetFamily& y : blocker) {
      Subset all;
      for (const Subset& s : y) all.insert(all.end(), s.begin(), s.end());
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      quote.max_union_size = std::max(quote.max_union_size, static_cast<int>(all.size()));
    }
  }
  const double g = static_cast<double>(gamma);
  quote.lower = quote.saa + g * theta / std::pow(static_cast<double>(quote.max_union_size), 1.0 / r);
  quote.upper = quote.saa + std::pow(g, (r - 1.0) / r) * theta;

  if (want_exact && gamma == 1) {
    quote.exact = drbcp_u(system, scenarios, AmbiguityConfig::wasserstein(theta, r), Sense::cost, exec).v_U;
  } else if (want_exact && have_blocker) {
    std::vector<double> values(scenarios.N);
    detail::parallel_for(scenarios.N, exec, [&](int k) {
      double best = -std::numeric_limits<double>::infinity();
      for (const SetFamily& y : blocker) best = std::max(best, gamma_family_value(y, scenarios.row(k), theta, r));
      values[k] = best;
    });
    quote.exact = canonical_mean(values);
  } else if (want_exact) {
    quote.downgraded = true;
  }
  return quote;
}

GammaRadius radius_gamma_u(int N, double sigma, double epsilon, int gamma, double r, int max_union_size) {
  require(gamma >= 1 && r >= 1.0 && max_union_size >= 1, ErrorKind::domain,
          "need gamma >= 1, r >= 1 and a positive union size");
  const double rate = detail::concentration_rate(N, sigma, epsilon);
  const double g = static_cast<double>(gamma);
  return GammaRadius{rate * std::pow(static_cast<double>(max_union_size), 1.0 / r) / g,
                     rate * std::pow(g, -(r - 1.0) / r)};
}

}  // namespace drbcp
