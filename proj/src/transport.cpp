#include "wdro/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wdro/rng.hpp"

namespace wdro {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pow_p(double base, double p) {
  if (p == 1.0) return base;
  if (p == 2.0) return base * base;
  if (p == 3.0) return base * base * base;
  return std::pow(base, p);
}

std::vector<double> row_diff(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// O(K^3) assignment (Hungarian with potentials); cost is a square matrix.
double assignment_min_cost(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += cost[match[j] - 1][j - 1];
  return total;
}

bool kuhn_augment(int i, const std::vector<std::vector<char>>& adm, std::vector<char>& seen,
                  std::vector<int>& match_col) {
  const int n = static_cast<int>(adm.size());
  for (int j = 0; j < n; ++j) {
    if (!adm[i][j] || seen[j]) continue;
    seen[j] = 1;
    if (match_col[j] < 0 || kuhn_augment(match_col[j], adm, seen, match_col)) {
      match_col[j] = i;
      return true;
    }
  }
  return false;
}

// Smallest threshold c such that a perfect matching exists using only edges
// with cost <= c (min over matchings of the max edge).
double assignment_bottleneck(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : cost)
    for (double c : row) values.push_back(c);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  auto feasible = [&](double thr) {
    std::vector<std::vector<char>> adm(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) adm[i][j] = cost[i][j] <= thr;
    std::vector<int> match_col(n, -1);
    for (int i = 0; i < n; ++i) {
      std::vector<char> seen(n, 0);
      if (!kuhn_augment(i, adm, seen, match_col)) return false;
    }
    return true;
  };

  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(values[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[lo];
}

struct ClassView {
  std::vector<const std::vector<double>*> points;
  std::vector<double> weights;
  double mass = 0.0;
};

ClassView class_view(const LabelledDataset& d, double label) {
  ClassView v;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.labels()[i] == label) {
      v.points.push_back(&d.points()[i]);
      v.weights.push_back(d.weights()[i]);
      v.mass += d.weights()[i];
    }
  }
  return v;
}

bool uniform_weights(const ClassView& v) {
  const double expect = v.mass / static_cast<double>(v.weights.size());
  for (double w : v.weights)
    if (std::abs(w - expect) > 1e-12) return false;
  return true;
}

// Mass-splitting coupling along the lexicographic order of the points; a
// feasible coupling, hence an upper bound on the class transport cost.
double class_coupling_bound_pow(const ClassView& a, const ClassView& b, WOrder p,
                                const NormSpec& norm) {
  std::vector<std::size_t> oa(a.points.size()), ob(b.points.size());
  for (std::size_t i = 0; i < oa.size(); ++i) oa[i] = i;
  for (std::size_t i = 0; i < ob.size(); ++i) ob[i] = i;
  auto lex = [](const std::vector<double>& x, const std::vector<double>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  std::sort(oa.begin(), oa.end(),
            [&](std::size_t i, std::size_t j) { return lex(*a.points[i], *a.points[j]); });
  std::sort(ob.begin(), ob.end(),
            [&](std::size_t i, std::size_t j) { return lex(*b.points[i], *b.points[j]); });

  double acc = 0.0, maxgap = 0.0;
  std::size_t i = 0, j = 0;
  double wa = a.weights[oa[0]], wb = b.weights[ob[0]];
  while (true) {
    const double m = std::min(wa, wb);
    const double gap = norm_value(norm, row_diff(*a.points[oa[i]], *b.points[ob[j]]));
    if (p.infinite)
      maxgap = std::max(maxgap, gap);
    else
      acc += m * pow_p(gap, p.p);
    wa -= m;
    wb -= m;
    if (wa <= 0.0) {
      if (++i >= oa.size()) break;
      wa = a.weights[oa[i]];
    }
    if (wb <= 0.0) {
      if (++j >= ob.size()) break;
      wb = b.weights[ob[j]];
    }
  }
  return p.infinite ? maxgap : acc;
}

}  // namespace

double wasserstein_1d(const Empirical1D& f, const Empirical1D& g, WOrder p) {
  const auto& za = f.atoms();
  const auto& wa_all = f.weights();
  const auto& zb = g.atoms();
  const auto& wb_all = g.weights();

  double acc = 0.0, maxgap = 0.0;
  std::size_t i = 0, j = 0;
  double wa = wa_all[0], wb = wb_all[0];
  while (true) {
    const double m = std::min(wa, wb);
    const double gap = std::abs(za[i] - zb[j]);
    if (p.infinite)
      maxgap = std::max(maxgap, gap);
    else
      acc += m * pow_p(gap, p.p);
    wa -= m;
    wb -= m;
    if (wa <= 0.0) {
      if (++i >= za.size()) break;
      wa = wa_all[i];
    }
    if (wb <= 0.0) {
      if (++j >= zb.size()) break;
      wb = wb_all[j];
    }
  }
  if (p.infinite) return maxgap;
  return std::pow(acc, 1.0 / p.p);
}

CompositeDistance composite_distance(const LabelledDataset& a, const LabelledDataset& b, WOrder p,
                                     const NormSpec& norm) {
  if (a.dim() != b.dim()) throw std::invalid_argument("composite_distance: dimension mismatch");
  validate_norm(norm, a.dim());

  if (std::abs(a.label_mass(1.0) - b.label_mass(1.0)) > 1e-12) return {kInf, true};

  double acc = 0.0, maxgap = 0.0;
  bool exact = true;
  for (double label : {1.0, -1.0}) {
    const ClassView va = class_view(a, label);
    const ClassView vb = class_view(b, label);
    if (va.points.empty()) continue;

    if (a.dim() == 1) {
      std::vector<double> xa(va.points.size()), wa(va.weights), xb(vb.points.size()),
          wb(vb.weights);
      for (std::size_t i = 0; i < xa.size(); ++i) xa[i] = (*va.points[i])[0];
      for (std::size_t i = 0; i < xb.size(); ++i) xb[i] = (*vb.points[i])[0];
      for (double& w : wa) w /= va.mass;
      for (double& w : wb) w /= vb.mass;
      const double d = wasserstein_1d(Empirical1D(std::move(xa), std::move(wa)),
                                      Empirical1D(std::move(xb), std::move(wb)), p);
      if (p.infinite)
        maxgap = std::max(maxgap, d);
      else
        acc += va.mass * pow_p(d, p.p);
      continue;
    }

    const std::size_t ka = va.points.size(), kb = vb.points.size();
    if (ka == kb && ka <= 12 && uniform_weights(va) && uniform_weights(vb)) {
      std::vector<std::vector<double>> cost(ka, std::vector<double>(ka));
      for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < ka; ++j)
          cost[i][j] = norm_value(norm, row_diff(*va.points[i], *vb.points[j]));
      if (p.infinite) {
        maxgap = std::max(maxgap, assignment_bottleneck(cost));
      } else {
        for (auto& row : cost)
          for (double& c : row) c = pow_p(c, p.p);
        acc += (va.mass / static_cast<double>(ka)) * assignment_min_cost(cost);
      }
    } else {
      exact = false;
      const double bound = class_coupling_bound_pow(va, vb, p, norm);
      if (p.infinite)
        maxgap = std::max(maxgap, bound);
      else
        acc += bound;
    }
  }
  return {p.infinite ? maxgap : std::pow(acc, 1.0 / p.p), exact};
}

LabelledDataset lift_to_ball(const LabelledDataset& d0, std::span<const double> beta,
                             const NormSpec& norm, std::span<const double> t) {
  if (t.size() != d0.size()) throw std::invalid_argument("lift: perturbation size mismatch");
  const double bstar = dual_norm(beta, norm);
  if (!(bstar > 0.0)) throw std::invalid_argument("lift: beta must be nonzero");
  const std::vector<double> b0 = dual_maximizer(beta, norm);

  std::vector<std::vector<double>> points = d0.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double step = t[i] / (d0.labels()[i] * bstar);
    for (std::size_t j = 0; j < points[i].size(); ++j) points[i][j] += step * b0[j];
  }
  return LabelledDataset(d0.labels(), std::move(points), d0.weights());
}

MembershipReport projection_membership_check(const LabelledDataset& d0,
                                             std::span<const double> beta, const BallSpec& ball,
                                             int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("membership check: trials must be >= 1");
  const double eps = ball.epsilon;
  const double bstar = dual_norm(beta, ball.norm);
  const Empirical1D proj0 = project_pushforward(d0, beta);
  const std::vector<double> proj_rows0 = project_rows(d0, beta);
  const std::size_t n = d0.size();

  MembershipReport report;
  report.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(trial));

    // Direction 1: a dataset perturbed within the big ball must project into
    // the small ball.
    std::vector<double> radius(n, 0.0);
    if (eps > 0.0) {
      if (ball.p.infinite) {
        const double cap = eps * rng.uniform01();
        for (double& r : radius) r = cap * rng.uniform01();
      } else {
        for (double& r : radius) r = std::abs(rng.normal());
        double norm_p = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          norm_p += d0.weights()[i] * pow_p(radius[i], ball.p.p);
        norm_p = std::pow(norm_p, 1.0 / ball.p.p);
        const double target = eps * rng.uniform01();
        if (norm_p > 0.0)
          for (double& r : radius) r *= target / norm_p;
      }
    }
    std::vector<std::vector<double>> points = d0.points();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> dir(d0.dim());
      for (double& v : dir) v = rng.normal();
      double ng = norm_value(ball.norm, dir);
      if (ng == 0.0) {
        dir.assign(d0.dim(), 0.0);
        dir[0] = 1.0;
        ng = norm_value(ball.norm, dir);
      }
      for (std::size_t j = 0; j < dir.size(); ++j) points[i][j] += radius[i] * dir[j] / ng;
    }
    const LabelledDataset perturbed(d0.labels(), std::move(points), d0.weights());
    const double w1 = wasserstein_1d(project_pushforward(perturbed, beta), proj0, ball.p);
    if (w1 <= eps * bstar + 1e-9) {
      ++report.pass_pushforward;
    } else {
      report.failures.push_back("trial " + std::to_string(trial) + ": pushforward distance " +
                                std::to_string(w1) + " exceeds " + std::to_string(eps * bstar));
    }

    // Direction 2: a 1-D target in the small ball must lift into the big ball
    // and project back exactly.
    if (!(bstar > 0.0)) continue;
    std::vector<double> t(n, 0.0);
    if (eps > 0.0) {
      for (double& v : t) v = rng.normal();
      if (ball.p.infinite) {
        double mx = 0.0;
        for (double v : t) mx = std::max(mx, std::abs(v));
        const double target = eps * bstar * rng.uniform01();
        if (mx > 0.0)
          for (double& v : t) v *= target / mx;
      } else {
        double norm_p = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          norm_p += d0.weights()[i] * pow_p(std::abs(t[i]), ball.p.p);
        norm_p = std::pow(norm_p, 1.0 / ball.p.p);
        const double target = eps * bstar * rng.uniform01();
        if (norm_p > 0.0)
          for (double& v : t) v *= target / norm_p;
      }
    }
    const LabelledDataset lifted = lift_to_ball(d0, beta, ball.norm, t);
    const std::vector<double> proj_lifted = project_rows(lifted, beta);
    double max_err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      max_err = std::max(max_err, std::abs(proj_lifted[i] - (proj_rows0[i] + t[i])));
    const CompositeDistance cd = composite_distance(d0, lifted, ball.p, ball.norm);
    if (max_err <= 1e-9 && cd.value <= eps + 1e-9) {
      ++report.pass_lift;
    } else {
      report.failures.push_back("trial " + std::to_string(trial) + ": lift projection error " +
                                std::to_string(max_err) + ", composite distance " +
                                std::to_string(cd.value) + " vs radius " + std::to_string(eps));
    }
  }
  return report;
}

}  // namespace wdro
