#include "bmetro/scalar_optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bmetro/error.hpp"

namespace bmetro {

std::vector<double> make_grid(double lo, double hi, int points, bool log_grid) {
  if (points < 2) throw_invalid("grid needs at least two points");
  if (!(hi > lo)) throw_invalid("grid requires hi > lo");
  if (log_grid && !(lo > 0.0)) throw_invalid("log grid requires lo > 0");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / (points - 1);
    g[i] = log_grid ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo))) : lo + u * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol, int max_iterations) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations; ++it) {
    if (std::abs(b - a) <= rel_tol * 0.5 * (std::abs(a) + std::abs(b))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarOptimum best{0.5 * (a + b), 0.0};
  best.value = f(best.x);
  // endpoints of the original bracket may beat the interior estimate
  for (double x : {lo, hi}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

ScalarOptimum maximize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                const MaximizeOptions& options) {
  const std::vector<double> grid = make_grid(lo, hi, options.prescan_points, options.log_grid);
  std::vector<double> y(grid.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    y[i] = f(grid[i]);
    if (!std::isfinite(y[i])) throw_numerical("objective is not finite on the prescan grid");
    scale = std::max(scale, std::abs(y[i]));
  }
  // The sampled sequence must rise then fall (flat steps ignored).
  const double flat = 1e-12 * std::max(scale, 1e-300);
  bool descending = false;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double dy = y[i] - y[i - 1];
    if (std::abs(dy) <= flat) continue;
    if (dy < 0.0) {
      descending = true;
    } else if (descending) {
      std::ostringstream os;
      os << "objective is not unimodal on [" << lo << ", " << hi << "] (rises again near x = " << grid[i]
         << "); use maximize_on_grid";
      throw_numerical(os.str());
    }
  }
  const auto k = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double a = grid[k == 0 ? 0 : k - 1];
  const double b = grid[std::min(k + 1, grid.size() - 1)];
  ScalarOptimum best = golden_section_maximize(f, a, b, options.rel_tol, options.max_iterations);
  if (y[k] > best.value) best = {grid[k], y[k]};
  return best;
}

ScalarOptimum maximize_on_grid(const std::function<double(double)>& f, double lo, double hi, int points,
                               bool log_grid, double rel_tol) {
  const std::vector<double> grid = make_grid(lo, hi, points, log_grid);
  std::size_t k = 0;
  double best = -INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best) {
      best = v;
      k = i;
    }
  }
  const double a = grid[k == 0 ? 0 : k - 1];
  const double b = grid[std::min(k + 1, grid.size() - 1)];
  ScalarOptimum refined = golden_section_maximize(f, a, b, rel_tol);
  if (best > refined.value) refined = {grid[k], best};
  return refined;
}

}  // namespace bmetro
