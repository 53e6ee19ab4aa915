#pragma once

#include <functional>
#include <vector>

namespace bmetro {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

struct MaximizeOptions {
  int prescan_points = 64;   // sampled before the golden-section refinement
  bool log_grid = true;      // prescan spacing
  double rel_tol = 1e-8;     // relative tolerance on x
  int max_iterations = 400;
};

/// Golden-section maximisation on [lo, hi] for a function assumed unimodal there.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol = 1e-8, int max_iterations = 400);

/// Prescans f on a grid, rejects non-unimodal sample patterns (throws
/// numerical, pointing at maximize_on_grid), then refines the bracketing
/// cell by golden section. Endpoint maxima are allowed.
ScalarOptimum maximize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                const MaximizeOptions& options = {});

/// Fallback for multimodal functions: dense grid plus golden-section
/// refinement around the best grid point.
ScalarOptimum maximize_on_grid(const std::function<double(double)>& f, double lo, double hi,
                               int points = 1024, bool log_grid = true, double rel_tol = 1e-8);

/// `points` samples spanning [lo, hi] inclusive.
std::vector<double> make_grid(double lo, double hi, int points, bool log_grid);

}  // namespace bmetro
