#pragma once

#include <string>
#include <vector>

namespace stiefelgeo {

/// beta_i = 0.005 i for i = 1..200.
std::vector<double> default_beta_grid();

struct CurvatureRow {
  double beta;
  double K_beta;
  std::string regime;
};

struct RadiusRow {
  double beta;
  double half_loop;      ///< min(sqrt(2 beta), 1) pi
  double pi_over_sqrtK;  ///< conjugate-radius lower bound
  double sqrt2_t_r;      ///< conjugate-radius upper bound
};

/// Rows use the generic case 2 <= p <= n - 2 (evaluated at (n, p) = (6, 3)).
/// Throws UnsupportedRegime for grid points outside (0, 1].
std::vector<CurvatureRow> curvature_rows(const std::vector<double>& grid);
std::vector<RadiusRow> radius_rows(const std::vector<double>& grid);

std::string curvature_csv(const std::vector<CurvatureRow>& rows);
std::string radius_csv(const std::vector<RadiusRow>& rows);

struct Series {
  std::string label;
  std::string color;
  std::string dash;  ///< SVG stroke-dasharray, empty for solid
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line plot with axes and tick labels.
std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::vector<Series>& series);

/// Writes fig1.csv, fig2.csv, fig1.svg and fig2.svg into out_dir (created if needed).
void write_figures(const std::vector<double>& grid, const std::string& out_dir);

}  // namespace stiefelgeo
