#include "stiefelgeo/figures.hpp"

#include "stiefelgeo/conjugate.hpp"
#include "stiefelgeo/curvature.hpp"
#include "stiefelgeo/io.hpp"
#include "stiefelgeo/loops.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stiefelgeo {

namespace {

constexpr int kN = 6;
constexpr int kP = 3;

void check_grid(const std::vector<double>& grid) {
  for (double b : grid) {
    if (!(b > 0.0 && b <= 1.0)) {
      throw UnsupportedRegime("figure grid must lie in (0, 1], got " + format_double(b));
    }
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

std::string fmt_tick(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

std::vector<double> default_beta_grid() {
  std::vector<double> g(200);
  for (int i = 0; i < 200; ++i) g[static_cast<std::size_t>(i)] = 0.005 * (i + 1);
  return g;
}

std::vector<CurvatureRow> curvature_rows(const std::vector<double>& grid) {
  check_grid(grid);
  std::vector<CurvatureRow> rows;
  rows.reserve(grid.size());
  for (double b : grid) {
    const CurvatureBound K = curvature_bound(b, kN, kP);
    rows.push_back({b, K.value, K.regime});
  }
  return rows;
}

std::vector<RadiusRow> radius_rows(const std::vector<double>& grid) {
  check_grid(grid);
  std::vector<RadiusRow> rows;
  rows.reserve(grid.size());
  for (double b : grid) {
    const auto [lo, hi] = conjugate_radius_bounds(b, kN, kP);
    rows.push_back({b, loop_length_bound(b) / 2.0, lo, hi});
  }
  return rows;
}

std::string curvature_csv(const std::vector<CurvatureRow>& rows) {
  std::ostringstream out;
  out << "beta,K_beta,regime\n";
  for (const auto& r : rows) {
    out << format_double(r.beta) << ',' << format_double(r.K_beta) << ',' << r.regime << '\n';
  }
  return out.str();
}

std::string radius_csv(const std::vector<RadiusRow>& rows) {
  std::ostringstream out;
  out << "beta,half_loop,pi_over_sqrtK,sqrt2_t_r\n";
  for (const auto& r : rows) {
    out << format_double(r.beta) << ',' << format_double(r.half_loop) << ','
        << format_double(r.pi_over_sqrtK) << ',' << format_double(r.sqrt2_t_r) << '\n';
  }
  return out.str();
}

std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::vector<Series>& series) {
  const double W = 640, H = 420, left = 60, right = 150, top = 40, bottom = 50;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool init = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!init) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        init = true;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  xmin = std::min(xmin, 0.0);
  ymin = std::min(ymin, 0.0);
  if (ymax <= ymin) ymax = ymin + 1.0;
  if (xmax <= xmin) xmax = xmin + 1.0;
  ymax *= 1.05;

  const double pw = W - left - right, ph = H - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
    << "</text>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
    << top + ph << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 5.0;
    const double yv = ymin + (ymax - ymin) * k / 5.0;
    o << "<line x1=\"" << sx(xv) << "\" y1=\"" << top + ph << "\" x2=\"" << sx(xv) << "\" y2=\""
      << top + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << sx(xv) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
      << fmt_tick(xv) << "</text>\n";
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << left << "\" y2=\""
      << sy(yv) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << left - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
      << fmt_tick(yv) << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
    << xlabel << "</text>\n";
  int legend_row = 0;
  for (const auto& s : series) {
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (!s.dash.empty()) o << " stroke-dasharray=\"" << s.dash << "\"";
    o << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) o << ' ';
      o << sx(s.x[i]) << ',' << sy(s.y[i]);
    }
    o << "\"/>\n";
    const double ly = top + 10 + 18 * legend_row++;
    o << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 34
      << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (!s.dash.empty()) o << " stroke-dasharray=\"" << s.dash << "\"";
    o << "/>\n<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">" << s.label
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_figures(const std::vector<double>& grid, const std::string& out_dir) {
  const auto k_rows = curvature_rows(grid);
  const auto r_rows = radius_rows(grid);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_text(dir / "fig1.csv", curvature_csv(k_rows));
  write_text(dir / "fig2.csv", radius_csv(r_rows));

  Series k{"K_beta", "black", "", {}, {}};
  for (const auto& r : k_rows) {
    k.x.push_back(r.beta);
    k.y.push_back(r.K_beta);
  }
  write_text(dir / "fig1.svg", svg_plot("Sectional curvature bound", "beta", {k}));

  Series half{"l_beta / 2", "red", "", {}, {}};
  Series lower{"pi / sqrt(K)", "blue", "6,4", {}, {}};
  Series upper{"sqrt(2) t_r", "green", "2,3", {}, {}};
  for (const auto& r : r_rows) {
    half.x.push_back(r.beta);
    half.y.push_back(r.half_loop);
    lower.x.push_back(r.beta);
    lower.y.push_back(r.pi_over_sqrtK);
    upper.x.push_back(r.beta);
    upper.y.push_back(r.sqrt2_t_r);
  }
  write_text(dir / "fig2.svg", svg_plot("Injectivity radius bounds", "beta", {half, lower, upper}));
}

}  // namespace stiefelgeo
