#include "bmetro/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bmetro/error.hpp"

namespace bmetro::report {
namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double p0, double p1) const {
    const double a = log ? std::log10(v) : v;
    const double b0 = log ? std::log10(lo) : lo;
    const double b1 = log ? std::log10(hi) : hi;
    return p0 + (a - b0) / (b1 - b0) * (p1 - p0);
  }
  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

double value_at(const std::vector<Cell>& row, int col) {
  if (col < 0) return std::numeric_limits<double>::quiet_NaN();
  if (const double* d = std::get_if<double>(&row[col])) return *d;
  return std::numeric_limits<double>::quiet_NaN();
}

Axis fit_axis(std::vector<double> vals, bool log) {
  vals.erase(std::remove_if(vals.begin(), vals.end(),
                            [&](double v) { return !std::isfinite(v) || (log && v <= 0.0); }),
             vals.end());
  if (vals.empty()) return {log ? 0.1 : 0.0, 1.0, log};
  auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
  double lo = *mn, hi = *mx;
  if (log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (hi <= lo) hi = lo * 10.0;
  } else {
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, log};
}

std::vector<double> ticks(const Axis& a) {
  std::vector<double> t;
  if (a.log) {
    for (double v = a.lo; v <= a.hi * 1.0001; v *= 10.0) t.push_back(v);
    if (t.size() > 10) {
      std::vector<double> thin;
      for (std::size_t i = 0; i < t.size(); i += 2) thin.push_back(t[i]);
      t = thin;
    }
  } else {
    for (int i = 0; i <= 5; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 5.0);
  }
  return t;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Dataset& data, const PlotSpec& spec) {
  const int xc = data.column_index(spec.x_column);
  if (xc < 0) throw_invalid("plot x column '" + spec.x_column + "' not in dataset");
  std::vector<int> ycs;
  for (const auto& name : spec.y_columns) {
    const int c = data.column_index(name);
    if (c < 0) throw_invalid("plot y column '" + name + "' not in dataset");
    ycs.push_back(c);
  }

  std::vector<double> xs, ys;
  for (const auto& row : data.rows) {
    xs.push_back(value_at(row, xc));
    for (int c : ycs) ys.push_back(value_at(row, c));
  }
  const Axis ax = fit_axis(xs, spec.log_x);
  const Axis ay = fit_axis(ys, spec.log_y);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << esc(spec.title) << "</text>\n";
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
     << num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double px = ax.map(t, x0, x1);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px) << "\" y2=\"" << num(y0 + 5)
       << "\" stroke=\"black\"/><text x=\"" << num(px) << "\" y=\"" << num(y0 + 18)
       << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double py = ay.map(t, y0, y1);
    os << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(py)
       << "\" stroke=\"black\"/><text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
     << esc(data.columns[xc].header()) << "</text>\n";

  for (std::size_t k = 0; k < ycs.size(); ++k) {
    const char* colour = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    std::vector<std::vector<std::pair<double, double>>> segments(1);
    for (const auto& row : data.rows) {
      const double x = value_at(row, xc);
      const double y = value_at(row, ycs[k]);
      if (ax.usable(x) && ay.usable(y) && y >= ay.lo && y <= ay.hi) {
        segments.back().emplace_back(ax.map(x, x0, x1), ay.map(y, y0, y1));
      } else if (!segments.back().empty()) {
        segments.emplace_back();
      }
    }
    for (const auto& seg : segments) {
      if (seg.size() == 1) {
        os << "<circle cx=\"" << num(seg[0].first) << "\" cy=\"" << num(seg[0].second) << "\" r=\"3\" fill=\""
           << colour << "\"/>\n";
      } else if (seg.size() > 1) {
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < seg.size(); ++i) os << (i ? " " : "") << num(seg[i].first) << "," << num(seg[i].second);
        os << "\"/>\n";
      }
    }
    const double ly = y1 + 16.0 * (k + 1);
    os << "<line x1=\"" << num(x1 + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(x1 + 30) << "\" y2=\""
       << num(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/><text x=\"" << num(x1 + 35)
       << "\" y=\"" << num(ly) << "\">" << esc(data.columns[ycs[k]].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace bmetro::report
