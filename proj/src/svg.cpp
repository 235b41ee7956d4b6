#include "qlim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qlim::svg {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Round ticks: decades on log axes, 5-ish even steps on linear ones.
std::vector<double> ticks_linear(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  if (raw / mag > 5.0)
    step = 10.0 * mag;
  else if (raw / mag > 2.0)
    step = 5.0 * mag;
  else if (raw / mag > 1.0)
    step = 2.0 * mag;
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 0.5 * step; t += step) out.push_back(t);
  return out;
}

std::vector<double> ticks_log(double lo, double hi) {
  std::vector<double> out;
  for (int e = static_cast<int>(std::ceil(lo - 1e-9)); e <= static_cast<int>(std::floor(hi + 1e-9));
       ++e)
    out.push_back(static_cast<double>(e));
  return out;
}

}  // namespace

std::string render_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  if (series.empty() || series.size() > 2)
    throw std::invalid_argument("render_plot: need one or two series");

  // Transform to plot coordinates, dropping points a log axis cannot show.
  struct Pt {
    double x, y;
  };
  std::vector<std::vector<Pt>> lines;
  Range rx, ry;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("render_plot: x/y size mismatch");
    std::vector<Pt> line;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double px = s.x[i], py = s.y[i];
      if (spec.log_x) {
        if (!(px > 0.0)) continue;
        px = std::log10(px);
      }
      if (spec.log_y) {
        if (!(py > 0.0)) continue;
        py = std::log10(py);
      }
      if (!std::isfinite(px) || !std::isfinite(py)) continue;
      rx.include(px);
      ry.include(py);
      line.push_back({px, py});
    }
    lines.push_back(std::move(line));
  }
  if (!(rx.lo <= rx.hi) || !(ry.lo <= ry.hi))
    throw std::invalid_argument("render_plot: nothing plottable");
  if (rx.lo == rx.hi) {
    rx.lo -= 0.5;
    rx.hi += 0.5;
  }
  if (ry.lo == ry.hi) {
    ry.lo -= 0.5;
    ry.hi += 0.5;
  }

  const double ml = 70, mr = 20, mt = spec.title.empty() ? 16 : 36, mb = 46;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
  const auto X = [&](double v) { return ml + pw * (v - rx.lo) / (rx.hi - rx.lo); };
  const auto Y = [&](double v) { return mt + ph * (1.0 - (v - ry.lo) / (ry.hi - ry.lo)); };

  static const char* colors[2] = {"#1f6fb2", "#c23b22"};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    out << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << spec.title << "</text>\n";

  const auto xticks = spec.log_x ? ticks_log(rx.lo, rx.hi) : ticks_linear(rx.lo, rx.hi);
  const auto yticks = spec.log_y ? ticks_log(ry.lo, ry.hi) : ticks_linear(ry.lo, ry.hi);
  out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (double t : xticks)
    out << "<line x1=\"" << num(X(t)) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(X(t))
        << "\" y2=\"" << num(mt + ph) << "\"/>\n";
  for (double t : yticks)
    out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(Y(t)) << "\" x2=\"" << num(ml + pw)
        << "\" y2=\"" << num(Y(t)) << "\"/>\n";
  out << "</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double t : xticks) {
    const std::string label = spec.log_x ? ("1e" + num(t)) : num(t);
    out << "<text x=\"" << num(X(t)) << "\" y=\"" << num(mt + ph + 16)
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  for (double t : yticks) {
    const std::string label = spec.log_y ? ("1e" + num(t)) : num(t);
    out << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(Y(t) + 4)
        << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  if (!spec.x_label.empty())
    out << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(spec.height - 10)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << spec.x_label << "</text>\n";
  if (!spec.y_label.empty())
    out << "<text x=\"14\" y=\"" << num(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 "
        << num(mt + ph / 2) << ")\">" << spec.y_label << "</text>\n";
  out << "</g>\n";

  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  for (std::size_t s = 0; s < lines.size(); ++s) {
    if (lines[s].empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << colors[s]
        << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& p : lines[s]) out << num(X(p.x)) << "," << num(Y(p.y)) << " ";
    out << "\"/>\n";
  }

  double ly = mt + 16;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].label.empty()) continue;
    out << "<line x1=\"" << num(ml + pw - 150) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(ml + pw - 126) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colors[s]
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(ml + pw - 120) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label << "</text>\n";
    ly += 18;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace qlim::svg
