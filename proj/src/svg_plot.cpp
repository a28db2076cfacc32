#include "driftreg/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace driftreg {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Roughly five round-numbered ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) ticks.push_back(v);
  return ticks;
}

}  // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
  const double left = 80, right = 20, top = 40, bottom = 50;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;

  std::size_t n = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    n = std::max(n, s.y.size());
    for (double v : s.y) {
      if (!std::isfinite(v) || (opt.log_y && v <= 0.0)) continue;
      const double tv = opt.log_y ? std::log10(v) : v;
      lo = std::min(lo, tv);
      hi = std::max(hi, tv);
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (!opt.log_y) lo = std::min(lo, 0.0);
  if (hi <= lo) hi = lo + 1.0;
  const double xmax = std::max<double>(static_cast<double>(n), 2.0);

  const auto px = [&](double x) { return left + (x - 1.0) / (xmax - 1.0) * pw; };
  const auto py = [&](double tv) { return top + (1.0 - (tv - lo) / (hi - lo)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    o << "<text x=\"" << fmt(opt.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(opt.title) << "</text>\n";

  // axes and ticks
  o << "<g stroke=\"black\" fill=\"none\">\n";
  o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
    << fmt(top + ph) << "\"/>\n";
  o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left) << "\" y2=\"" << fmt(top + ph)
    << "\"/>\n</g>\n";
  for (double tv : nice_ticks(lo, hi)) {
    const double y = py(tv);
    o << "<line x1=\"" << fmt(left - 4) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left + pw) << "\" y2=\"" << fmt(y)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
      << tick_label(opt.log_y ? std::pow(10.0, tv) : tv) << "</text>\n";
  }
  for (double xv : nice_ticks(1.0, xmax)) {
    const double x = px(xv);
    o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
      << fmt(top + ph + 4) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(top + ph + 18) << "\" text-anchor=\"middle\">" << tick_label(xv)
      << "</text>\n";
  }
  o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(opt.height - 10.0) << "\" text-anchor=\"middle\">"
    << escape(opt.x_label) << "</text>\n";
  o << "<text transform=\"translate(16," << fmt(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(opt.y_label + (opt.log_y ? " (log)" : "")) << "</text>\n";

  // Thin long series so the file stays small: at most ~2 points per pixel.
  const std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(2 * pw));
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      if (i % stride != 0 && i + 1 != s.y.size()) continue;
      const double v = s.y[i];
      if (!std::isfinite(v) || (opt.log_y && v <= 0.0)) continue;
      o << (first ? "" : " ") << fmt(px(static_cast<double>(i + 1))) << ',' << fmt(py(opt.log_y ? std::log10(v) : v));
      first = false;
    }
    o << "\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << fmt(left + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + 36) << "\" y2=\""
      << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << fmt(left + 42) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace driftreg
