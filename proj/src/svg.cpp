#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "buyhold/report.hpp"

namespace buyhold {

namespace {

constexpr double kWidth = 760, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b"};

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::vector<std::string>& x_labels,
                           const std::vector<ChartSeries>& series) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  const std::size_t count = x_labels.size();
  const auto x_at = [&](std::size_t i) {
    return kLeft + (count > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(count - 1)
                              : plot_w / 2);
  };
  const auto y_at = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0)
      << "\" height=\"" << fixed(kHeight, 0) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed(kLeft) << "\" y=\"22\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\""
      << fixed(kLeft + plot_w) << "\" y2=\"" << fixed(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft)
      << "\" y2=\"" << fixed(kTop + plot_h) << "\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 5; ++t) {
    const double v = lo + (hi - lo) * t / 5.0;
    const double y = y_at(v);
    out << "<line x1=\"" << fixed(kLeft - 4) << "\" y1=\"" << fixed(y) << "\" x2=\""
        << fixed(kLeft) << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4)
        << "\" text-anchor=\"end\">" << format_number(std::round(v * 1e4) / 1e4)
        << "</text>\n";
  }
  const std::size_t stride = std::max<std::size_t>(1, (count + 11) / 12);
  for (std::size_t i = 0; i < count; i += stride) {
    out << "<text x=\"" << fixed(x_at(i)) << "\" y=\"" << fixed(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << escape(x_labels[i]) << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::string style = std::string("fill=\"none\" stroke=\"") + color +
                              "\" stroke-width=\"1.5\"" +
                              (s.dashed ? " stroke-dasharray=\"6 4\"" : "");
    std::string points;
    const auto flush = [&] {
      if (!points.empty()) out << "<polyline " << style << " points=\"" << points << "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < s.values.size() && i < count; ++i) {
      if (!std::isfinite(s.values[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fixed(x_at(i)) + "," + fixed(y_at(s.values[i]));
    }
    flush();
    const double ly = kTop + 16.0 * static_cast<double>(k);
    out << "<line x1=\"" << fixed(kWidth - kRight + 15) << "\" y1=\"" << fixed(ly) << "\" x2=\""
        << fixed(kWidth - kRight + 45) << "\" y2=\"" << fixed(ly) << "\" " << style << "/>\n";
    out << "<text x=\"" << fixed(kWidth - kRight + 52) << "\" y=\"" << fixed(ly + 4) << "\">"
        << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace buyhold
