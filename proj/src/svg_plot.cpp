#include "olre/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace olre {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0, kRight = 30.0, kTop = 40.0, kBottom = 70.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Series {
  std::string label;
  std::vector<double> t, mean, stddev;
};

double parse_field(const std::string& v, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("aggregate CSV: bad " + what + " value \"" + v + "\"");
  }
}

std::string round3(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace

std::string render_error_plot(const CsvTable& table) {
  const std::vector<std::string> expected = {"scenario", "method",     "alpha",
                                             "beta",     "t",          "mean_error",
                                             "std_error", "n_trials"};
  if (table.header != expected)
    throw std::invalid_argument("aggregate CSV: unexpected header");
  if (table.rows.empty()) throw std::invalid_argument("aggregate CSV: no data rows");

  // Group rows by (method, alpha, beta), in order of first appearance.
  std::vector<Series> series;
  std::vector<std::string> alphas;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const std::string key = row[1] + "|" + row[2] + "|" + row[3];
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, series.size()).first;
      series.push_back(Series{row[1], {}, {}, {}});
      alphas.push_back(row[2]);
    }
    Series& s = series[it->second];
    s.t.push_back(parse_field(row[4], "t"));
    s.mean.push_back(parse_field(row[5], "mean_error"));
    const double sd = row[6] == "nan" ? 0.0 : parse_field(row[6], "std_error");
    s.stddev.push_back(std::isfinite(sd) ? sd : 0.0);
  }
  // Disambiguate when one method id appears at several configurations.
  std::map<std::string, int> label_count;
  for (const auto& s : series) ++label_count[s.label];
  for (std::size_t i = 0; i < series.size(); ++i)
    if (label_count[series[i].label] > 1) series[i].label += " alpha=" + alphas[i];

  double tmin = 1e300, tmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      if (!(s.t[i] > 0.0)) throw std::invalid_argument("aggregate CSV: t must be > 0");
      const double lo = std::max(s.mean[i] - s.stddev[i], 1e-16);
      const double hi = std::max(s.mean[i] + s.stddev[i], 1e-16);
      tmin = std::min(tmin, s.t[i]);
      tmax = std::max(tmax, s.t[i]);
      ymin = std::min(ymin, lo);
      ymax = std::max(ymax, hi);
    }
  }
  if (tmin >= tmax) tmax = tmin * 10.0;
  if (ymin >= ymax) ymax = ymin * 10.0;

  const double lx0 = std::log10(tmin), lx1 = std::log10(tmax);
  const double ly0 = std::floor(std::log10(ymin)), ly1 = std::ceil(std::log10(ymax));
  auto X = [&](double t) {
    return kLeft + (std::log10(t) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight);
  };
  auto Y = [&](double v) {
    const double lv = std::log10(std::max(v, 1e-16));
    return kHeight - kBottom - (lv - ly0) / (ly1 - ly0) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // frame + grid at decade ticks
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
    const double x = X(std::pow(10.0, e));
    svg << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(ly0); e <= static_cast<int>(ly1); ++e) {
    const double y = Y(std::pow(10.0, e));
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 20
      << "\" font-size=\"14\" text-anchor=\"middle\">pairs processed (t)</text>\n";
  svg << "<text x=\"20\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << (kTop + kHeight - kBottom) / 2 << ")\">squared L2 error</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    // +-1 std band
    std::ostringstream band;
    for (std::size_t i = 0; i < s.t.size(); ++i)
      band << X(s.t[i]) << "," << Y(s.mean[i] + s.stddev[i]) << " ";
    for (std::size_t i = s.t.size(); i-- > 0;)
      band << X(s.t[i]) << "," << Y(std::max(s.mean[i] - s.stddev[i], 1e-16)) << " ";
    svg << "<polygon points=\"" << band.str() << "\" fill=\"" << color
        << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    // mean curve
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.t.size(); ++i) svg << X(s.t[i]) << "," << Y(s.mean[i]) << " ";
    svg << "\"/>\n";
    for (std::size_t i = 0; i < s.t.size(); ++i)
      svg << "<circle cx=\"" << X(s.t[i]) << "\" cy=\"" << Y(s.mean[i])
          << "\" r=\"3\" fill=\"" << color << "\"><title>t=" << s.t[i]
          << " mean=" << round3(s.mean[i]) << "</title></circle>\n";
  }

  // legend, series in CSV order
  const double lx = kWidth - kRight - 220, lyTop = kTop + 10;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const double y = lyTop + 20.0 * static_cast<double>(si);
    svg << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 30 << "\" y2=\"" << y
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 38 << "\" y=\"" << y + 4 << "\" font-size=\"13\">"
        << series[si].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace olre
