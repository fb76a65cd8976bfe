#ifndef NONARCH_TOOLS_SVG_HPP
#define NONARCH_TOOLS_SVG_HPP

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/rational.hpp"

namespace nonarch::cli {

struct PlotPoint {
  Rational x;
  Rational y;
};

/// What `render` draws: a lower-hull polygon (open chain over a point cloud,
/// slopes annotated) or a closed lattice polytope.
struct Figure {
  bool closed = false;
  std::string title;
  std::vector<PlotPoint> points;    ///< background cloud, may be empty
  std::vector<PlotPoint> vertices;  ///< chain or polygon
  std::vector<std::string> slope_labels;  ///< one per chain segment
};

namespace detail {

/// Fixed-point decimal with two fractional digits, rounded half up.
inline std::string fixed2(const Rational& r) {
  const Integer scaled = (r * Rational(100) + Rational(Integer(1), Integer(2))).floor();
  const bool neg = scaled < 0;
  const Integer a = neg ? Integer(-scaled) : scaled;
  const Integer ip = a / 100, fp = a % 100;
  std::string f = fp.get_str();
  if (f.size() < 2) f = "0" + f;
  while (!f.empty() && f.back() == '0') f.pop_back();
  return (neg ? "-" : "") + ip.get_str() + (f.empty() ? "" : "." + f);
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

inline std::string coord_label(const PlotPoint& q) { return "(" + q.x.to_string() + ", " + q.y.to_string() + ")"; }

}  // namespace detail

/// Deterministic SVG: integer lattice grid covering the data, the point
/// cloud, the chain or polygon, vertex labels and slope annotations.
inline std::string render_svg(const Figure& fig) {
  if (fig.vertices.empty()) fail(ErrorCode::PreconditionViolated, "nothing to render: no vertices");
  std::vector<PlotPoint> all = fig.vertices;
  all.insert(all.end(), fig.points.begin(), fig.points.end());
  Integer x0 = all.front().x.floor(), x1 = all.front().x.ceil();
  Integer y0 = all.front().y.floor(), y1 = all.front().y.ceil();
  for (const auto& q : all) {
    x0 = std::min(x0, q.x.floor());
    x1 = std::max(x1, q.x.ceil());
    y0 = std::min(y0, q.y.floor());
    y1 = std::max(y1, q.y.ceil());
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const Integer span = std::max(x1 - x0, y1 - y0);
  if (span > 100000) fail(ErrorCode::SizeGuardExceeded, "figure extent too large to render");
  const long unit = std::clamp(640L / span.get_si(), 6L, 60L);
  const long margin = 60;
  const Rational U(unit);
  const Integer W = (x1 - x0) * unit + 2 * margin;
  const Integer H = (y1 - y0) * unit + 2 * margin;
  auto px = [&](const Rational& x) { return detail::fixed2(Rational(margin) + (x - Rational(x0)) * U); };
  auto py = [&](const Rational& y) { return detail::fixed2(Rational(margin) + (Rational(y1) - y) * U); };
  // Grid lines every `step` units keep dense figures readable.
  const long step = std::max(1L, span.get_si() / 40);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W.get_str() << "\" height=\"" << H.get_str()
     << "\" viewBox=\"0 0 " << W.get_str() << " " << H.get_str() << "\" font-family=\"monospace\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!fig.title.empty())
    os << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\">" << detail::escape(fig.title) << "</text>\n";
  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (Integer x = x0; x <= x1; ++x) {
    if (Integer(x - x0) % step != 0) continue;
    os << "<line x1=\"" << px(Rational(x)) << "\" y1=\"" << py(Rational(y0)) << "\" x2=\"" << px(Rational(x))
       << "\" y2=\"" << py(Rational(y1)) << "\"/>\n";
  }
  for (Integer y = y0; y <= y1; ++y) {
    if (Integer(y - y0) % step != 0) continue;
    os << "<line x1=\"" << px(Rational(x0)) << "\" y1=\"" << py(Rational(y)) << "\" x2=\"" << px(Rational(x1))
       << "\" y2=\"" << py(Rational(y)) << "\"/>\n";
  }
  os << "</g>\n";
  os << "<g fill=\"#555555\" font-size=\"9\">\n";
  for (Integer x = x0; x <= x1; ++x)
    if (Integer(x - x0) % step == 0)
      os << "<text x=\"" << px(Rational(x)) << "\" y=\"" << detail::fixed2(Rational(H - margin + 14))
         << "\" text-anchor=\"middle\">" << x.get_str() << "</text>\n";
  for (Integer y = y0; y <= y1; ++y)
    if (Integer(y - y0) % step == 0)
      os << "<text x=\"" << margin - 6 << "\" y=\"" << py(Rational(y)) << "\" text-anchor=\"end\">" << y.get_str()
         << "</text>\n";
  os << "</g>\n";

  if (!fig.points.empty()) {
    os << "<g fill=\"#1f77b4\">\n";
    for (const auto& q : fig.points)
      os << "<circle cx=\"" << px(q.x) << "\" cy=\"" << py(q.y) << "\" r=\"2.5\"/>\n";
    os << "</g>\n";
  }

  std::string path;
  for (const auto& q : fig.vertices) path += (path.empty() ? "" : " ") + px(q.x) + "," + py(q.y);
  if (fig.closed)
    os << "<polygon points=\"" << path << "\" fill=\"#fde0c5\" fill-opacity=\"0.6\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  else
    os << "<polyline points=\"" << path << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";

  os << "<g fill=\"#d62728\">\n";
  for (const auto& q : fig.vertices) {
    os << "<circle cx=\"" << px(q.x) << "\" cy=\"" << py(q.y) << "\" r=\"3.5\"/>\n";
    os << "<text x=\"" << px(q.x + Rational(Integer(1), Integer(8))) << "\" y=\"" << py(q.y - Rational(Integer(1), Integer(3)))
       << "\" fill=\"black\">" << detail::escape(detail::coord_label(q)) << "</text>\n";
  }
  os << "</g>\n";

  if (!fig.slope_labels.empty()) {
    os << "<g fill=\"#2ca02c\" font-style=\"italic\">\n";
    for (std::size_t i = 0; i + 1 < fig.vertices.size() && i < fig.slope_labels.size(); ++i) {
      const Rational mx = (fig.vertices[i].x + fig.vertices[i + 1].x) / Rational(2);
      const Rational my = (fig.vertices[i].y + fig.vertices[i + 1].y) / Rational(2);
      os << "<text x=\"" << px(mx) << "\" y=\"" << py(my) << "\" dy=\"16\" text-anchor=\"middle\">slope "
         << detail::escape(fig.slope_labels[i]) << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nonarch::cli

#endif  // NONARCH_TOOLS_SVG_HPP
