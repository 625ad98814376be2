#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "arlab/common.hpp"

namespace arlab {

// fixed styling tokens shared by all figures
namespace svg_style {
inline constexpr const char* kCyan = "#1f9ec9";
inline constexpr const char* kRed = "#d62728";
inline constexpr const char* kOrange = "#ff7f0e";
inline constexpr const char* kViolet = "#9467bd";
inline constexpr const char* kGray = "#8a8a8a";
inline constexpr const char* kDark = "#333333";
inline constexpr const char* kAxis = "#cccccc";
}  // namespace svg_style

/// Deterministic SVG drawing surface on a fixed 800x600 canvas. World
/// coordinates go through per-panel viewports that preserve aspect ratio;
/// all numbers are printed with fixed precision so identical data yields
/// byte-identical files.
class SvgCanvas {
public:
  SvgCanvas(int width = 800, int height = 600) : width_(width), height_(height) {}

  struct Viewport {
    double px, py, pw, ph;      // pixel rectangle
    double cx, cy;              // world center
    double scale;               // pixels per world unit
    double sx(cplx z) const { return px + pw / 2 + (z.real() - cx) * scale; }
    double sy(cplx z) const { return py + ph / 2 - (z.imag() - cy) * scale; }
  };

  Viewport viewport(double px, double py, double pw, double ph, double xmin,
                    double xmax, double ymin, double ymax) const {
    Viewport v;
    v.px = px, v.py = py, v.pw = pw, v.ph = ph;
    v.cx = 0.5 * (xmin + xmax);
    v.cy = 0.5 * (ymin + ymax);
    double margin = 0.88;
    v.scale = margin * std::min(pw / std::max(xmax - xmin, 1e-12),
                                ph / std::max(ymax - ymin, 1e-12));
    return v;
  }

  void frame(const Viewport& v, const std::string& title) {
    body_ << "<rect x=\"" << num(v.px) << "\" y=\"" << num(v.py) << "\" width=\""
          << num(v.pw) << "\" height=\"" << num(v.ph)
          << "\" fill=\"none\" stroke=\"" << svg_style::kGray
          << "\" stroke-width=\"1\"/>\n";
    // axes cross through the world origin when visible
    double ox = v.sx({0, 0}), oy = v.sy({0, 0});
    if (ox > v.px && ox < v.px + v.pw)
      line_px(ox, v.py, ox, v.py + v.ph, svg_style::kAxis, 1);
    if (oy > v.py && oy < v.py + v.ph)
      line_px(v.px, oy, v.px + v.pw, oy, svg_style::kAxis, 1);
    if (!title.empty())
      body_ << "<text x=\"" << num(v.px + 8) << "\" y=\"" << num(v.py + 18)
            << "\" font-family=\"monospace\" font-size=\"14\" fill=\""
            << svg_style::kDark << "\">" << escape(title) << "</text>\n";
  }

  void polyline(const Viewport& v, const std::vector<cplx>& pts,
                const char* color, double width = 2.0, bool arrows = false,
                bool dashed = false) {
    if (pts.size() < 2) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
          << num(width) << "\"";
    if (dashed) body_ << " stroke-dasharray=\"6 4\"";
    body_ << " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ << ' ';
      body_ << num(v.sx(pts[i])) << ',' << num(v.sy(pts[i]));
    }
    body_ << "\"/>\n";
    if (arrows) arrow_head(v, pts, color);
  }

  void dot(const Viewport& v, cplx z, double r, const char* color) {
    body_ << "<circle cx=\"" << num(v.sx(z)) << "\" cy=\"" << num(v.sy(z))
          << "\" r=\"" << num(r) << "\" fill=\"" << color << "\"/>\n";
  }

  void label(const Viewport& v, cplx z, const std::string& text,
             const char* color, double dx = 6, double dy = -6) {
    body_ << "<text x=\"" << num(v.sx(z) + dx) << "\" y=\"" << num(v.sy(z) + dy)
          << "\" font-family=\"monospace\" font-size=\"13\" fill=\"" << color
          << "\">" << escape(text) << "</text>\n";
  }

  void caption(const std::string& text) {
    body_ << "<text x=\"" << num(width_ / 2.0) << "\" y=\"" << num(height_ - 12.0)
          << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\""
          << " fill=\"" << svg_style::kDark << "\">" << escape(text)
          << "</text>\n";
  }

  std::string str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
        << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' '
        << height_ << "\">\n<rect width=\"" << width_ << "\" height=\"" << height_
        << "\" fill=\"#ffffff\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

private:
  static std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else if (c == '&') out += "&amp;";
      else out += c;
    }
    return out;
  }

  void line_px(double x1, double y1, double x2, double y2, const char* color,
               double w) {
    body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\""
          << num(x2) << "\" y2=\"" << num(y2) << "\" stroke=\"" << color
          << "\" stroke-width=\"" << num(w) << "\"/>\n";
  }

  // small triangle at the midpoint sample, oriented along the path
  void arrow_head(const Viewport& v, const std::vector<cplx>& pts,
                  const char* color) {
    size_t m = pts.size() / 2;
    if (m == 0 || m + 1 >= pts.size()) return;
    double x = v.sx(pts[m]), y = v.sy(pts[m]);
    double dx = v.sx(pts[m + 1]) - x, dy = v.sy(pts[m + 1]) - y;
    double len = std::hypot(dx, dy);
    if (len < 1e-9) return;
    dx /= len, dy /= len;
    double size = 7.0;
    double lx = -dy, ly = dx;
    body_ << "<polygon fill=\"" << color << "\" points=\""
          << num(x + size * dx) << ',' << num(y + size * dy) << ' '
          << num(x - size * 0.6 * dx + size * 0.5 * lx) << ','
          << num(y - size * 0.6 * dy + size * 0.5 * ly) << ' '
          << num(x - size * 0.6 * dx - size * 0.5 * lx) << ','
          << num(y - size * 0.6 * dy - size * 0.5 * ly) << "\"/>\n";
  }

  int width_, height_;
  std::ostringstream body_;
};

}  // namespace arlab
