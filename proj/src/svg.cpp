#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "milnorlab/errors.hpp"
#include "milnorlab/svg.hpp"

namespace milnorlab {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;

void appendf(std::string& out, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string render_scatter(const std::vector<SvgCloud>& clouds,
                           const std::vector<std::size_t>& projection) {
  if (projection.size() != 2 && projection.size() != 3)
    throw Error("projection needs two or three coordinate indices");
  std::size_t need = *std::max_element(projection.begin(), projection.end());
  for (const auto& c : clouds)
    for (const auto& p : c.points)
      if (p.size() <= need) throw Error("projection index out of range");

  auto project = [&](const std::vector<double>& p) {
    double x = p[projection[0]], y = p[projection[1]];
    if (projection.size() == 3) {  // cabinet projection
      x += 0.35355339059327373 * p[projection[2]];
      y += 0.35355339059327373 * p[projection[2]];
    }
    return std::pair<double, double>{x, y};
  };

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (const auto& c : clouds)
    for (const auto& p : c.points) {
      auto [x, y] = project(p);
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  if (!any) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  // Pad so points never sit on the frame; inflate degenerate ranges.
  double xpad = (xmax - xmin) > 0.0 ? 0.05 * (xmax - xmin) : std::max(1e-6, std::abs(xmin)) * 0.5;
  double ypad = (ymax - ymin) > 0.0 ? 0.05 * (ymax - ymin) : std::max(1e-6, std::abs(ymin)) * 0.5;
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight); };
  auto sy = [&](double y) {
    return kHeight - kBottom - (y - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  appendf(out,
          "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%g\" "
          "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
          kWidth, kHeight, kWidth, kHeight);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  appendf(out,
          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
          "stroke=\"black\"/>\n",
          kLeft, kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);

  for (int i = 0; i < 5; ++i) {
    double fx = xmin + (xmax - xmin) * i / 4.0;
    double px = sx(fx);
    appendf(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", px,
            kHeight - kBottom, px, kHeight - kBottom + 5.0);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"11\" "
            "text-anchor=\"middle\">%.3g</text>\n",
            px, kHeight - kBottom + 18.0, fx);
    double fy = ymin + (ymax - ymin) * i / 4.0;
    double py = sy(fy);
    appendf(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
            kLeft - 5.0, py, kLeft, py);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"11\" "
            "text-anchor=\"end\">%.3g</text>\n",
            kLeft - 8.0, py + 4.0, fy);
  }

  for (std::size_t ci = 0; ci < clouds.size(); ++ci) {
    const char* color = kPalette[ci % kPaletteSize];
    for (const auto& p : clouds[ci].points) {
      auto [x, y] = project(p);
      appendf(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\" fill-opacity=\"0.8\"/>\n",
              sx(x), sy(y), color);
    }
    double ly = kTop + 16.0 + 16.0 * static_cast<double>(ci);
    appendf(out, "<rect x=\"%.2f\" y=\"%.2f\" width=\"10\" height=\"10\" fill=\"%s\"/>\n",
            kWidth - kRight - 150.0, ly - 9.0, color);
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"11\">%s "
            "(%zu)</text>\n",
            kWidth - kRight - 136.0, ly, escape(clouds[ci].label).c_str(),
            clouds[ci].points.size());
  }

  out += "</svg>\n";
  return out;
}

}  // namespace milnorlab
