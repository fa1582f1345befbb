#pragma once

/// \file
/// Standalone SVG rendering of the I-P phase diagram.
///
/// Diagram coordinates map to pixels by a fixed affine transform, written
/// into the document as a comment of the form
///
///   roegen-transform: x = X0 + SX*(I - I0); y = Y0 - SY*(P - P0)
///   X0=... SX=... I0=... Y0=... SY=... P0=...
///
/// so consumers can invert it. The plotted window is I in [I_min, I_max]
/// and P in [0, 2 P_c].

#include <algorithm>
#include <array>
#include <utility>
#include <cmath>
#include <string>
#include <vector>

#include "roegen/classify.hpp"
#include "roegen/core_model.hpp"
#include "roegen/errors.hpp"
#include "roegen/io/serialize.hpp"
#include "roegen/phase_equilibrium.hpp"

namespace roegen {

struct SvgTransform {
  double X0, SX, I0, Y0, SY, P0;

  double x(double I) const { return X0 + SX * (I - I0); }
  double y(double P) const { return Y0 - SY * (P - P0); }
  double I(double x) const { return I0 + (x - X0) / SX; }
  double P(double y) const { return P0 + (Y0 - y) / SY; }
};

inline constexpr double kSvgMarginLeft = 70;
inline constexpr double kSvgMarginRight = 20;
inline constexpr double kSvgMarginTop = 20;
inline constexpr double kSvgMarginBottom = 50;
inline constexpr std::size_t kRegionGrid = 64;

inline SvgTransform svg_transform(const PhaseDiagram& d, double width, double height) {
  const double P_top = 2.0 * d.critical().P;
  return {kSvgMarginLeft,
          (width - kSvgMarginLeft - kSvgMarginRight) / (d.I_max() - d.I_min()),
          d.I_min(),
          height - kSvgMarginBottom,
          (height - kSvgMarginTop - kSvgMarginBottom) / P_top,
          0.0};
}

/// Parses the transform comment back out of a rendered document.
inline SvgTransform parse_svg_transform(const std::string& svg) {
  const auto pos = svg.find("X0=");
  if (pos == std::string::npos) throw ParseError("SVG carries no roegen-transform comment");
  SvgTransform t{};
  const int n = std::sscanf(svg.c_str() + pos, "X0=%lf SX=%lf I0=%lf Y0=%lf SY=%lf P0=%lf", &t.X0, &t.SX, &t.I0,
                            &t.Y0, &t.SY, &t.P0);
  if (n != 6) throw ParseError("malformed roegen-transform comment");
  return t;
}

namespace detail {

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

inline const char* curve_id(CurveKind k) {
  switch (k) {
    case CurveKind::BoomCrisis:
      return "curve-boom-crisis";
    case CurveKind::RecoveryRecession:
      return "curve-recovery-recession";
    case CurveKind::IncreaseDecrease:
      return "curve-increase-decrease";
  }
  return "?";
}

inline const char* curve_color(CurveKind k) {
  switch (k) {
    case CurveKind::BoomCrisis:
      return "#1f5fa8";
    case CurveKind::RecoveryRecession:
      return "#a83a1f";
    case CurveKind::IncreaseDecrease:
      return "#2a8a3a";
  }
  return "#000";
}

/// Pixel polyline of a curve restricted to the plot rectangle. Boundary
/// curves are monotone, so the visible part is a single run.
inline std::vector<std::pair<double, double>> clip_polyline(const std::vector<DiagramPoint>& samples,
                                                            const SvgTransform& t, double left, double right,
                                                            double top, double bottom) {
  std::vector<std::pair<double, double>> out;
  auto push = [&](double x, double y) {
    if (out.empty() || out.back() != std::pair{x, y}) out.emplace_back(x, y);
  };
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double x0 = t.x(samples[i - 1].I), y0 = t.y(samples[i - 1].P);
    const double dx = t.x(samples[i].I) - x0, dy = t.y(samples[i].P) - y0;
    // Liang-Barsky
    double u0 = 0.0, u1 = 1.0;
    bool visible = true;
    for (auto [pk, qk] : {std::pair{-dx, x0 - left}, std::pair{dx, right - x0}, std::pair{-dy, y0 - top},
                          std::pair{dy, bottom - y0}}) {
      if (pk == 0.0) {
        if (qk < 0.0) visible = false;
      } else {
        const double r = qk / pk;
        if (pk < 0.0) {
          u0 = std::max(u0, r);
        } else {
          u1 = std::min(u1, r);
        }
      }
    }
    if (!visible || u0 > u1) continue;
    push(x0 + u0 * dx, y0 + u0 * dy);
    push(x0 + u1 * dx, y0 + u1 * dy);
  }
  return out;
}

inline void check_renderable(const PhaseDiagram& d, double width, double height) {
  if (!(width >= 100) || !(height >= 100)) throw RenderError("SVG width and height must be >= 100");
  const auto& c = d.critical();
  if (!std::isfinite(c.I) || !std::isfinite(c.P) || !(c.P > 0)) throw RenderError("diagram has no critical point");
  if (!(d.I_max() > d.I_min())) throw RenderError("diagram has an empty stability range");
  for (CurveKind k : kAllCurves)
    if (d.curve(k).samples.size() < 2) throw RenderError(std::string(to_string(k)) + " curve has fewer than 2 samples");
}

}  // namespace detail

/// Renders the diagram; identical input yields byte-identical output.
inline std::string render_svg(const PhaseDiagram& d, double width = 800, double height = 600,
                              const Dictionary& dict = Dictionary()) {
  detail::check_renderable(d, width, height);
  const SvgTransform t = svg_transform(d, width, height);
  const double left = kSvgMarginLeft, right = width - kSvgMarginRight;
  const double top = kSvgMarginTop, bottom = height - kSvgMarginBottom;
  using detail::px;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" + px(height) +
       "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
  s += "<!-- roegen-transform: x = X0 + SX*(I - I0); y = Y0 - SY*(P - P0)\n";
  s += "     X0=" + format_number(t.X0) + " SX=" + format_number(t.SX) + " I0=" + format_number(t.I0) +
       " Y0=" + format_number(t.Y0) + " SY=" + format_number(t.SY) + " P0=" + format_number(t.P0) + " -->\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) + "\" fill=\"white\"/>\n";

  // axes and ticks
  s += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "  <line x1=\"" + px(left) + "\" y1=\"" + px(bottom) + "\" x2=\"" + px(right) + "\" y2=\"" + px(bottom) + "\"/>\n";
  s += "  <line x1=\"" + px(left) + "\" y1=\"" + px(bottom) + "\" x2=\"" + px(left) + "\" y2=\"" + px(top) + "\"/>\n";
  s += "</g>\n";
  s += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double I = d.I_min() + (d.I_max() - d.I_min()) * k / 4.0;
    const double P = 2.0 * d.critical().P * k / 4.0;
    char label[32];
    std::snprintf(label, sizeof label, "%.3g", I);
    s += "  <text x=\"" + px(t.x(I)) + "\" y=\"" + px(bottom + 16) + "\" text-anchor=\"middle\">" + label + "</text>\n";
    std::snprintf(label, sizeof label, "%.3g", P);
    s += "  <text x=\"" + px(left - 6) + "\" y=\"" + px(t.y(P) + 4) + "\" text-anchor=\"end\">" + label + "</text>\n";
  }
  s += "</g>\n";

  const auto& temp = dict.lookup("T", LookupDirection::ThermoToEcon);
  const auto& pres = dict.lookup("P", LookupDirection::ThermoToEcon);
  const std::string x_label = temp.econ_name + " " + temp.econ_symbol;
  // the price entry's name carries a parenthetical gloss; the axis uses the head
  std::string p_name = pres.econ_name.substr(0, pres.econ_name.find(" ("));
  const std::string y_label = p_name + " " + pres.econ_symbol;
  s += "<text class=\"x-label\" x=\"" + px(0.5 * (left + right)) + "\" y=\"" + px(height - 12) +
       "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" + detail::xml_escape(x_label) +
       "</text>\n";
  s += "<text class=\"y-label\" x=\"18\" y=\"" + px(0.5 * (top + bottom)) +
       "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       px(0.5 * (top + bottom)) + ")\">" + detail::xml_escape(y_label) + "</text>\n";

  s += "<g class=\"curves\" fill=\"none\" stroke-width=\"2\">\n";
  for (CurveKind k : kAllCurves) {
    s += "  <polyline id=\"" + std::string(detail::curve_id(k)) + "\" stroke=\"" + detail::curve_color(k) +
         "\" points=\"";
    const auto pts = detail::clip_polyline(d.curve(k).samples, t, left, right, top, bottom);
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + px(pts[i].first) + "," + px(pts[i].second);
    s += "\"/>\n";
  }
  s += "</g>\n";

  // region labels at the centroid of each region's grid samples
  std::array<double, 3> sx{}, sy{};
  std::array<std::size_t, 3> count{};
  const double P_top = 2.0 * d.critical().P;
  for (std::size_t i = 0; i < kRegionGrid; ++i) {
    const double I = d.I_min() + (d.I_max() - d.I_min()) * (i + 0.5) / kRegionGrid;
    const CurveValues v = d.curve_values(I);
    for (std::size_t j = 0; j < kRegionGrid; ++j) {
      const double P = P_top * (j + 0.5) / kRegionGrid;
      const Phase r = region_from(d, v, I, P);
      if (r == Phase::Supercritical) continue;
      const auto idx = static_cast<std::size_t>(r);
      sx[idx] += I;
      sy[idx] += P;
      ++count[idx];
    }
  }
  s += "<g class=\"regions\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#444\" text-anchor=\"middle\">\n";
  for (Phase r : {Phase::Inflation, Phase::Liquidity, Phase::Income}) {
    const auto idx = static_cast<std::size_t>(r);
    if (count[idx] == 0) continue;
    const double I = sx[idx] / static_cast<double>(count[idx]);
    const double P = sy[idx] / static_cast<double>(count[idx]);
    s += "  <text x=\"" + px(t.x(I)) + "\" y=\"" + px(t.y(P)) + "\">" + detail::xml_escape(region_name(r)) +
         "</text>\n";
  }
  s += "</g>\n";

  s += "<circle id=\"triple-point\" cx=\"" + px(t.x(d.triple().I)) + "\" cy=\"" + px(t.y(d.triple().P)) +
       "\" r=\"4\" fill=\"black\"/>\n";
  s += "<circle id=\"critical-point\" cx=\"" + px(t.x(d.critical().I)) + "\" cy=\"" + px(t.y(d.critical().P)) +
       "\" r=\"4\" fill=\"black\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace roegen
