#include "spectra/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace spectra {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const SpectrumReport& r, const std::vector<Complex>& cloud, const PlotOptions& opts) {
  double extent = 0.0;
  for (const auto& a : r.sigma.annuli()) extent = std::max(extent, a.r_out);
  for (const auto& p : r.sigma.points()) extent = std::max(extent, std::abs(p.value));
  for (const auto& e : r.eigenvalues) extent = std::max(extent, std::abs(e.value));
  if (!(extent > 0.0)) extent = 1.0;
  extent *= 1.15;
  const double half = opts.size / 2.0;
  const double k = half / extent;
  auto X = [&](double re) { return fmt(half + k * re); };
  auto Y = [&](double im) { return fmt(half - k * im); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.size) + "\" height=\"" +
       std::to_string(opts.size) + "\" viewBox=\"0 0 " + std::to_string(opts.size) + " " + std::to_string(opts.size) +
       "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<line x1=\"0\" y1=\"" + fmt(half) + "\" x2=\"" + std::to_string(opts.size) + "\" y2=\"" + fmt(half) +
       "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + fmt(half) + "\" y1=\"0\" x2=\"" + fmt(half) + "\" y2=\"" + std::to_string(opts.size) +
       "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  s += "<circle cx=\"" + fmt(half) + "\" cy=\"" + fmt(half) + "\" r=\"" + fmt(k) +
       "\" fill=\"none\" stroke=\"#ddd\" stroke-dasharray=\"4 4\"/>\n";

  for (const auto& a : r.sigma.annuli()) {
    if (a.r_out - a.r_in > 1e-12) {
      const double ro = k * a.r_out, ri = k * a.r_in;
      s += "<path fill=\"#4a78c2\" fill-opacity=\"0.35\" fill-rule=\"evenodd\" stroke=\"#4a78c2\" d=\"";
      s += "M " + fmt(half + ro) + " " + fmt(half) + " A " + fmt(ro) + " " + fmt(ro) + " 0 1 0 " + fmt(half - ro) + " " +
           fmt(half) + " A " + fmt(ro) + " " + fmt(ro) + " 0 1 0 " + fmt(half + ro) + " " + fmt(half) + " Z";
      if (ri > 0.0)
        s += " M " + fmt(half + ri) + " " + fmt(half) + " A " + fmt(ri) + " " + fmt(ri) + " 0 1 0 " + fmt(half - ri) +
             " " + fmt(half) + " A " + fmt(ri) + " " + fmt(ri) + " 0 1 0 " + fmt(half + ri) + " " + fmt(half) + " Z";
      s += "\"/>\n";
    } else {
      s += "<circle cx=\"" + fmt(half) + "\" cy=\"" + fmt(half) + "\" r=\"" + fmt(k * a.r_in) +
           "\" fill=\"none\" stroke=\"#1f3f7a\" stroke-width=\"2\"/>\n";
    }
  }
  if (opts.show_sigma_A)
    for (const auto& p : r.sigma_A.points())
      s += "<circle cx=\"" + X(p.value.real()) + "\" cy=\"" + Y(p.value.imag()) + "\" r=\"1.5\" fill=\"#1f3f7a\"/>\n";
  for (const auto& z : cloud)
    s += "<circle cx=\"" + X(z.real()) + "\" cy=\"" + Y(z.imag()) + "\" r=\"1\" fill=\"#999\" fill-opacity=\"0.4\"/>\n";
  for (const auto& e : r.eigenvalues)
    s += "<circle cx=\"" + X(e.value.real()) + "\" cy=\"" + Y(e.value.imag()) +
         "\" r=\"5\" fill=\"#d9412b\" stroke=\"black\" stroke-width=\"1\"><title>" + fmt(e.value.real()) +
         (e.value.imag() == 0.0 ? "" : (e.value.imag() > 0 ? "+" : "") + fmt(e.value.imag()) + "i") + " (x" +
         std::to_string(e.multiplicity) + ")</title></circle>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace spectra
