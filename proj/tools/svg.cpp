#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "cli.hpp"

namespace dshell::cli {

namespace {

constexpr double kLeft = 70.0, kRight = 690.0, kTop = 30.0, kBottom = 540.0;
constexpr double kStripLeft = 715.0, kStripWidth = 30.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Axes {
  double kmin, kmax, zmin, zmax;
  double px(double k) const { return kLeft + (k - kmin) / (kmax - kmin) * (kRight - kLeft); }
  double py(double z) const {
    const double c = std::clamp(z, zmin - 0.5 * (zmax - zmin), zmax + 0.5 * (zmax - zmin));
    return kBottom - (c - zmin) / (zmax - zmin) * (kBottom - kTop);
  }
};

std::string band_path(const BandTable& t, const std::vector<std::optional<double>>& col, const Axes& ax) {
  std::string d;
  bool open = false;
  for (std::size_t i = 0; i < t.k.size(); ++i) {
    if (!col[i]) {
      open = false;
      continue;
    }
    d += (open ? " L" : (d.empty() ? "M" : " M")) + num(ax.px(t.k[i])) + "," + num(ax.py(*col[i]));
    open = true;
  }
  return d;
}

}  // namespace

std::string bands_svg(const BandTable& t, const SpectrumDescription& spectrum) {
  const double m = t.coupling.mass;
  Axes ax{t.k.front(), t.k.back(), 0.0, 0.0};
  double zabs = std::sqrt(m * m + std::max(ax.kmin * ax.kmin, ax.kmax * ax.kmax));
  for (std::size_t i = 0; i < t.k.size(); ++i)
    for (const auto& v : {t.z_plus[i], t.z_minus[i]})
      if (v) zabs = std::max(zabs, std::abs(*v));
  zabs = std::max(1.0, 1.1 * zabs);
  ax.zmin = -zabs;
  ax.zmax = zabs;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<defs><clipPath id=\"plot\"><rect x=\"70\" y=\"30\" width=\"620\" height=\"510\"/></clipPath></defs>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";

  // Bulk: |z| >= sqrt(m^2 + k^2).
  std::string upper = "M" + num(kLeft) + "," + num(kTop), lower = "M" + num(kLeft) + "," + num(kBottom);
  for (double k : t.k) {
    const double e = std::sqrt(m * m + k * k);
    upper += " L" + num(ax.px(k)) + "," + num(ax.py(e));
    lower += " L" + num(ax.px(k)) + "," + num(ax.py(-e));
  }
  upper += " L" + num(kRight) + "," + num(kTop) + " Z";
  lower += " L" + num(kRight) + "," + num(kBottom) + " Z";
  s += "<g clip-path=\"url(#plot)\">\n";
  s += "<path class=\"bulk\" d=\"" + upper + "\" fill=\"#d0d0d0\" stroke=\"none\"/>\n";
  s += "<path class=\"bulk\" d=\"" + lower + "\" fill=\"#d0d0d0\" stroke=\"none\"/>\n";
  const char* colors[] = {"#c0392b", "#2c6fbb"};
  int idx = 0;
  for (const auto* col : {&t.z_plus, &t.z_minus}) {
    const std::string d = band_path(t, *col, ax);
    if (!d.empty())
      s += "<path class=\"band\" d=\"" + d + "\" fill=\"none\" stroke=\"" + colors[idx] + "\" stroke-width=\"2\"/>\n";
    ++idx;
  }
  s += "</g>\n";

  // Axes.
  s += "<rect x=\"70\" y=\"30\" width=\"620\" height=\"510\" fill=\"none\" stroke=\"black\"/>\n";
  if (ax.zmin < 0.0 && ax.zmax > 0.0)
    s += "<line x1=\"70\" y1=\"" + num(ax.py(0.0)) + "\" x2=\"690\" y2=\"" + num(ax.py(0.0)) +
         "\" stroke=\"#888\" stroke-dasharray=\"4,3\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double k = ax.kmin + (ax.kmax - ax.kmin) * i / 4.0;
    const double z = ax.zmin + (ax.zmax - ax.zmin) * i / 4.0;
    s += "<text x=\"" + num(ax.px(k)) + "\" y=\"558\" font-size=\"12\" text-anchor=\"middle\">" + num(k) + "</text>\n";
    s += "<text x=\"64\" y=\"" + num(ax.py(z) + 4.0) + "\" font-size=\"12\" text-anchor=\"end\">" + num(z) +
         "</text>\n";
  }
  s += "<text x=\"380\" y=\"585\" font-size=\"14\" text-anchor=\"middle\">k</text>\n";
  s += "<text x=\"20\" y=\"285\" font-size=\"14\" text-anchor=\"middle\">z</text>\n";

  // Spectrum strip.
  s += "<rect class=\"strip-frame\" x=\"715\" y=\"30\" width=\"30\" height=\"510\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& iv : spectrum.ac.intervals()) {
    const double lo = std::max(iv.lo, ax.zmin), hi = std::min(iv.hi, ax.zmax);
    if (!(lo < hi)) continue;
    s += "<rect class=\"ac\" x=\"" + num(kStripLeft) + "\" y=\"" + num(ax.py(hi)) + "\" width=\"" + num(kStripWidth) +
         "\" height=\"" + num(ax.py(lo) - ax.py(hi)) + "\" fill=\"#7a7a7a\"/>\n";
  }
  for (const auto& p : spectrum.pp) {
    if (p.value < ax.zmin || p.value > ax.zmax) continue;
    s += "<circle class=\"pp\" cx=\"" + num(kStripLeft + 0.5 * kStripWidth) + "\" cy=\"" + num(ax.py(p.value)) +
         "\" r=\"5\" fill=\"" + (p.embedded ? "white" : "black") + "\" stroke=\"black\"/>\n";
  }
  s += "<text x=\"730\" y=\"558\" font-size=\"12\" text-anchor=\"middle\">spectrum</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace dshell::cli
