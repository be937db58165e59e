#include <algorithm>
#include <sstream>

#include "loewner/io.hpp"

namespace loewner::io {

std::string hull_svg(const HullTrace& trace) {
  constexpr double kSize = 400.0;
  constexpr double kPad = 20.0;
  double xmin = -1.0, xmax = 1.0, ymax = 1.0;
  for (Complex p : trace.tips_refined) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymax = std::max(ymax, p.imag());
  }
  const double span = std::max(xmax - xmin, ymax) * 1.1;
  const double cx = 0.5 * (xmin + xmax);
  const double scale = (kSize - 2.0 * kPad) / span;
  auto X = [&](double x) { return kSize / 2.0 + (x - cx) * scale; };
  auto Y = [&](double y) { return kSize - kPad - y * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"0\" y1=\"" << format_double(Y(0.0)) << "\" x2=\"" << kSize << "\" y2=\""
      << format_double(Y(0.0)) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < trace.tips_refined.size(); ++i) {
    if (i) out << ' ';
    out << format_double(X(trace.tips_refined[i].real())) << ','
        << format_double(Y(std::max(0.0, trace.tips_refined[i].imag())));
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

}  // namespace loewner::io
