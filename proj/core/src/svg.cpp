#include "talktopo/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "talktopo/csv.hpp"
#include "talktopo/error.hpp"

namespace talktopo {

namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& diagram) {
  double hi = 0.0;
  bool has_essential = false;
  for (const auto& p : diagram.points) {
    hi = std::max(hi, p.birth);
    if (p.essential()) {
      has_essential = true;
    } else {
      hi = std::max(hi, p.death);
    }
  }
  if (hi <= 0.0) hi = 1.0;
  const double top = hi * (has_essential ? 1.1 : 1.0);
  const double plot = kSize - 2 * kMargin;
  auto sx = [&](double v) { return kMargin + plot * v / top; };
  auto sy = [&](double v) { return kSize - kMargin - plot * v / top; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kSize - kMargin << "\" x2=\"" << kSize - kMargin
      << "\" y2=\"" << kSize - kMargin << "\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kSize - kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kMargin << "\"/>\n"
      << "</g>\n"
      << "<line class=\"diagonal\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(top)
      << "\" y2=\"" << sy(top) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  if (has_essential) {
    svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(top) << "\" x2=\"" << sx(top) << "\" y2=\""
        << sy(top) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 8 << "\" font-size=\"12\" text-anchor=\"middle\">birth</text>\n"
      << "<text x=\"12\" y=\"" << kSize / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
      << kSize / 2 << ")\">death</text>\n"
      << "<text x=\"" << kMargin << "\" y=\"" << kSize - kMargin + 14 << "\" font-size=\"10\">0</text>\n"
      << "<text x=\"" << kSize - kMargin << "\" y=\"" << kSize - kMargin + 14
      << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(top) << "</text>\n";
  static constexpr std::array<const char*, 4> colours = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (const auto& p : diagram.points) {
    const double y = p.essential() ? top : p.death;
    svg << "<circle cx=\"" << fmt(sx(p.birth)) << "\" cy=\"" << fmt(sy(y)) << "\" r=\"3\" fill=\""
        << colours[static_cast<std::size_t>(p.dim) % colours.size()] << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string piv_svg(const std::vector<double>& values, std::size_t pixels) {
  if (pixels == 0 || values.size() != pixels * pixels) {
    throw ArgumentError("PIV value count does not match the resolution");
  }
  const double peak = *std::max_element(values.begin(), values.end());
  const double cell = (kSize - 2 * kMargin) / static_cast<double>(pixels);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < pixels; ++r) {
    for (std::size_t c = 0; c < pixels; ++c) {
      const double v = values[r * pixels + c];
      const int shade = peak > 0.0 ? static_cast<int>(std::lround(255.0 * v / peak)) : 0;
      // Row 0 is the lowest persistence band, drawn at the bottom.
      const double x = kMargin + cell * static_cast<double>(c);
      const double y = kSize - kMargin - cell * static_cast<double>(r + 1);
      svg << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(cell) << "\" height=\""
          << fmt(cell) << "\" fill=\"rgb(" << shade << ',' << shade << ',' << shade << ")\"/>\n";
    }
  }
  svg << "</g>\n"
      << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 12 << "\" font-size=\"12\" text-anchor=\"middle\">birth</text>\n"
      << "<text x=\"14\" y=\"" << kSize / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << kSize / 2 << ")\">persistence</text>\n"
      << "</svg>\n";
  return svg.str();
}

std::string piv_svg(const PersistenceImage& image) { return piv_svg(image.values, image.resolution()); }

void plot_diagram_svg(const PersistenceDiagram& diagram, const std::filesystem::path& out) {
  write_file_atomically(out, diagram_svg(diagram));
}

void plot_piv_svg(const PersistenceImage& image, const std::filesystem::path& out) {
  write_file_atomically(out, piv_svg(image));
}

}  // namespace talktopo
