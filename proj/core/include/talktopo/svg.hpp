#pragma once

#include <filesystem>
#include <string>

#include "talktopo/persistence.hpp"
#include "talktopo/persistence_image.hpp"

namespace talktopo {

/// Birth/death scatter (one colour per dimension) with the diagonal. Essential
/// classes are drawn on a dashed line above the finite range.
std::string diagram_svg(const PersistenceDiagram& diagram);

/// Grayscale heatmap, black at 0 and white at the largest entry; persistence
/// increases upwards.
std::string piv_svg(const PersistenceImage& image);
/// Same for a raw pixels_per_axis^2 vector (e.g. read back from a PIV CSV).
std::string piv_svg(const std::vector<double>& values, std::size_t pixels_per_axis);

void plot_diagram_svg(const PersistenceDiagram& diagram, const std::filesystem::path& out);
void plot_piv_svg(const PersistenceImage& image, const std::filesystem::path& out);

}  // namespace talktopo
