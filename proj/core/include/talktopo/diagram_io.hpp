#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "talktopo/persistence.hpp"
#include "talktopo/persistence_image.hpp"

namespace talktopo {

/// `dim,birth,death` header, rows sorted by (dim, birth, death), "inf" for
/// essential classes.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram);
PersistenceDiagram read_diagram_csv(std::istream& in, std::string_view source);
PersistenceDiagram read_diagram_csv(const std::filesystem::path& path);

/// One CSV row of pixels_per_axis^2 values, row-major from the
/// (min birth, min persistence) corner.
void write_piv_csv(std::ostream& out, const PersistenceImage& image);
std::vector<double> read_piv_csv(const std::filesystem::path& path);

/// JSON object holding every PivConfig field; an unset ceiling is "auto".
std::string piv_config_to_json(const PivConfig& cfg);
/// Reads the fields present in `json` over the defaults of PivConfig.
PivConfig piv_config_from_json(std::string_view json);

/// Writes `<stem>.csv` and the `<stem>.json` sidecar atomically.
void save_persistence_image(const std::filesystem::path& csv_path, const PersistenceImage& image);

}  // namespace talktopo
