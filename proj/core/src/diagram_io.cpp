#include "talktopo/diagram_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "talktopo/csv.hpp"
#include "talktopo/error.hpp"

namespace talktopo {

using nlohmann::json;

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram) {
  PersistenceDiagram sorted = diagram;
  sorted.sort();
  out << "dim,birth,death\n";
  for (const auto& p : sorted.points) {
    out << p.dim << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
  }
}

PersistenceDiagram read_diagram_csv(std::istream& in, std::string_view source) {
  PersistenceDiagram diagram;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_csv_line(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 3 && fields[0] == "dim" && fields[1] == "birth" && fields[2] == "death") {
        continue;
      }
      throw DataError(std::string(source) + ": expected header 'dim,birth,death'");
    }
    if (fields.size() != 3) {
      throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": expected 3 fields");
    }
    try {
      const double dim = parse_double(fields[0]);
      DiagramPoint p{static_cast<int>(dim), parse_double(fields[1]), parse_double(fields[2])};
      if (dim != static_cast<double>(p.dim) || p.dim < 0 || !std::isfinite(p.birth) ||
          std::isnan(p.death) || p.death < p.birth) {
        throw DataError("invalid diagram point");
      }
      diagram.points.push_back(p);
    } catch (const DataError& e) {
      throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  diagram.meta.source_id = std::string(source);
  diagram.sort();
  return diagram;
}

PersistenceDiagram read_diagram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_diagram_csv(in, path.string());
}

void write_piv_csv(std::ostream& out, const PersistenceImage& image) {
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    if (i) out << ',';
    out << format_double(image.values[i]);
  }
  out << '\n';
}

std::vector<double> read_piv_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path);
  if (rows.size() != 1) throw DataError(path.string() + ": a PIV file holds exactly one row");
  return rows.front();
}

std::string piv_config_to_json(const PivConfig& cfg) {
  json j;
  j["pixels_per_axis"] = cfg.pixels_per_axis;
  j["variance"] = cfg.variance;
  j["birth_range"] = {cfg.birth_range.first, cfg.birth_range.second};
  j["persistence_range"] = {cfg.persistence_range.first, cfg.persistence_range.second};
  j["weight"] = std::string(to_string(cfg.weight));
  if (cfg.weight_ceiling) {
    j["weight_ceiling"] = *cfg.weight_ceiling;
  } else {
    j["weight_ceiling"] = "auto";
  }
  return j.dump(2);
}

PivConfig piv_config_from_json(std::string_view text) {
  PivConfig cfg;
  try {
    const json j = json::parse(text);
    if (j.contains("pixels_per_axis")) cfg.pixels_per_axis = j.at("pixels_per_axis").get<std::size_t>();
    if (j.contains("variance")) cfg.variance = j.at("variance").get<double>();
    if (j.contains("birth_range")) {
      cfg.birth_range = {j.at("birth_range").at(0).get<double>(), j.at("birth_range").at(1).get<double>()};
    }
    if (j.contains("persistence_range")) {
      cfg.persistence_range = {j.at("persistence_range").at(0).get<double>(),
                               j.at("persistence_range").at(1).get<double>()};
    }
    if (j.contains("weight")) cfg.weight = parse_weight_kind(j.at("weight").get<std::string>());
    if (j.contains("weight_ceiling")) {
      const auto& c = j.at("weight_ceiling");
      if (c.is_string()) {
        if (c.get<std::string>() != "auto") throw DataError("weight_ceiling must be a number or \"auto\"");
        cfg.weight_ceiling.reset();
      } else {
        cfg.weight_ceiling = c.get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid PIV config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void save_persistence_image(const std::filesystem::path& csv_path, const PersistenceImage& image) {
  write_file_atomically(csv_path, [&](std::ostream& out) { write_piv_csv(out, image); });
  auto sidecar = csv_path;
  sidecar.replace_extension(".json");
  write_file_atomically(sidecar, piv_config_to_json(image.config) + "\n");
}

}  // namespace talktopo
