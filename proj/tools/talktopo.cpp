// Command line front end for the talktopo library.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 resource error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "talktopo/random.hpp"
#include "talktopo/cross_validation.hpp"
#include "talktopo/csv.hpp"
#include "talktopo/diagram_distance.hpp"
#include "talktopo/diagram_io.hpp"
#include "talktopo/error.hpp"
#include "talktopo/manifest.hpp"
#include "talktopo/metric_space.hpp"
#include "talktopo/persistence.hpp"
#include "talktopo/persistence_image.hpp"
#include "talktopo/pipeline.hpp"
#include "talktopo/rips_filtration.hpp"
#include "talktopo/svg.hpp"
#include "talktopo/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace talktopo;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kResource = 3 };

struct Globals {
  std::string metric;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::string config_path;
  json config = json::object();

  void load_config() {
    if (config_path.empty()) return;
    try {
      config = json::parse(read_text_file(config_path));
    } catch (const json::exception& e) {
      throw DataError(config_path + ": " + e.what());
    }
    if (!config.is_object()) throw DataError(config_path + ": expected a JSON object");
  }

  [[nodiscard]] Metric resolved_metric() const {
    if (!metric.empty()) return parse_metric(metric);
    return parse_metric(config.value("metric", std::string("angular")));
  }
  [[nodiscard]] unsigned resolved_threads() const {
    return threads.value_or(config.value("threads", 1u));
  }
  [[nodiscard]] std::uint64_t resolved_seed() const {
    return seed.value_or(config.value("seed", std::uint64_t{0}));
  }
  [[nodiscard]] PivConfig piv() const {
    return config.contains("piv") ? piv_config_from_json(config.at("piv").dump()) : PivConfig{};
  }
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file_atomically(path, content);
  }
}

std::string distance_matrix_csv(const DistanceMatrix& dm) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) {
      if (j) out << ',';
      out << format_double(dm(i, j));
    }
    out << '\n';
  }
  return out.str();
}

DistanceMatrix read_distance_matrix(const fs::path& path) {
  const auto rows = read_numeric_csv(path);
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw DataError(path.string() + ": distance matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return DistanceMatrix(rows.size(), std::move(flat));
}

PersistenceDiagram without_essential(const PersistenceDiagram& d) {
  PersistenceDiagram out = d;
  std::erase_if(out.points, [](const DiagramPoint& p) { return p.essential(); });
  return out;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Persistent homology features for sentence embedding clouds"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--metric", g.metric, "angular, paper-literal or euclidean");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "run-level random seed");
  app.add_option("--config", g.config_path, "JSON file with defaults for the options above")
      ->check(CLI::ExistingFile);

  // distances
  auto* distances = app.add_subcommand("distances", "pairwise distance matrix of an embedding CSV");
  std::string dist_in, dist_out;
  distances->add_option("embeddings", dist_in, "embedding CSV")->required();
  distances->add_option("-o,--output", dist_out, "output CSV (default stdout)");

  // persistence
  auto* persistence = app.add_subcommand("persistence", "Rips persistence diagram of a point cloud");
  std::string pers_in, pers_out, pers_dump;
  int max_dim = 1;
  std::optional<double> threshold;
  bool from_distances = false;
  bool keep_zero = false;
  std::size_t max_simplices = kDefaultMaxSimplices;
  persistence->add_option("input", pers_in, "embedding CSV (or distance matrix with --distances)")->required();
  persistence->add_option("-o,--output", pers_out, "diagram CSV (default stdout)");
  persistence->add_option("--max-dim", max_dim, "largest homology dimension")->check(CLI::NonNegativeNumber);
  persistence->add_option("--threshold", threshold, "largest edge length (default: all edges)");
  persistence->add_flag("--distances", from_distances, "input is a square distance matrix");
  persistence->add_flag("--keep-zero", keep_zero, "keep zero-persistence intervals");
  persistence->add_option("--max-simplices", max_simplices, "abort above this many simplices");
  persistence->add_option("--dump-filtration", pers_dump, "write the filtration as CSV");

  // piv
  auto* piv = app.add_subcommand("piv", "persistence image of a diagram");
  std::string piv_in, piv_out;
  int piv_dim = 1;
  std::optional<std::size_t> pixels;
  std::optional<double> variance, ceiling;
  std::string weight;
  piv->add_option("diagram", piv_in, "diagram CSV")->required();
  piv->add_option("-o,--output", piv_out, "PIV CSV; a .json sidecar is written next to it")->required();
  piv->add_option("--dim", piv_dim, "homology dimension to rasterize");
  piv->add_option("--pixels", pixels, "pixels per axis")->check(CLI::PositiveNumber);
  piv->add_option("--variance", variance, "Gaussian variance");
  piv->add_option("--weight", weight, "linear or constant");
  piv->add_option("--ceiling", ceiling, "persistence at which the linear weight saturates");

  // wasserstein
  auto* wass = app.add_subcommand("wasserstein", "p-Wasserstein distance between two diagrams");
  std::string wa, wb;
  double wp = 1.0;
  int wdim = 1;
  bool drop_essential = false;
  wass->add_option("a", wa, "diagram CSV")->required();
  wass->add_option("b", wb, "diagram CSV")->required();
  wass->add_option("-p", wp, "order p >= 1");
  wass->add_option("--dim", wdim, "homology dimension");
  wass->add_flag("--drop-essential", drop_essential, "ignore points with infinite death");

  // train
  auto* train = app.add_subcommand("train", "k-fold cross-validation of a classifier");
  std::string train_x, train_y, train_out, model_name = "logreg";
  std::optional<std::size_t> folds;
  train->add_option("features", train_x, "N x F feature CSV")->required();
  train->add_option("labels", train_y, "N x L CSV of 0/1 labels")->required();
  train->add_option("--model", model_name, "logreg, linear_svm or mlp");
  train->add_option("-k,--folds", folds, "number of folds");
  train->add_option("-o,--output", train_out, "report JSON (default stdout)");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "full corpus run from a manifest");
  std::string manifest_path, pipeline_out;
  bool topology_only = false;
  bool no_plots = false;
  pipeline->add_option("manifest", manifest_path, "manifest JSON")->required()->check(CLI::ExistingFile);
  pipeline->add_option("-o,--output", pipeline_out, "output directory")->required();
  pipeline->add_flag("--topology-only", topology_only, "stop after diagrams and images");
  pipeline->add_flag("--no-plots", no_plots, "skip SVG plots");

  // synth
  auto* synth = app.add_subcommand("synth", "write a synthetic loop / blob corpus");
  SyntheticOptions so;
  std::string synth_out;
  synth->add_option("-o,--output", synth_out, "output directory")->required();
  synth->add_option("-n,--talks", so.n_talks, "number of talks (>= 4)");
  synth->add_option("--points", so.points_per_talk, "sentences per talk");
  synth->add_option("--noise", so.noise, "per-coordinate noise of loop talks");
  synth->add_option("--doc-dim", so.doc_dim, "document vector length");

  // plot
  auto* plot = app.add_subcommand("plot", "SVG of a diagram CSV or PIV CSV");
  std::string plot_in, plot_out;
  plot->add_option("input", plot_in, "diagram CSV (dim,birth,death header) or PIV CSV")->required();
  plot->add_option("-o,--output", plot_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  g.load_config();

  if (*distances) {
    const PointCloud cloud = PointCloud::from_rows(dist_in, read_numeric_csv(dist_in));
    write_output(dist_out, distance_matrix_csv(pairwise_distances(cloud, g.resolved_metric(), g.resolved_threads())));
  } else if (*persistence) {
    if (!persistence->count("--max-dim")) max_dim = g.config.value("max_hom_dim", max_dim);
    const DistanceMatrix dm = from_distances
        ? read_distance_matrix(pers_in)
        : pairwise_distances(PointCloud::from_rows(pers_in, read_numeric_csv(pers_in)),
                             g.resolved_metric(), g.resolved_threads());
    const Filtration f = build_filtration(dm, max_dim, threshold, max_simplices);
    if (!pers_dump.empty()) {
      write_file_atomically(pers_dump, [&](std::ostream& out) { write_filtration_csv(f, out); });
    }
    PersistenceOptions opts;
    opts.keep_zero_persistence = keep_zero;
    PersistenceDiagram d = compute_persistence(f, opts);
    d.meta.source_id = pers_in;
    d.meta.metric = from_distances ? "precomputed" : std::string(to_string(g.resolved_metric()));
    d.meta.threshold = f.threshold();
    std::ostringstream out;
    write_diagram_csv(out, d);
    write_output(pers_out, out.str());
  } else if (*piv) {
    PivConfig cfg = g.piv();
    if (pixels) cfg.pixels_per_axis = *pixels;
    if (variance) cfg.variance = *variance;
    if (!weight.empty()) cfg.weight = parse_weight_kind(weight);
    if (ceiling) cfg.weight_ceiling = *ceiling;
    cfg.validate();
    save_persistence_image(piv_out, rasterize(read_diagram_csv(fs::path(piv_in)), piv_dim, cfg));
  } else if (*wass) {
    PersistenceDiagram a = read_diagram_csv(fs::path(wa));
    PersistenceDiagram b = read_diagram_csv(fs::path(wb));
    if (drop_essential) {
      a = without_essential(a);
      b = without_essential(b);
    } else {
      for (const auto* d : {&a, &b}) {
        for (const auto& p : d->points) {
          if (p.dim == wdim && p.essential()) {
            throw DataError("diagram has a point with infinite death in dimension " + std::to_string(wdim) +
                            "; pass --drop-essential to ignore such points");
          }
        }
      }
    }
    std::cout << format_double(wasserstein(a, b, wp, wdim)) << '\n';
  } else if (*train) {
    const ModelKind kind = parse_model_kind(model_name);
    Hyperparams hp = Hyperparams::defaults(kind);
    if (g.config.contains("hyperparams") && g.config["hyperparams"].contains(std::string(to_string(kind)))) {
      // Reuse the manifest parser for the override block.
      json stub = {{"talks", json::array()},
                   {"hyperparams", {{std::string(to_string(kind)), g.config["hyperparams"][std::string(to_string(kind))]}}}};
      hp = parse_manifest(stub.dump(), ".").hyperparams.at(kind);
    }
    const std::uint64_t seed = g.resolved_seed();
    hp.seed = derive_seed(seed, "model", static_cast<std::uint64_t>(kind));
    const auto x = to_matrix(read_numeric_csv(train_x));
    const auto yd = to_matrix(read_numeric_csv(train_y));
    if (yd.rows() != x.rows()) throw DataError("feature and label files have different row counts");
    LabeledDataset ds;
    ds.features = x;
    ds.labels = yd.cast<int>();
    if ((ds.labels.cast<double>() - yd).cwiseAbs().maxCoeff() > 0.0) throw DataError("labels must be 0 or 1");
    for (Eigen::Index c = 0; c < yd.cols(); ++c) ds.label_names.push_back("label" + std::to_string(c));
    ds.fold_seed = derive_seed(seed, "folds");
    const std::size_t k = folds.value_or(g.config.contains("cv") ? g.config["cv"].value("k", std::size_t{10}) : 10);
    const auto r = cross_validate(ds, kind, hp, k, g.resolved_threads());
    json j;
    j["model"] = std::string(to_string(kind));
    j["folds"] = r.folds;
    j["mean"] = r.mean;
    for (const auto& l : r.labels) j["labels"][l.label] = {{"mean", l.mean}, {"fold_accuracy", l.fold_accuracy}};
    j["warnings"] = r.warnings;
    write_output(train_out, j.dump(2) + "\n");
  } else if (*pipeline) {
    json m;
    try {
      m = json::parse(read_text_file(manifest_path));
    } catch (const json::exception& e) {
      throw DataError(manifest_path + ": " + e.what());
    }
    json overlay = g.config;
    overlay.erase("talks");
    m.merge_patch(overlay);
    if (!g.metric.empty()) m["metric"] = g.metric;
    if (g.seed) m["seed"] = *g.seed;
    if (g.threads) m["threads"] = *g.threads;
    Corpus corpus = ingest(parse_manifest(m.dump(), fs::path(manifest_path).parent_path()));
    for (const auto& e : corpus.errors) std::cerr << "warning: " << e.talk_id << ": " << e.message << '\n';
    PipelineOptions opts;
    opts.topology_only = topology_only;
    if (no_plots) opts.plots = false;
    const PipelineResult r = run_pipeline(corpus, pipeline_out, opts);
    for (std::size_t i = corpus.errors.size(); i < r.errors.size(); ++i) {
      std::cerr << "warning: " << r.errors[i].talk_id << ": " << r.errors[i].message << '\n';
    }
    for (const auto& cell : r.cells) {
      std::printf("%-10s %-13s %.4f\n", std::string(to_string(cell.model)).c_str(),
                  std::string(to_string(cell.feature_spec)).c_str(), cell.mean);
    }
  } else if (*synth) {
    so.seed = g.resolved_seed();
    const auto m = generate_synthetic_corpus(so, synth_out);
    std::cout << (fs::path(synth_out) / "manifest.json").string() << " (" << m.talks.size() << " talks)\n";
  } else if (*plot) {
    const std::string text = read_text_file(plot_in);
    if (text.rfind("dim,birth,death", 0) == 0) {
      plot_diagram_svg(read_diagram_csv(fs::path(plot_in)), plot_out);
    } else {
      const auto values = read_piv_csv(plot_in);
      const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
      if (side * side != values.size()) throw DataError(plot_in + ": PIV length is not a square");
      write_file_atomically(plot_out, piv_svg(values, side));
    }
  }
  return kOk;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}
