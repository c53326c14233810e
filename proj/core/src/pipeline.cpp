#include "talktopo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "talktopo/csv.hpp"
#include "talktopo/diagram_io.hpp"
#include "talktopo/error.hpp"
#include "talktopo/rips_filtration.hpp"
#include "talktopo/svg.hpp"

namespace talktopo {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct TopologyOutcome {
  std::optional<PersistenceDiagram> diagram;
  std::string error;
};

TopologyOutcome talk_topology(const TalkData& talk, const CorpusManifest& m) {
  try {
    const DistanceMatrix dm = pairwise_distances(talk.cloud, m.metric, 1);
    const int max_dim = std::min<int>(m.max_hom_dim, static_cast<int>(talk.cloud.size()) - 1);
    const Filtration f = build_filtration(dm, max_dim, std::nullopt, m.max_simplices);
    PersistenceDiagram d = compute_persistence(f);
    d.meta.source_id = talk.talk_id;
    d.meta.metric = std::string(to_string(m.metric));
    d.meta.threshold = f.threshold();
    return {std::move(d), {}};
  } catch (const std::bad_alloc&) {
    return {std::nullopt, "out of memory"};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
}

}  // namespace

PipelineResult run_pipeline(const Corpus& corpus, const fs::path& out_dir,
                            const PipelineOptions& options) {
  const CorpusManifest& m = corpus.manifest;
  const unsigned threads = options.threads.value_or(m.threads);
  const bool plots = options.plots.value_or(m.plots);

  std::vector<TopologyOutcome> outcomes(corpus.talks.size());
  parallel_for(corpus.talks.size(), threads,
               [&](std::size_t i) { outcomes[i] = talk_topology(corpus.talks[i], m); });

  PipelineResult result;
  result.errors = corpus.errors;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].diagram) {
      kept.push_back(i);
    } else {
      result.errors.push_back({corpus.talks[i].talk_id, "topology", outcomes[i].error});
    }
  }
  check_failure_budget(result.errors.size(), m.talks.size());
  if (kept.size() < 2) throw DataError("fewer than two talks survived the topology stage");

  PivConfig piv = m.piv;
  if (!piv.weight_ceiling) {
    double ceiling = 0.0;
    for (auto i : kept) {
      for (const auto& p : outcomes[i].diagram->points) {
        if (p.dim == 1 && !p.essential()) ceiling = std::max(ceiling, p.persistence());
      }
    }
    piv.weight_ceiling = ceiling > 0.0 ? ceiling : 1.0;
  }
  result.weight_ceiling = *piv.weight_ceiling;

  result.talks.resize(kept.size());
  parallel_for(kept.size(), threads, [&](std::size_t j) {
    const auto i = kept[j];
    TalkTopology& t = result.talks[j];
    t.talk_id = corpus.talks[i].talk_id;
    t.sentences = corpus.talks[i].cloud.size();
    t.diagram = std::move(*outcomes[i].diagram);
    t.image = rasterize(t.diagram, 1, piv);

    write_file_atomically(out_dir / "diagrams" / (t.talk_id + ".csv"),
                          [&](std::ostream& out) { write_diagram_csv(out, t.diagram); });
    save_persistence_image(out_dir / "pivs" / (t.talk_id + ".csv"), t.image);
    if (plots) {
      plot_diagram_svg(t.diagram, out_dir / "plots" / (t.talk_id + "_diagram.svg"));
      plot_piv_svg(t.image, out_dir / "plots" / (t.talk_id + "_piv.svg"));
    }
  });

  if (!options.topology_only) {
    const auto n = static_cast<Eigen::Index>(kept.size());
    const Eigen::Index doc_dim = corpus.talks[kept.front()].doc_vector.size();
    const auto pixels = static_cast<Eigen::Index>(piv.pixels_per_axis * piv.pixels_per_axis);
    Eigen::MatrixXd docs(n, doc_dim);
    Eigen::MatrixXd images(n, pixels);
    std::vector<RatingRecord> ratings;
    for (Eigen::Index j = 0; j < n; ++j) {
      const TalkData& talk = corpus.talks[kept[static_cast<std::size_t>(j)]];
      docs.row(j) = talk.doc_vector.transpose();
      images.row(j) = Eigen::Map<const Eigen::RowVectorXd>(
          result.talks[static_cast<std::size_t>(j)].image.values.data(), pixels);
      ratings.push_back(talk.ratings);
    }
    const LabelMatrix labels = binarize_labels(ratings);
    std::vector<std::string> names(kRatingCategories.begin(), kRatingCategories.end());
    for (ModelKind kind : m.models) {
      for (FeatureSpec spec : {FeatureSpec::doc_only, FeatureSpec::doc_plus_piv}) {
        LabeledDataset ds{assemble_features(docs, &images, spec), labels, names, spec, m.fold_seed()};
        result.cells.push_back(cross_validate(ds, kind, m.hyperparams_for(kind), m.cv.k, threads));
      }
    }
    write_file_atomically(out_dir / "report.json", report_json(corpus, result));
    write_file_atomically(out_dir / "report.csv", report_csv(result));
  }
  return result;
}

std::string report_json(const Corpus& corpus, const PipelineResult& result) {
  const CorpusManifest& m = corpus.manifest;
  ordered_json j;
  ordered_json cfg;
  cfg["seed"] = m.seed;
  cfg["metric"] = std::string(to_string(m.metric));
  cfg["max_hom_dim"] = m.max_hom_dim;
  cfg["cv"] = {{"k", m.cv.k}, {"seed", m.fold_seed()}};
  PivConfig piv = m.piv;
  piv.weight_ceiling = result.weight_ceiling;
  cfg["piv"] = ordered_json::parse(piv_config_to_json(piv));
  ordered_json hps = ordered_json::object();
  for (ModelKind kind : m.models) {
    const Hyperparams hp = m.hyperparams_for(kind);
    ordered_json h = {{"learning_rate", hp.learning_rate}, {"epochs", hp.epochs}, {"l2", hp.l2}};
    if (kind == ModelKind::mlp) {
      h["hidden"] = hp.hidden;
      h["batch_size"] = hp.batch_size;
    }
    h["seed"] = hp.seed;
    hps[std::string(to_string(kind))] = std::move(h);
  }
  cfg["models"] = std::move(hps);
  j["config"] = std::move(cfg);

  j["talks"] = {{"listed", m.talks.size()}, {"used", result.talks.size()}};
  ordered_json errors = ordered_json::array();
  auto sorted_errors = result.errors;
  std::sort(sorted_errors.begin(), sorted_errors.end(),
            [](const TalkError& a, const TalkError& b) { return a.talk_id < b.talk_id; });
  for (const auto& e : sorted_errors) {
    errors.push_back({{"talk_id", e.talk_id}, {"stage", e.stage}, {"message", e.message}});
  }
  j["errors"] = std::move(errors);

  ordered_json table = ordered_json::object();
  for (const auto& cell : result.cells) {
    table[std::string(to_string(cell.model))][std::string(to_string(cell.feature_spec))] = cell.mean;
  }
  j["average_accuracy"] = std::move(table);

  ordered_json cells = ordered_json::array();
  for (const auto& cell : result.cells) {
    ordered_json c;
    c["model"] = std::string(to_string(cell.model));
    c["feature_spec"] = std::string(to_string(cell.feature_spec));
    c["folds"] = cell.folds;
    c["mean"] = cell.mean;
    ordered_json per_label = ordered_json::object();
    for (const auto& label : cell.labels) {
      per_label[label.label] = {{"mean", label.mean}, {"fold_accuracy", label.fold_accuracy}};
    }
    c["labels"] = std::move(per_label);
    c["warnings"] = cell.warnings;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);

  ordered_json sentences = ordered_json::object();
  for (const auto& t : result.talks) sentences[t.talk_id] = t.sentences;
  j["sentence_counts"] = std::move(sentences);
  return j.dump(2) + "\n";
}

std::string report_csv(const PipelineResult& result) {
  std::ostringstream out;
  out << "model,feature_spec,label,fold,accuracy\n";
  for (const auto& cell : result.cells) {
    const std::string prefix =
        std::string(to_string(cell.model)) + ',' + std::string(to_string(cell.feature_spec)) + ',';
    for (const auto& label : cell.labels) {
      for (std::size_t f = 0; f < label.fold_accuracy.size(); ++f) {
        out << prefix << label.label << ',' << f << ',' << format_double(label.fold_accuracy[f]) << '\n';
      }
      out << prefix << label.label << ",mean," << format_double(label.mean) << '\n';
    }
    out << prefix << "all,mean," << format_double(cell.mean) << '\n';
  }
  return out.str();
}

}  // namespace talktopo
