#include "talktopo/manifest.hpp"

#include <set>
#include <sstream>

#include "json.hpp"
#include "talktopo/csv.hpp"
#include "talktopo/diagram_io.hpp"
#include "talktopo/error.hpp"
#include "talktopo/random.hpp"

namespace talktopo {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Hyperparams hyperparams_from_json(const json& j, ModelKind kind) {
  Hyperparams hp = Hyperparams::defaults(kind);
  hp.learning_rate = j.value("learning_rate", hp.learning_rate);
  hp.epochs = j.value("epochs", hp.epochs);
  hp.l2 = j.value("l2", hp.l2);
  hp.hidden = j.value("hidden", hp.hidden);
  hp.batch_size = j.value("batch_size", hp.batch_size);
  if (hp.learning_rate <= 0.0 || hp.epochs < 1 || hp.l2 < 0.0 || hp.hidden < 1 || hp.batch_size < 1) {
    throw DataError("invalid hyperparameters for " + std::string(to_string(kind)));
  }
  return hp;
}

TalkEntry talk_from_json(const json& j) {
  TalkEntry t;
  t.talk_id = j.at("talk_id").get<std::string>();
  t.embedding_file = j.at("embedding_file").get<std::string>();
  t.doc_vector_file = j.at("doc_vector_file").get<std::string>();
  t.ratings.talk_id = t.talk_id;
  t.ratings.view_count = j.at("view_count").get<std::uint64_t>();
  for (const auto& [name, count] : j.at("rating_counts").items()) {
    t.ratings.rating_counts[name] = count.get<std::uint64_t>();
  }
  return t;
}

}  // namespace

std::uint64_t CorpusManifest::fold_seed() const {
  return cv.seed ? *cv.seed : derive_seed(seed, "folds");
}

Hyperparams CorpusManifest::hyperparams_for(ModelKind kind) const {
  auto it = hyperparams.find(kind);
  Hyperparams hp = it != hyperparams.end() ? it->second : Hyperparams::defaults(kind);
  hp.seed = derive_seed(seed, "model", static_cast<std::uint64_t>(kind));
  return hp;
}

fs::path CorpusManifest::resolve(const fs::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

CorpusManifest parse_manifest(std::string_view json_text, const fs::path& base_dir) {
  CorpusManifest m;
  m.base_dir = base_dir;
  try {
    const json j = json::parse(json_text);
    m.seed = j.value("seed", std::uint64_t{0});
    m.metric = parse_metric(j.value("metric", std::string("angular")));
    m.max_hom_dim = j.value("max_hom_dim", 1);
    m.max_simplices = j.value("max_simplices", kDefaultMaxSimplices);
    m.threads = j.value("threads", 1u);
    m.plots = j.value("plots", true);
    if (j.contains("piv")) m.piv = piv_config_from_json(j.at("piv").dump());
    m.piv.validate();
    if (j.contains("cv")) {
      const auto& cv = j.at("cv");
      m.cv.k = cv.value("k", std::size_t{10});
      if (cv.contains("seed")) m.cv.seed = cv.at("seed").get<std::uint64_t>();
    }
    if (j.contains("models")) {
      m.models.clear();
      for (const auto& name : j.at("models")) m.models.push_back(parse_model_kind(name.get<std::string>()));
      if (m.models.empty()) throw DataError("manifest lists no models");
    }
    if (j.contains("hyperparams")) {
      for (const auto& [name, hp] : j.at("hyperparams").items()) {
        const ModelKind kind = parse_model_kind(name);
        m.hyperparams[kind] = hyperparams_from_json(hp, kind);
      }
    }
    std::set<std::string, std::less<>> seen;
    for (const auto& t : j.at("talks")) {
      TalkEntry entry = talk_from_json(t);
      if (!seen.insert(entry.talk_id).second) {
        throw DataError("duplicate talk_id '" + entry.talk_id + "' in manifest");
      }
      m.talks.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  } catch (const ArgumentError& e) {
    throw DataError(std::string("invalid manifest: ") + e.what());
  }
  if (m.max_hom_dim < 0) throw DataError("max_hom_dim must be non-negative");
  if (m.threads == 0) m.threads = 1;
  return m;
}

CorpusManifest load_manifest(const fs::path& path) {
  return parse_manifest(read_text_file(path), path.parent_path());
}

std::string manifest_to_json(const CorpusManifest& m) {
  json j = json::object();
  j["seed"] = m.seed;
  j["metric"] = std::string(to_string(m.metric));
  j["max_hom_dim"] = m.max_hom_dim;
  j["max_simplices"] = m.max_simplices;
  j["threads"] = m.threads;
  j["plots"] = m.plots;
  j["piv"] = json::parse(piv_config_to_json(m.piv));
  j["cv"] = {{"k", m.cv.k}};
  if (m.cv.seed) j["cv"]["seed"] = *m.cv.seed;
  j["models"] = json::array();
  for (auto kind : m.models) j["models"].push_back(std::string(to_string(kind)));
  if (!m.hyperparams.empty()) {
    j["hyperparams"] = json::object();
    for (const auto& [kind, hp] : m.hyperparams) {
      j["hyperparams"][std::string(to_string(kind))] = {{"learning_rate", hp.learning_rate},
                                                       {"epochs", hp.epochs},
                                                       {"l2", hp.l2},
                                                       {"hidden", hp.hidden},
                                                       {"batch_size", hp.batch_size}};
    }
  }
  j["talks"] = json::array();
  for (const auto& t : m.talks) {
    json counts = json::object();
    for (const auto& [name, c] : t.ratings.rating_counts) counts[name] = c;
    j["talks"].push_back({{"talk_id", t.talk_id},
                          {"embedding_file", t.embedding_file.generic_string()},
                          {"doc_vector_file", t.doc_vector_file.generic_string()},
                          {"view_count", t.ratings.view_count},
                          {"rating_counts", std::move(counts)}});
  }
  return j.dump(2) + "\n";
}

void check_failure_budget(std::size_t failed, std::size_t total) {
  if (static_cast<double>(failed) > kMaxFailureFraction * static_cast<double>(total)) {
    throw DataError(std::to_string(failed) + " of " + std::to_string(total) +
                    " talks failed, more than the 10% the run tolerates");
  }
}

Corpus ingest(CorpusManifest manifest) {
  Corpus corpus;
  std::optional<Eigen::Index> doc_dim;
  for (const auto& entry : manifest.talks) {
    try {
      entry.ratings.validate();
      const fs::path emb = manifest.resolve(entry.embedding_file);
      const fs::path doc = manifest.resolve(entry.doc_vector_file);
      if (!fs::exists(emb)) throw DataError("missing embedding file " + emb.string());
      if (!fs::exists(doc)) throw DataError("missing document vector file " + doc.string());
      const auto rows = read_numeric_csv(emb);
      if (rows.empty()) throw DataError(emb.string() + ": no sentence embeddings");
      PointCloud cloud = PointCloud::from_rows(entry.talk_id, rows);
      const auto doc_rows = read_numeric_csv(doc);
      std::vector<double> flat;
      for (const auto& r : doc_rows) flat.insert(flat.end(), r.begin(), r.end());
      if (flat.empty()) throw DataError(doc.string() + ": empty document vector");
      const auto len = static_cast<Eigen::Index>(flat.size());
      if (doc_dim && *doc_dim != len) {
        throw DataError(doc.string() + ": document vector has " + std::to_string(len) +
                        " entries, expected " + std::to_string(*doc_dim));
      }
      doc_dim = len;
      corpus.talks.push_back(
          {entry.talk_id, std::move(cloud), Eigen::Map<Eigen::VectorXd>(flat.data(), len), entry.ratings});
    } catch (const Error& e) {
      corpus.errors.push_back({entry.talk_id, "ingest", e.what()});
    }
  }
  check_failure_budget(corpus.errors.size(), manifest.talks.size());
  if (corpus.talks.empty()) throw DataError("manifest contains no usable talks");
  corpus.manifest = std::move(manifest);
  return corpus;
}

Corpus ingest(const fs::path& manifest_path) { return ingest(load_manifest(manifest_path)); }

}  // namespace talktopo
