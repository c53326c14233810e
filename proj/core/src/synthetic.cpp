#include "talktopo/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "talktopo/csv.hpp"
#include "talktopo/error.hpp"
#include "talktopo/labels.hpp"
#include "talktopo/random.hpp"

namespace talktopo {

namespace fs = std::filesystem;

namespace {

std::vector<double> random_unit_vector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

/// Second vector orthonormalised against `e1`.
std::vector<double> orthonormal_to(Rng& rng, const std::vector<double>& e1) {
  for (;;) {
    auto v = random_unit_vector(rng, e1.size());
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * e1[i];
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] -= dot * e1[i];
      norm += v[i] * v[i];
    }
    if (norm > 1e-6) {
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
      return v;
    }
  }
}

std::vector<std::vector<double>> loop_cloud(Rng& rng, const SyntheticOptions& o) {
  const auto e1 = random_unit_vector(rng, o.ambient_dim);
  const auto e2 = orthonormal_to(rng, e1);
  std::vector<std::vector<double>> rows(o.points_per_talk, std::vector<double>(o.ambient_dim));
  for (auto& row : rows) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t d = 0; d < o.ambient_dim; ++d) {
      row[d] = c * e1[d] + s * e2[d] + o.noise * rng.normal();
    }
  }
  return rows;
}

std::vector<std::vector<double>> blob_cloud(Rng& rng, const SyntheticOptions& o) {
  const auto centre = random_unit_vector(rng, o.ambient_dim);
  std::vector<std::vector<double>> rows(o.points_per_talk, std::vector<double>(o.ambient_dim));
  for (auto& row : rows) {
    for (std::size_t d = 0; d < o.ambient_dim; ++d) row[d] = centre[d] + o.blob_spread * rng.normal();
  }
  return rows;
}

std::string talk_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "talk_%04zu", i);
  return buf;
}

}  // namespace

CorpusManifest generate_synthetic_corpus(const SyntheticOptions& o, const fs::path& out_dir) {
  if (o.n_talks < 4) throw ArgumentError("synthetic corpus needs at least 4 talks");
  if (o.points_per_talk < 3 || o.ambient_dim < 2 || o.doc_dim < 1) {
    throw ArgumentError("synthetic corpus needs >= 3 points, >= 2 dimensions and a document vector");
  }
  if (o.noise < 0.0 || o.blob_spread <= 0.0) throw ArgumentError("noise levels must be non-negative");
  bool known = false;
  for (auto c : kRatingCategories) known = known || c == o.signal_category;
  if (!known) throw ArgumentError("unknown rating category '" + o.signal_category + "'");

  fs::create_directories(out_dir / "embeddings");
  fs::create_directories(out_dir / "docs");

  CorpusManifest m;
  m.seed = o.seed;
  m.base_dir = out_dir;
  for (std::size_t i = 0; i < o.n_talks; ++i) {
    Rng rng(derive_seed(o.seed, "talk", i));
    const bool loop = synthetic_talk_has_loop(i);
    const auto cloud = loop ? loop_cloud(rng, o) : blob_cloud(rng, o);

    std::vector<std::vector<double>> doc(1, std::vector<double>(o.doc_dim));
    for (auto& x : doc[0]) x = rng.normal();

    TalkEntry t;
    t.talk_id = talk_name(i);
    t.embedding_file = fs::path("embeddings") / (t.talk_id + ".csv");
    t.doc_vector_file = fs::path("docs") / (t.talk_id + ".csv");
    t.ratings.talk_id = t.talk_id;
    t.ratings.view_count = 1000 + rng.below(99'000);
    for (auto c : kRatingCategories) {
      std::uint64_t count = 0;
      if (c == o.signal_category) {
        // Rate 2% for loops, 1% otherwise: the median falls between the classes.
        count = t.ratings.view_count * (loop ? 2 : 1) / 100;
      } else {
        count = rng.below(t.ratings.view_count / 10 + 1);
      }
      t.ratings.rating_counts.emplace(std::string(c), count);
    }

    write_file_atomically(out_dir / t.embedding_file,
                          [&](std::ostream& out) { write_numeric_csv(out, cloud); });
    write_file_atomically(out_dir / t.doc_vector_file,
                          [&](std::ostream& out) { write_numeric_csv(out, doc); });
    m.talks.push_back(std::move(t));
  }
  write_file_atomically(out_dir / "manifest.json", manifest_to_json(m));
  return m;
}

}  // namespace talktopo
