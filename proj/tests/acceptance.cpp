// End-to-end acceptance checks. Prints one PASS/FAIL line per check and exits
// non-zero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "talktopo/csv.hpp"
#include "talktopo/diagram_distance.hpp"
#include "talktopo/models.hpp"
#include "talktopo/persistence.hpp"
#include "talktopo/persistence_image.hpp"
#include "talktopo/pipeline.hpp"
#include "talktopo/synthetic.hpp"

using namespace talktopo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t peak_rss_kib() {
  std::ifstream status("/proc/self/status");
  for (std::string line; std::getline(status, line);) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stoul(line.substr(6));
  }
  return 0;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome betti_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(101);
  const Metric metrics[] = {Metric::angular, Metric::paper_literal, Metric::euclidean};
  std::size_t checks = 0, mismatches = 0;
  for (int cloud = 0; cloud < 200; ++cloud) {
    const std::size_t n = 3 + gen() % 8;
    const Metric metric = metrics[cloud % 3];
    const auto dm = pairwise_distances(oracle::random_cloud(gen, n, 2 + gen() % 4), metric);
    const auto d = compute_persistence(build_filtration(dm, 1));
    // Ten thresholds at pairwise distances (where the complex changes) and ten uniform ones.
    std::vector<double> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) edges.push_back(dm(i, j));
    }
    std::vector<double> ts;
    for (int s = 0; s < 10; ++s) ts.push_back(edges[gen() % edges.size()]);
    std::uniform_real_distribution<double> u(0.0, dm.max_entry());
    for (int s = 0; s < 10; ++s) ts.push_back(u(gen));
    for (double t : ts) {
      for (int k = 0; k <= 1; ++k) {
        ++checks;
        if (d.betti(k, t) != betti_bruteforce(dm, t, k)) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("200 clouds, %zu Betti checks, %zu mismatches, %.2f s", checks, mismatches, secs)};
}

Outcome hexagon() {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 6; ++i) {
    const double a = std::numbers::pi * i / 3.0;
    rows.push_back({std::cos(a), std::sin(a)});
  }
  const auto dm = pairwise_distances(PointCloud::from_rows("hexagon", rows), Metric::angular);
  const auto f = build_filtration(dm, 1);
  const auto h1 = compute_persistence(f).in_dimension(1);
  // Brute-force reduction of the same filtration, read independently.
  std::vector<DiagramPoint> oracle_h1;
  for (const auto& p : standard_pairs(f)) {
    if (p.dim == 1 && p.death_value > p.birth_value) oracle_h1.push_back({1, p.birth_value, p.death_value});
  }
  bool ok = h1.size() == 1 && oracle_h1.size() == 1;
  double err = 0.0;
  if (ok) {
    err = std::max({std::abs(h1[0].birth - 1.0 / 3.0), std::abs(h1[0].death - 2.0 / 3.0),
                    std::abs(oracle_h1[0].birth - 1.0 / 3.0), std::abs(oracle_h1[0].death - 2.0 / 3.0)});
    ok = err <= 1e-9;
  }
  return {ok, fmt("%zu H1 point(s), max deviation from (1/3, 2/3) = %.3g", h1.size(), err)};
}

Outcome h0_mst() {
  std::mt19937_64 gen(103);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int cloud = 0; cloud < 100; ++cloud) {
    const std::size_t n = 2 + gen() % 49;
    const auto dm = pairwise_distances(oracle::random_cloud(gen, n, 2 + gen() % 15),
                                       cloud % 2 ? Metric::euclidean : Metric::angular);
    const auto deaths = oracle::h0_deaths(compute_persistence(build_filtration(dm, 1)));
    const auto mst = oracle::mst_weights(dm);
    if (deaths.size() != mst.size()) {
      ++bad;
      continue;
    }
    for (std::size_t i = 0; i < mst.size(); ++i) worst = std::max(worst, std::abs(deaths[i] - mst[i]));
  }
  return {bad == 0 && worst <= 1e-12, fmt("100 clouds, %zu size mismatches, max |death - mst| = %.3g", bad, worst)};
}

Outcome wasserstein_checks() {
  std::mt19937_64 gen(107);
  double worst = 0.0;
  std::size_t axiom_failures = 0;
  for (int pair = 0; pair < 500; ++pair) {
    const std::size_t na = gen() % 5;
    const std::size_t nb = gen() % (9 - std::max<std::size_t>(na, 1));
    const auto a = oracle::random_diagram(gen, na);
    const auto b = oracle::random_diagram(gen, std::min<std::size_t>(nb, 8 - na));
    const auto c = oracle::random_diagram(gen, gen() % 4);
    const double p = pair % 3 == 0 ? 2.0 : 1.0;
    const double w = wasserstein(a, b, p);
    worst = std::max(worst, std::abs(w - wasserstein_bruteforce(a, b, p)));
    if (w != wasserstein(b, a, p)) ++axiom_failures;
    if (wasserstein(a, a, p) != 0.0) ++axiom_failures;
    if (a.points != b.points && !(w > 0.0)) ++axiom_failures;
    if (wasserstein(a, c, p) > w + wasserstein(b, c, p) + 1e-9) ++axiom_failures;
  }
  return {worst <= 1e-9 && axiom_failures == 0,
          fmt("500 pairs, max |solver - exhaustive| = %.3g, %zu axiom violations", worst, axiom_failures)};
}

Outcome piv_quadrature() {
  std::mt19937_64 gen(109);
  PivConfig cfg;  // 30 x 30, variance 0.01
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = oracle::random_diagram(gen, 1 + gen() % 5, 1, 0.8);
    const auto img = rasterize(d, 1, cfg);
    const auto quad = oracle::piv_midpoint(d, 1, cfg, *img.config.weight_ceiling, 20);
    for (std::size_t i = 0; i < quad.size(); ++i) worst = std::max(worst, std::abs(img.values[i] - quad[i]));
  }
  return {worst <= 1e-6, fmt("50 diagrams, max per-pixel |exact - midpoint(20x20)| = %.3g", worst)};
}

Outcome piv_stability() {
  std::mt19937_64 gen(113);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> eps_dist(0.001, 0.05);
  PivConfig cfg;
  cfg.weight_ceiling = 1.0;
  const double lip = stability_constant(cfg, *cfg.weight_ceiling);
  double worst = 0.0;
  int trials = 0;
  while (trials < 200) {
    const auto d = oracle::random_diagram(gen, 1 + gen() % 8, 1, 0.7);
    auto moved = d;
    const double step = eps_dist(gen) / static_cast<double>(d.points.size() * 2);
    for (auto& p : moved.points) {
      p.birth += step * u(gen);
      p.death = std::max(p.birth, p.death + step * u(gen));
    }
    if (gen() % 4 == 0) {
      const double b = 0.5 + 0.4 * u(gen);
      moved.points.push_back({1, b, b + step});
    }
    moved.sort();
    const double w1 = wasserstein(d, moved);
    if (w1 == 0.0 || w1 > 0.05) continue;
    ++trials;
    const auto a = rasterize(d, 1, cfg).values;
    const auto b = rasterize(moved, 1, cfg).values;
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    worst = std::max(worst, diff / w1);
  }
  return {worst <= lip, fmt("200 trials, max ||dPIV||inf / W1 = %.4g, bound L = %.4g", worst, lip)};
}

Outcome gradients() {
  std::mt19937_64 gen(127);
  std::normal_distribution<double> normal;
  const Eigen::Index n = 30, f = 8;
  const int hidden = 10;
  Eigen::MatrixXd x(n, f);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < f; ++j) x(i, j) = normal(gen);
    y(i) = static_cast<double>(gen() % 2);
  }
  auto rel = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-12});
  };
  double worst[3] = {0, 0, 0};
  for (int point = 0; point < 10; ++point) {
    Eigen::VectorXd w(f + 1), m(objective::mlp_parameter_count(f, hidden)), g;
    for (auto& e : w) e = normal(gen);
    for (auto& e : m) e = normal(gen);
    objective::logistic(w, x, y, 1e-2, &g);
    worst[0] = std::max(worst[0], rel(g, oracle::finite_difference_gradient(
                                             [&](const Eigen::VectorXd& p) { return objective::logistic(p, x, y, 1e-2, nullptr); }, w)));
    objective::hinge(w, x, y, 1e-2, &g);
    worst[1] = std::max(worst[1], rel(g, oracle::finite_difference_gradient(
                                             [&](const Eigen::VectorXd& p) { return objective::hinge(p, x, y, 1e-2, nullptr); }, w)));
    objective::mlp(m, x, y, hidden, 1e-2, &g);
    worst[2] = std::max(worst[2], rel(g, oracle::finite_difference_gradient(
                                             [&](const Eigen::VectorXd& p) { return objective::mlp(p, x, y, hidden, 1e-2, nullptr); }, m)));
  }
  const double top = std::max({worst[0], worst[1], worst[2]});
  return {top < 1e-5, fmt("max relative error: logistic %.2g, hinge %.2g, mlp %.2g", worst[0], worst[1], worst[2])};
}

struct SyntheticRun {
  double doc_only = 0.0;
  double doc_plus_piv = 0.0;
  double seconds = 0.0;
  std::string report;
  std::string error;
};

SyntheticRun synthetic_run(const fs::path& dir, unsigned threads) {
  SyntheticRun out;
  try {
    const auto t0 = Clock::now();
    SyntheticOptions o;
    o.n_talks = 200;
    o.seed = 2024;
    o.points_per_talk = 60;
    o.noise = 0.05;
    generate_synthetic_corpus(o, dir / "corpus");
    Corpus corpus = ingest(dir / "corpus" / "manifest.json");
    corpus.manifest.models = {ModelKind::logreg};
    const auto r = run_pipeline(corpus, dir / "out", {.threads = threads, .plots = false});
    out.seconds = seconds_since(t0);
    for (const auto& cell : r.cells) {
      for (const auto& label : cell.labels) {
        if (label.label != o.signal_category) continue;
        (cell.feature_spec == FeatureSpec::doc_only ? out.doc_only : out.doc_plus_piv) = label.mean;
      }
    }
    out.report = read_text_file(dir / "out" / "report.json");
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "talktopo_acceptance";
  fs::remove_all(work);

  int failures = 0;
  auto report = [&](const char* name, const Outcome& o) {
    std::printf("%s  %-28s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };
  auto guarded = [](const std::function<Outcome()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  report("betti-oracle-equivalence", guarded(betti_oracle));
  report("hexagon-h1", guarded(hexagon));
  report("h0-mst-equivalence", guarded(h0_mst));
  report("wasserstein-correctness", guarded(wasserstein_checks));
  report("piv-quadrature", guarded(piv_quadrature));
  report("piv-stability", guarded(piv_stability));
  report("gradient-checks", guarded(gradients));

  const SyntheticRun first = synthetic_run(work / "run1", 1);
  {
    Outcome o;
    if (!first.error.empty()) {
      o = {false, "exception: " + first.error};
    } else {
      o.pass = first.doc_plus_piv >= 0.95 && std::abs(first.doc_only - 0.5) <= 0.1 && first.seconds < 600.0;
      o.detail = fmt("topology label CV accuracy: doc_plus_piv %.4f, doc_only %.4f; %.1f s (1 worker)",
                     first.doc_plus_piv, first.doc_only, first.seconds);
    }
    report("synthetic-end-to-end", o);
  }
  {
    const SyntheticRun second = synthetic_run(work / "run2", 2);
    Outcome o;
    if (!first.error.empty() || !second.error.empty()) {
      o = {false, "exception: " + first.error + second.error};
    } else {
      o.pass = !first.report.empty() && first.report == second.report;
      o.detail = fmt("report.json %zu bytes, second run (2 workers) %s", first.report.size(),
                     o.pass ? "byte-identical" : "differs");
    }
    report("determinism", o);
  }

  report("scale-500-points", guarded([] {
    std::mt19937_64 gen(131);
    const auto cloud = oracle::random_cloud(gen, 500, 16);
    const auto t0 = Clock::now();
    const auto dm = pairwise_distances(cloud, Metric::angular);
    const auto f = build_filtration(dm, 1);
    const std::size_t simplices = f.size();
    const auto d = compute_persistence(f);
    const auto img = rasterize(d, 1, PivConfig{});
    const double secs = seconds_since(t0);
    const double gib = static_cast<double>(peak_rss_kib()) / (1024.0 * 1024.0);
    return Outcome{secs < 120.0 && gib < 4.0 && img.values.size() == 900,
                   fmt("%zu simplices, %zu H1 points, %.1f s, peak RSS %.2f GiB", simplices,
                       d.in_dimension(1).size(), secs, gib)};
  }));

  fs::remove_all(work);
  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
