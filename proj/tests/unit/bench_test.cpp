#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cframe/bench.hpp"

using namespace cframe;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_values = {2, 4};
  cfg.environments = 8;
  cfg.threads = 3;
  cfg.output_dir = (std::filesystem::temp_directory_path() / "cframe_bench_test").string();
  return cfg;
}

// Two-level mean over the common set, recomputed from raw rows.
std::map<int, std::map<Algo, AlgoStats>> recompute(const std::vector<NetRecord>& rows,
                                                   std::map<int, int>& common) {
  std::map<int, std::map<int, std::map<Algo, std::vector<const NetRecord*>>>> by;
  for (const NetRecord& r : rows) by[r.n][r.h][r.algo].push_back(&r);
  std::map<int, std::map<Algo, AlgoStats>> out;
  for (const auto& [n, envs] : by) {
    std::map<Algo, std::vector<std::array<double, 4>>> samples;
    int nc = 0;
    for (const auto& [h, algos] : envs) {
      bool all = true;
      for (const auto& [a, rs] : algos) {
        if (rs.front()->completed) ++out[n][a].completed;
        all = all && rs.front()->completed;
      }
      if (!all) continue;
      ++nc;
      for (const auto& [a, rs] : algos) {
        std::array<double, 4> m{rs.front()->time_env_ms, 0, 0, 0};
        for (const NetRecord* r : rs) {
          m[1] += r->l / rs.size();
          m[2] += r->d / rs.size();
          m[3] += r->r / rs.size();
        }
        samples[a].push_back(m);
      }
    }
    common[n] = nc;
    for (auto& [a, xs] : samples) {
      Stat* st[4] = {&out[n][a].t, &out[n][a].l, &out[n][a].d, &out[n][a].r};
      for (int k = 0; k < 4; ++k) {
        double mean = 0;
        for (const auto& x : xs) mean += x[k] / xs.size();
        double var = 0;
        for (const auto& x : xs) var += (x[k] - mean) * (x[k] - mean);
        st[k]->mean = mean;
        st[k]->sigma = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1)) : 0.0;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("statistics recompute from the CSV") {
  const ExperimentConfig cfg = small_config();
  const MetricsReport rep = run_experiment(cfg);
  CHECK(rep.rows.size() == 3u * 8u * (2u + 4u));
  const std::vector<NetRecord> rows = rows_from_csv(rows_to_csv(rep.rows));
  REQUIRE(rows.size() == rep.rows.size());
  std::map<int, int> common;
  const auto want = recompute(rows, common);
  for (const NReport& r : rep.per_n) {
    CHECK(r.environments == 8);
    CHECK(r.common == common.at(r.n));
    for (const auto& [a, s] : r.algos) {
      const AlgoStats& w = want.at(r.n).at(a);
      CHECK(s.completed == w.completed);
      if (r.common == 0) continue;
      for (auto [x, y] : {std::pair{s.t, w.t}, {s.l, w.l}, {s.d, w.d}, {s.r, w.r}}) {
        CHECK(std::abs(x.mean - y.mean) <= 1e-9);
        CHECK(std::abs(x.sigma - y.sigma) <= 1e-9);
      }
    }
  }
  // aggregate() on the parsed rows gives the same report.
  const auto again = aggregate(cfg, rows);
  REQUIRE(again.size() == rep.per_n.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    for (const auto& [a, s] : again[i].algos) {
      CHECK(std::abs(s.r.mean - rep.per_n[i].algos.at(a).r.mean) <= 1e-9);
    }
  }
}

TEST_CASE("csv round trip keeps every field") {
  const ExperimentConfig cfg = small_config();
  const MetricsReport rep = run_experiment(cfg);
  const std::string text = rows_to_csv(rep.rows);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  const auto rows = rows_from_csv(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const NetRecord& a = rows[i];
    const NetRecord& b = rep.rows[i];
    CHECK(a.n == b.n);
    CHECK(a.h == b.h);
    CHECK(a.algo == b.algo);
    CHECK(a.net == b.net);
    CHECK(a.completed == b.completed);
    CHECK(a.time_env_ms == b.time_env_ms);
    CHECK(a.d == b.d);
    CHECK((a.l == b.l || (std::isnan(a.l) && std::isnan(b.l))));
    CHECK((a.r == b.r || (std::isnan(a.r) && std::isnan(b.r))));
  }
  CHECK_THROWS(rows_from_csv("n,h\n1,2\n"));
  CHECK_THROWS(rows_from_csv(std::string(kCsvHeader) + "\n1,2,cf\n"));
}

TEST_CASE("reports are reproducible apart from timing") {
  ExperimentConfig a = small_config();
  ExperimentConfig b = small_config();
  b.threads = 1;
  const MetricsReport ra = run_experiment(a);
  const MetricsReport rb = run_experiment(b);
  REQUIRE(ra.rows.size() == rb.rows.size());
  for (std::size_t i = 0; i < ra.rows.size(); ++i) {
    const NetRecord& x = ra.rows[i];
    const NetRecord& y = rb.rows[i];
    CHECK((x.n == y.n && x.h == y.h && x.algo == y.algo && x.net == y.net));
    CHECK(x.completed == y.completed);
    CHECK((x.l == y.l || (std::isnan(x.l) && std::isnan(y.l))));
  }
  CHECK(ra.renders == rb.renders);
}

TEST_CASE("environments come from per-stream seeds") {
  const ExperimentConfig cfg = small_config();
  const Environment e1 = experiment_environment(cfg, 4, 3);
  CHECK(e1 == experiment_environment(cfg, 4, 3));
  CHECK_FALSE(e1 == experiment_environment(cfg, 4, 4));
  ExperimentConfig other = cfg;
  other.master_seed = 2;
  CHECK_FALSE(e1 == experiment_environment(other, 4, 3));
}

TEST_CASE("report files") {
  const ExperimentConfig cfg = small_config();
  std::filesystem::remove_all(cfg.output_dir);
  const MetricsReport rep = run_experiment(cfg);
  write_report(cfg, rep);
  const std::filesystem::path dir(cfg.output_dir);
  for (const char* f : {"metrics.csv", "report.json", "completion.csv", "times.csv", "lengths.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  std::ifstream in(dir / "metrics.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(rows_from_csv(ss.str()).size() == rep.rows.size());
  CHECK_FALSE(std::filesystem::is_empty(dir / "renders"));
  std::filesystem::remove_all(cfg.output_dir);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_values = {3};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.environments = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(parse_algo("as2") == Algo::kAs2);
  CHECK(algo_name(Algo::kAs1) == "as1");
  CHECK_THROWS_AS(parse_algo("dijkstra"), std::invalid_argument);
}

TEST_CASE("row lengths respect the distance bounds") {
  ExperimentConfig cfg = small_config();
  cfg.n_values = {2, 6, 10};
  cfg.environments = 20;
  const MetricsReport rep = run_experiment(cfg);
  for (const NetRecord& r : rep.rows) {
    if (std::isnan(r.l)) continue;
    const Environment env = experiment_environment(cfg, r.n, r.h);
    const Net& net = env.nets[r.net - 1];
    const double euclid =
        distance(env.entity(env.start_index(net)).center, env.entity(env.end_index(net)).center);
    CHECK(r.l >= euclid - 1e-9);
    if (r.algo == Algo::kAs1) CHECK(r.l >= r.d - 1e-9);
    CHECK(r.r == doctest::Approx(r.l / r.d).epsilon(1e-15));
  }
}
