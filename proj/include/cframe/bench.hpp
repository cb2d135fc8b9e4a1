#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cframe/astar.hpp"
#include "cframe/embedding.hpp"

namespace cframe {

enum class Algo { kCf, kAs1, kAs2 };

std::string algo_name(Algo a);  // "cf", "as1", "as2"
/// Throws std::invalid_argument for unknown names.
Algo parse_algo(const std::string& name);

struct ExperimentConfig {
  std::vector<int> n_values{2, 4, 6, 8, 10};
  int environments = 100;  // N per n
  std::uint64_t master_seed = 1;
  std::vector<Algo> algorithms{Algo::kCf, Algo::kAs1, Algo::kAs2};
  std::string output_dir = "report";
  SketchConfig sketch;
  GridParams grid;
  int threads = 0;        // 0: hardware concurrency
  int renders_per_n = 1;  // SVGs written for the first environments of each n

  /// Throws std::invalid_argument on N < 1 or odd / non-positive n.
  void validate() const;
};

/// One raw measurement: net `net` of environment h under algorithm `algo`.
/// l and r are NaN for nets the algorithm did not route; `completed` and
/// the time refer to the whole environment.
struct NetRecord {
  int n = 0;
  int h = 0;
  Algo algo = Algo::kCf;
  int net = 0;
  double l = 0.0;
  double d = 0.0;
  double r = 0.0;
  double time_env_ms = 0.0;
  bool completed = false;
};

struct Stat {
  double mean = 0.0;
  double sigma = 0.0;  // sample standard deviation of the per-environment means
};

struct AlgoStats {
  int completed = 0;
  Stat t, l, d, r;
};

struct NReport {
  int n = 0;
  int environments = 0;
  int common = 0;  // N_C: environments completed by every algorithm
  std::map<Algo, AlgoStats> algos;
};

struct MetricsReport {
  std::vector<NReport> per_n;
  std::vector<NetRecord> rows;
  std::map<std::string, std::string> renders;  // file name -> SVG

  const NReport& at(int n) const;
};

/// Environment h of size n: generated from stream_seed(master, n, h).
Environment experiment_environment(const ExperimentConfig& cfg, int n, int h);

/// Runs every configured algorithm on every environment across a worker pool.
MetricsReport run_experiment(const ExperimentConfig& cfg);

/// Statistics from raw rows: completion per algorithm, then two-level means
/// (per environment over nets, then over the common completed set).
std::vector<NReport> aggregate(const ExperimentConfig& cfg, const std::vector<NetRecord>& rows);

inline constexpr const char* kCsvHeader = "n,h,algo,net,l,d,r,time_env_ms,completed";
std::string rows_to_csv(const std::vector<NetRecord>& rows);
/// Throws std::runtime_error on malformed input.
std::vector<NetRecord> rows_from_csv(const std::string& text);

/// metrics.csv, report.json, completion.csv, times.csv, lengths.csv and the
/// renders directory under cfg.output_dir. Throws std::runtime_error on I/O errors.
void write_report(const ExperimentConfig& cfg, const MetricsReport& report);

}  // namespace cframe
