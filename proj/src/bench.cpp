#include "cframe/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cframe/json_io.hpp"
#include "cframe/pipeline.hpp"
#include "cframe/rng.hpp"
#include "cframe/svg.hpp"

namespace cframe {

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::kCf:
      return "cf";
    case Algo::kAs1:
      return "as1";
    case Algo::kAs2:
      return "as2";
  }
  return "?";
}

Algo parse_algo(const std::string& name) {
  if (name == "cf") return Algo::kCf;
  if (name == "as1") return Algo::kAs1;
  if (name == "as2") return Algo::kAs2;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (environments < 1) throw std::invalid_argument("N must be at least 1");
  if (n_values.empty()) throw std::invalid_argument("no n values");
  for (int n : n_values) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("n values must be even and positive");
  }
  if (algorithms.empty()) throw std::invalid_argument("no algorithms");
  if (sketch.delta_h <= 0.0) throw std::invalid_argument("delta_h must be positive");
}

const NReport& MetricsReport::at(int n) const {
  for (const NReport& r : per_n) {
    if (r.n == n) return r;
  }
  throw std::out_of_range("no report for n = " + std::to_string(n));
}

Environment experiment_environment(const ExperimentConfig& cfg, int n, int h) {
  return generate_environment(n, stream_seed(cfg.master_seed, n, h));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double net_distance(const Environment& env, const Net& net) {
  return manhattan_distance(env.entity(env.start_index(net)).center,
                            env.entity(env.end_index(net)).center);
}

struct Job {
  int n;
  int h;
};

struct JobResult {
  std::vector<NetRecord> rows;
  std::vector<std::pair<std::string, std::string>> renders;
};

JobResult run_job(const ExperimentConfig& cfg, const Job& job) {
  JobResult out;
  const Environment env = experiment_environment(cfg, job.n, job.h);
  const bool render = job.h <= cfg.renders_per_n;
  const std::string stem = "n" + std::to_string(job.n) + "_h" + std::to_string(job.h) + "_";
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

  for (Algo algo : cfg.algorithms) {
    std::vector<double> lengths(env.nets.size(), kNan);
    bool completed = false;
    double ms = 0.0;
    if (algo == Algo::kCf) {
      const auto t0 = Clock::now();
      const CfRun run = route_env_cf(env, {}, cfg.sketch);
      ms = elapsed_ms(t0);
      completed = run.completed;
      if (completed) {
        for (const SketchPath& p : run.embedding.paths) lengths[p.net - 1] = path_length(p);
        if (render) {
          out.renders.emplace_back(stem + "cf.svg",
                                   render_svg(env, &run.forest, run.embedding.paths));
        }
      }
    } else {
      const GridVariant variant = algo == Algo::kAs1 ? GridVariant::kAs1 : GridVariant::kAs2;
      const auto t0 = Clock::now();
      const GridRouteResult res = route_env_astar(env, variant, cfg.grid);
      ms = elapsed_ms(t0);
      completed = res.completed;
      for (const GridPath& p : res.paths) {
        if (p.routed) lengths[p.net - 1] = p.length;
      }
      if (render) out.renders.emplace_back(stem + algo_name(algo) + ".svg", render_svg(env, nullptr, res));
    }
    for (const Net& net : env.nets) {
      NetRecord rec;
      rec.n = job.n;
      rec.h = job.h;
      rec.algo = algo;
      rec.net = net.index;
      rec.l = lengths[net.index - 1];
      rec.d = net_distance(env, net);
      rec.r = rec.l / rec.d;
      rec.time_env_ms = ms;
      rec.completed = completed;
      out.rows.push_back(rec);
    }
  }
  return out;
}

Stat stat_of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.sigma = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

std::vector<NReport> aggregate(const ExperimentConfig& cfg, const std::vector<NetRecord>& rows) {
  std::vector<NReport> out;
  for (int n : cfg.n_values) {
    NReport rep;
    rep.n = n;
    // (h, algo) -> rows of that environment run
    std::map<std::pair<int, Algo>, std::vector<const NetRecord*>> runs;
    std::set<int> envs;
    for (const NetRecord& r : rows) {
      if (r.n != n) continue;
      runs[{r.h, r.algo}].push_back(&r);
      envs.insert(r.h);
    }
    rep.environments = static_cast<int>(envs.size());
    std::vector<int> common;
    for (int h : envs) {
      bool all = true;
      for (Algo a : cfg.algorithms) {
        const auto it = runs.find({h, a});
        const bool done = it != runs.end() && !it->second.empty() && it->second.front()->completed;
        if (done) ++rep.algos[a].completed;
        all = all && done;
      }
      if (all) common.push_back(h);
    }
    rep.common = static_cast<int>(common.size());
    for (Algo a : cfg.algorithms) {
      std::vector<double> t, l, d, r;
      for (int h : common) {
        const auto& recs = runs.at({h, a});
        double sl = 0.0, sd = 0.0, sr = 0.0;
        for (const NetRecord* x : recs) {
          sl += x->l;
          sd += x->d;
          sr += x->r;
        }
        const double m = static_cast<double>(recs.size());
        t.push_back(recs.front()->time_env_ms);
        l.push_back(sl / m);
        d.push_back(sd / m);
        r.push_back(sr / m);
      }
      AlgoStats& st = rep.algos[a];
      st.t = stat_of(t);
      st.l = stat_of(l);
      st.d = stat_of(d);
      st.r = stat_of(r);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

MetricsReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<Job> jobs;
  for (int n : cfg.n_values) {
    for (int h = 1; h <= cfg.environments; ++h) jobs.push_back({n, h});
  }
  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_job(cfg, jobs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  MetricsReport report;
  for (JobResult& r : results) {
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    for (auto& [name, svg] : r.renders) report.renders.emplace(name, std::move(svg));
  }
  report.per_n = aggregate(cfg, report.rows);
  return report;
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string rows_to_csv(const std::vector<NetRecord>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const NetRecord& r : rows) {
    os << r.n << ',' << r.h << ',' << algo_name(r.algo) << ',' << r.net << ','
       << format_double(r.l) << ',' << format_double(r.d) << ',' << format_double(r.r) << ','
       << format_double(r.time_env_ms) << ',' << (r.completed ? 1 : 0) << '\n';
  }
  return os.str();
}

std::vector<NetRecord> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("missing CSV header");
  std::vector<NetRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw std::runtime_error("CSV row with " + std::to_string(f.size()) + " fields");
    NetRecord r;
    try {
      r.n = std::stoi(f[0]);
      r.h = std::stoi(f[1]);
      r.algo = parse_algo(f[2]);
      r.net = std::stoi(f[3]);
      r.l = parse_double(f[4]);
      r.d = parse_double(f[5]);
      r.r = parse_double(f[6]);
      r.time_env_ms = parse_double(f[7]);
    } catch (const std::logic_error& e) {
      throw std::runtime_error("bad CSV row '" + line + "': " + e.what());
    }
    if (f[8] != "0" && f[8] != "1") throw std::runtime_error("bad completed flag in '" + line + "'");
    r.completed = f[8] == "1";
    rows.push_back(r);
  }
  return rows;
}

void write_report(const ExperimentConfig& cfg, const MetricsReport& report) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir / "renders", ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  write_file(dir / "metrics.csv", rows_to_csv(report.rows));
  write_file(dir / "report.json", report_to_json(cfg, report).dump(2) + "\n");

  std::ostringstream completion, times, lengths;
  completion << "n,N";
  for (Algo a : cfg.algorithms) completion << ",N_" << algo_name(a);
  completion << ",N_C\n";
  times << "n,algo,t_mean_ms,t_sigma_ms\n";
  lengths << "n,algo,l_mean,l_sigma,d_mean,d_sigma,r_mean,r_sigma\n";
  for (const NReport& r : report.per_n) {
    completion << r.n << ',' << r.environments;
    for (Algo a : cfg.algorithms) completion << ',' << r.algos.at(a).completed;
    completion << ',' << r.common << '\n';
    for (Algo a : cfg.algorithms) {
      const AlgoStats& s = r.algos.at(a);
      times << r.n << ',' << algo_name(a) << ',' << format_double(s.t.mean) << ','
            << format_double(s.t.sigma) << '\n';
      lengths << r.n << ',' << algo_name(a) << ',' << format_double(s.l.mean) << ','
              << format_double(s.l.sigma) << ',' << format_double(s.d.mean) << ','
              << format_double(s.d.sigma) << ',' << format_double(s.r.mean) << ','
              << format_double(s.r.sigma) << '\n';
    }
  }
  write_file(dir / "completion.csv", completion.str());
  write_file(dir / "times.csv", times.str());
  write_file(dir / "lengths.csv", lengths.str());
  for (const auto& [name, svg] : report.renders) write_file(dir / "renders" / name, svg);
}

}  // namespace cframe
