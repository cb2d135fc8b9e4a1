#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cframe/astar.hpp"
#include "cframe/bench.hpp"
#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/json_io.hpp"
#include "cframe/pipeline.hpp"
#include "cframe/svg.hpp"

using namespace cframe;

namespace {

std::string render(const Environment& env, const RouteResult& r) {
  const Forest forest = build_forest(env);
  if (r.algo == Algo::kCf) return render_svg(env, &forest, r.sketches);
  return render_svg(env, nullptr, r.grid);
}

RouteResult run_route(const Environment& env, Algo algo) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  if (algo == Algo::kCf) {
    const CfRun run = route_env_cf(env);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return cf_result(run, ms);
  }
  const GridRouteResult grid =
      route_env_astar(env, algo == Algo::kAs1 ? GridVariant::kAs1 : GridVariant::kAs2);
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return grid_result(algo, grid, ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular Frame multi-net router"};
  app.require_subcommand(1);

  int n = 0;
  std::uint64_t seed = 0;
  std::string env_path, out_path, algo_name_arg, svg_path, cfg_path, result_path;

  auto* gen = app.add_subcommand("gen", "Generate a random environment");
  gen->add_option("--n", n, "Number of nets (even)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", out_path, "Output environment JSON")->required();

  auto* route = app.add_subcommand("route", "Route one environment");
  route->add_option("--algo", algo_name_arg, "cf, as1 or as2")
      ->required()
      ->check(CLI::IsMember({"cf", "as1", "as2"}));
  route->add_option("--env", env_path, "Environment JSON")->required()->check(CLI::ExistingFile);
  route->add_option("--out", out_path, "Output result JSON")->required();
  route->add_option("--svg", svg_path, "Also write an SVG rendering");

  auto* bench = app.add_subcommand("bench", "Run the comparison experiment");
  bench->add_option("--config", cfg_path, "Experiment config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--out", out_path, "Report directory (overrides output_dir)");

  auto* rend = app.add_subcommand("render", "Render a routing result");
  rend->add_option("--env", env_path, "Environment JSON")->required()->check(CLI::ExistingFile);
  rend->add_option("--result", result_path, "Result JSON")->required()->check(CLI::ExistingFile);
  rend->add_option("--out", out_path, "Output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Environment env = generate_environment(n, seed);
      write_json_file(out_path, env_to_json(env));
    } else if (*route) {
      const Environment env = env_from_json(read_json_file(env_path));
      const RouteResult r = run_route(env, parse_algo(algo_name_arg));
      write_json_file(out_path, result_to_json(env, r));
      if (!svg_path.empty()) write_text_file(svg_path, render(env, r));
      std::cout << algo_name_arg << ": " << (r.completed ? "completed" : "incomplete") << " in "
                << r.time_ms << " ms\n";
      if (!r.error.empty()) std::cout << "error: " << r.error << '\n';
    } else if (*bench) {
      ExperimentConfig cfg = config_from_json(read_json_file(cfg_path));
      if (!out_path.empty()) cfg.output_dir = out_path;
      const MetricsReport report = run_experiment(cfg);
      write_report(cfg, report);
      for (const NReport& r : report.per_n) {
        std::cout << "n=" << r.n << " N=" << r.environments << " N_C=" << r.common;
        for (const auto& [algo, s] : r.algos) {
          std::cout << "  " << algo_name(algo) << ": done=" << s.completed << " t=" << s.t.mean
                    << "ms r=" << s.r.mean;
        }
        std::cout << '\n';
      }
      std::cout << "report written to " << cfg.output_dir << '\n';
    } else if (*rend) {
      const Environment env = env_from_json(read_json_file(env_path));
      const RouteResult r = result_from_json(env, read_json_file(result_path));
      write_text_file(out_path, render(env, r));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
