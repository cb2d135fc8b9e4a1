#include "cframe/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cframe {

namespace {

Json point_json(const PlanePoint& p) { return Json::array({p.x, p.y}); }

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw JsonFormatError(std::string("missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw JsonFormatError(std::string("bad value for '") + key + "': " + e.what());
  }
}

PlanePoint point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw JsonFormatError("point must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json disk_json(const EntityDisk& d) {
  return {{"id", d.id}, {"center", point_json(d.center)}, {"radius", d.radius}};
}

EntityDisk disk_from(const Json& j, EntityKind kind) {
  EntityDisk d;
  d.id = get<std::string>(j, "id");
  d.kind = kind;
  d.center = point_from(j.at("center"));
  if (j.contains("radius")) d.radius = get<double>(j, "radius");
  return d;
}

// Non-finite numbers are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json stat_json(const Stat& s) { return {{"mean", number(s.mean)}, {"sigma", number(s.sigma)}}; }

}  // namespace

Json env_to_json(const Environment& env) {
  Json j;
  j["boundary"] = {{"x_min", env.boundary.x_min},
                   {"x_max", env.boundary.x_max},
                   {"y_min", env.boundary.y_min},
                   {"y_max", env.boundary.y_max}};
  j["seed"] = env.seed;
  j["starts"] = Json::array();
  for (const EntityDisk& d : env.starts) j["starts"].push_back(disk_json(d));
  j["ends"] = Json::array();
  for (const EntityDisk& d : env.ends) j["ends"].push_back(disk_json(d));
  j["nets"] = Json::array();
  for (const Net& n : env.nets) {
    j["nets"].push_back({{"index", n.index}, {"start", n.start_id}, {"end", n.end_id}});
  }
  return j;
}

Environment env_from_json(const Json& j) {
  Environment env;
  const Json& b = j.at("boundary");
  env.boundary = {get<double>(b, "x_min"), get<double>(b, "x_max"), get<double>(b, "y_min"),
                  get<double>(b, "y_max")};
  if (j.contains("seed")) env.seed = get<std::uint64_t>(j, "seed");
  for (const Json& d : j.at("starts")) env.starts.push_back(disk_from(d, EntityKind::kStart));
  for (const Json& d : j.at("ends")) env.ends.push_back(disk_from(d, EntityKind::kEnd));
  for (const Json& n : j.at("nets")) {
    env.nets.push_back({get<int>(n, "index"), get<std::string>(n, "start"), get<std::string>(n, "end")});
  }
  validate_environment(env);
  return env;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json algos = Json::array();
  for (Algo a : cfg.algorithms) algos.push_back(algo_name(a));
  return {{"n_values", cfg.n_values},
          {"environments", cfg.environments},
          {"master_seed", cfg.master_seed},
          {"algorithms", algos},
          {"output_dir", cfg.output_dir},
          {"delta_h", cfg.sketch.delta_h},
          {"block_radius", cfg.grid.block_radius},
          {"threads", cfg.threads},
          {"renders_per_n", cfg.renders_per_n}};
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw JsonFormatError("config must be an object");
  ExperimentConfig cfg;
  if (j.contains("n_values")) cfg.n_values = get<std::vector<int>>(j, "n_values");
  if (j.contains("environments")) cfg.environments = get<int>(j, "environments");
  if (j.contains("master_seed")) cfg.master_seed = get<std::uint64_t>(j, "master_seed");
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& name : get<std::vector<std::string>>(j, "algorithms")) {
      try {
        cfg.algorithms.push_back(parse_algo(name));
      } catch (const std::invalid_argument& e) {
        throw JsonFormatError(e.what());
      }
    }
  }
  if (j.contains("output_dir")) cfg.output_dir = get<std::string>(j, "output_dir");
  if (j.contains("delta_h")) cfg.sketch.delta_h = get<double>(j, "delta_h");
  if (j.contains("block_radius")) cfg.grid.block_radius = get<double>(j, "block_radius");
  if (j.contains("threads")) cfg.threads = get<int>(j, "threads");
  if (j.contains("renders_per_n")) cfg.renders_per_n = get<int>(j, "renders_per_n");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what());
  }
  return cfg;
}

Json report_to_json(const ExperimentConfig& cfg, const MetricsReport& report) {
  Json j;
  j["config"] = config_to_json(cfg);
  j["per_n"] = Json::array();
  for (const NReport& r : report.per_n) {
    Json e = {{"n", r.n}, {"N", r.environments}, {"N_C", r.common}};
    for (const auto& [algo, s] : r.algos) {
      e[algo_name(algo)] = {{"completed", s.completed},
                            {"t_ms", stat_json(s.t)},
                            {"l", stat_json(s.l)},
                            {"d", stat_json(s.d)},
                            {"r", stat_json(s.r)}};
    }
    j["per_n"].push_back(e);
  }
  return j;
}

RouteResult cf_result(const CfRun& run, double time_ms) {
  RouteResult r;
  r.algo = Algo::kCf;
  r.completed = run.completed;
  r.time_ms = time_ms;
  r.error = run.error;
  if (run.completed) {
    r.classes = run.embedding.classes;
    r.sketches = run.embedding.paths;
  }
  return r;
}

RouteResult grid_result(Algo algo, const GridRouteResult& grid, double time_ms) {
  RouteResult r;
  r.algo = algo;
  r.completed = grid.completed;
  r.time_ms = time_ms;
  r.grid = grid;
  return r;
}

Json result_to_json(const Environment& env, const RouteResult& result) {
  Json j;
  j["algo"] = algo_name(result.algo);
  j["completed"] = result.completed;
  j["time_ms"] = result.time_ms;
  if (!result.error.empty()) j["error"] = result.error;
  j["paths"] = Json::array();
  if (result.algo == Algo::kCf) {
    for (std::size_t i = 0; i < result.sketches.size(); ++i) {
      const SketchPath& p = result.sketches[i];
      Json path = {{"net", p.net}, {"length", path_length(p)}};
      if (i < result.classes.size()) {
        const TopologicalClass& c = result.classes[i];
        Json pivots = Json::array();
        for (int v : c.pivots) pivots.push_back(env.entity(v).id);
        path["class"] = {{"P", pivots}, {"W", c.orientations}, {"H", c.heights}};
      }
      path["segments"] = Json::array();
      for (const SketchSegment& s : p.segments) {
        path["segments"].push_back({point_json(s.from), point_json(s.to)});
      }
      path["arcs"] = Json::array();
      for (const SketchArc& a : p.arcs) {
        path["arcs"].push_back({{"pivot", env.entity(a.pivot).id},
                                {"center", point_json(a.center)},
                                {"radius", a.radius},
                                {"start_angle", a.start_angle},
                                {"span", a.span},
                                {"orientation", a.orientation}});
      }
      j["paths"].push_back(path);
    }
  } else {
    for (const GridPath& p : result.grid.paths) {
      Json nodes = Json::array();
      for (const GridNode& n : p.nodes) nodes.push_back({n.x, n.y});
      j["paths"].push_back(
          {{"net", p.net}, {"routed", p.routed}, {"length", p.length}, {"nodes", nodes}});
    }
  }
  return j;
}

RouteResult result_from_json(const Environment& env, const Json& j) {
  RouteResult r;
  try {
    r.algo = parse_algo(get<std::string>(j, "algo"));
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what());
  }
  r.completed = get<bool>(j, "completed");
  if (j.contains("time_ms")) r.time_ms = get<double>(j, "time_ms");
  if (j.contains("error")) r.error = get<std::string>(j, "error");
  const Json& paths = j.at("paths");
  if (r.algo == Algo::kCf) {
    for (const Json& pj : paths) {
      SketchPath p;
      p.net = get<int>(pj, "net");
      for (const Json& s : pj.at("segments")) {
        if (!s.is_array() || s.size() != 2) throw JsonFormatError("segment must be [from, to]");
        p.segments.push_back({point_from(s[0]), point_from(s[1])});
      }
      for (const Json& a : pj.at("arcs")) {
        SketchArc arc;
        arc.pivot = env.entity_index(get<std::string>(a, "pivot"));
        arc.center = point_from(a.at("center"));
        arc.radius = get<double>(a, "radius");
        arc.start_angle = get<double>(a, "start_angle");
        arc.span = get<double>(a, "span");
        arc.orientation = get<int>(a, "orientation");
        p.arcs.push_back(arc);
      }
      if (p.segments.size() != p.arcs.size() + 1) {
        throw JsonFormatError("sketch path needs one more segment than arcs");
      }
      if (pj.contains("class")) {
        const Json& c = pj.at("class");
        TopologicalClass cls;
        cls.net = p.net;
        for (const auto& id : get<std::vector<std::string>>(c, "P")) {
          cls.pivots.push_back(env.entity_index(id));
        }
        cls.orientations = get<std::vector<int>>(c, "W");
        cls.heights = get<std::vector<int>>(c, "H");
        r.classes.push_back(cls);
      }
      r.sketches.push_back(std::move(p));
    }
  } else {
    r.grid.completed = r.completed;
    for (const Json& pj : paths) {
      GridPath p;
      p.net = get<int>(pj, "net");
      p.routed = get<bool>(pj, "routed");
      p.length = get<double>(pj, "length");
      for (const Json& n : pj.at("nodes")) {
        if (!n.is_array() || n.size() != 2) throw JsonFormatError("grid node must be [x, y]");
        p.nodes.push_back({n[0].get<int>(), n[1].get<int>()});
      }
      r.grid.paths.push_back(std::move(p));
    }
  }
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw JsonFormatError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw JsonFormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << j.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace cframe
