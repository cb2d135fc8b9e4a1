#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cframe/astar.hpp"
#include "cframe/bench.hpp"
#include "cframe/embedding.hpp"
#include "cframe/forest.hpp"
#include "cframe/frame.hpp"
#include "cframe/pipeline.hpp"
#include "cframe/rng.hpp"
#include "cframe/routed_frame.hpp"
#include "cframe/router.hpp"
#include "cframe/triangulation.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace cframe;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << why;
    }
  }
};

int failures = 0;

void report(int id, const std::string& name, Verdict& v, const std::string& info) {
  if (!v.pass) ++failures;
  std::printf("criterion %d %s: %s (%s%s%s)\n", id, name.c_str(), v.pass ? "PASS" : "FAIL",
              info.c_str(), v.pass ? "" : "; ", v.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double x, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << x;
  return s.str();
}

// Sum of per-environment times of one algorithm over all (n, h).
double total_time_ms(const MetricsReport& rep, Algo algo) {
  std::map<std::pair<int, int>, double> per_env;
  for (const NetRecord& r : rep.rows) {
    if (r.algo == algo) per_env[{r.n, r.h}] = r.time_env_ms;
  }
  double sum = 0;
  for (const auto& [k, t] : per_env) sum += t;
  return sum;
}

void criteria_1_to_4(const ExperimentConfig& cfg, const MetricsReport& rep) {
  {
    Verdict v;
    std::string counts;
    for (const NReport& r : rep.per_n) {
      const int done = r.algos.at(Algo::kCf).completed;
      counts += " n=" + std::to_string(r.n) + ":" + std::to_string(done);
      v.require(done == r.environments, "n=" + std::to_string(r.n) + " incomplete");
    }
    const double secs = total_time_ms(rep, Algo::kCf) / 1000.0;
    v.require(secs < 60.0, "CF total " + fmt(secs) + " s");
    report(1, "cf-completion", v, "completed" + counts + ", total " + fmt(secs) + " s");
  }
  {
    Verdict v;
    std::string info;
    for (Algo a : {Algo::kAs1, Algo::kAs2}) {
      info += algo_name(a) + ":";
      int prev = -1;
      for (const NReport& r : rep.per_n) {
        const int done = r.algos.at(a).completed;
        info += " " + std::to_string(done);
        if (r.n < 4) continue;
        if (prev >= 0) {
          v.require(done <= prev, algo_name(a) + " completion rises at n=" + std::to_string(r.n));
        }
        prev = done;
      }
      const NReport& last = rep.at(10);
      v.require(2 * last.algos.at(a).completed < last.environments,
                algo_name(a) + " completes >= 50% at n=10");
      info += ", ";
    }
    const double mins = (total_time_ms(rep, Algo::kAs1) + total_time_ms(rep, Algo::kAs2)) / 60000.0;
    v.require(mins < 30.0, "AS total " + fmt(mins) + " min");
    report(2, "as-completion", v, info + "total " + fmt(mins, 4) + " min");
  }
  {
    Verdict v;
    const NReport& r = rep.at(10);
    const double cf = r.algos.at(Algo::kCf).t.mean;
    const double as1 = r.algos.at(Algo::kAs1).t.mean;
    const double as2 = r.algos.at(Algo::kAs2).t.mean;
    v.require(r.common > 0, "empty common set");
    v.require(cf <= as2 / 10.0, "t_CF > t_AS2/10");
    v.require(as2 <= as1, "t_AS2 > t_AS1");
    report(3, "time-ratios", v,
           "n=10 N_C=" + std::to_string(r.common) + " t_CF=" + fmt(cf, 4) + " t_AS2=" + fmt(as2, 4) +
               " t_AS1=" + fmt(as1, 4) + " ms");
  }
  {
    Verdict v;
    std::string info;
    double prev = -1;
    for (const NReport& r : rep.per_n) {
      const double cf = r.algos.at(Algo::kCf).r.mean;
      const double as2 = r.algos.at(Algo::kAs2).r.mean;
      const double as1 = r.algos.at(Algo::kAs1).r.mean;
      const std::string n = "n=" + std::to_string(r.n);
      info += n + " " + fmt(cf) + "/" + fmt(as2) + "/" + fmt(as1) + " ";
      v.require(cf < as2, n + " r_CF >= r_AS2");
      v.require(as2 < as1, n + " r_AS2 >= r_AS1");
      if (prev >= 0) v.require(cf > prev, n + " r_CF not increasing");
      prev = cf;
    }
    v.require(rep.at(2).algos.at(Algo::kCf).r.mean < 1.2, "r_CF >= 1.2 at n=2");
    report(4, "length-ratios", v, "r cf/as2/as1: " + info.substr(0, info.size() - 1));
  }
  (void)cfg;
}

void criterion_5() {
  Verdict v;
  const Environment env = testing::fig14_environment();
  std::string info;
  const std::pair<TunnelSelection, const char*> strategies[] = {
      {TunnelSelection::kShortestPlanar, "planar"},
      {TunnelSelection::kBfsMinTunnels, "bfs"},
      {TunnelSelection::kPaperGreedy, "greedy"}};
  for (const auto& [sel, name] : strategies) {
    RoutingStrategy st;
    st.tunnel_selection = sel;
    const CfRun run = route_env_cf(env, st);
    const std::string tag = std::string(name) + ": ";
    if (!run.completed) {
      v.require(false, tag + run.error);
      continue;
    }
    const RoutedFrame& rf = *run.routed;
    v.require(rf.chords().size() == 6, tag + std::to_string(rf.chords().size()) + " chords");
    for (int i = 1; i <= 3; ++i) {
      v.require(rf.route_of(i)->chords.size() == 1, tag + "net " + std::to_string(i) + " not direct");
    }
    const auto cr = tunnel_crossings(rf, 4);
    v.require(cr.size() == 2 && cr[0].edge_id == 3 && cr[1].edge_id == 4,
              tag + "net 4 does not tunnel through edge 3 then edge 4");
    const TopologicalClass c = extract_topological_class(rf, run.forest, env, env.nets[3]);
    const std::vector<int> p{env.entity_index("s4"), env.entity_index("t3"), env.entity_index("t2"),
                             env.entity_index("t4")};
    v.require(c.pivots == p, tag + "P4 mismatch");
    v.require(c.orientations == std::vector<int>({0, 1, 1, 0}), tag + "W4 mismatch");
    v.require(c.heights == std::vector<int>({0, 1, 1, 0}), tag + "H4 mismatch");
    info += std::string(name) + " ";
  }
  report(5, "fig14-regression", v, "6 chords, P4=(s4,t3,t2,t4) W4=(0,+1,+1,0) H4=(0,1,1,0) under " +
                                       info.substr(0, info.size() - 1));
}

void criterion_6() {
  Verdict v;
  const testing::Fig18 f = testing::fig18_fixture();
  const SliceMap map(f.rf);
  std::string info;
  v.require(f.rf.end_count(f.a) == 2 && f.rf.end_count(f.b) == 2, "tunnel does not carry 2 chords");
  // sigma_1..3 at r1 in gap order, sigma_5, sigma_4, sigma_3 at r1'.
  const int s1 = map.face(f.a, 0), s2 = map.face(f.a, 1), s3 = map.face(f.a, 2);
  const int s5 = map.face(f.b, 2), s4 = map.face(f.b, 1), s3b = map.face(f.b, 0);
  v.require(map.slices().size() == 5, "expected 5 slices");
  v.require(s3 == s3b, "middle slice not shared");
  v.require(std::set<int>({s1, s2, s3, s4, s5}).size() == 5, "slices not distinct");
  const auto o = [&](int s, int vtx) { return slice_order(f.rf, map.slices()[s], vtx); };
  const int got[6] = {o(s1, f.a), o(s5, f.b), o(s2, f.a), o(s4, f.b), o(s3, f.a), o(s3, f.b)};
  const int want[6] = {1, 1, 2, 2, 3, 3};
  for (int i = 0; i < 6; ++i) v.require(got[i] == want[i], "order mismatch");
  for (int i = 0; i < 6; i += 2) {
    info += std::to_string(got[i]) + "/" + std::to_string(got[i + 1]) + (i < 4 ? " " : "");
  }
  report(6, "fig18-slice-order", v, "o(s1,r1)/o(s5,r1') o(s2,r1)/o(s4,r1') o(s3,r1)/o(s3,r1') = " + info);
}

struct Suite {
  std::string name;
  long cases = 0;
  long passed = 0;
  void check(bool ok) {
    ++cases;
    passed += ok;
  }
};

bool rotations_equal(const GluedForest& a, const GluedForest& b) {
  return a.edges == b.edges && a.rotation == b.rotation;
}

bool slice_order_bijection(const RoutedFrame& rf, const SliceMap& map) {
  const Frame& f = rf.frame();
  for (int e = 1; e <= static_cast<int>(f.tunnels.size()); ++e) {
    const int a = f.tunnel_vertex(e, Side::kA);
    const int b = f.tunnel_vertex(e, Side::kB);
    const int k = rf.end_count(a);
    if (rf.end_count(b) != k) return false;
    std::set<int> oa, ob;
    for (int g = 0; g <= k; ++g) {
      oa.insert(slice_order_at_gap(rf, {a, g}));
      ob.insert(slice_order_at_gap(rf, {b, g}));
      if (slice_order(rf, map.slices()[map.face(a, g)], a) != slice_order_at_gap(rf, {a, g})) {
        return false;
      }
    }
    if (static_cast<int>(oa.size()) != k + 1 || oa != ob) return false;
    if (*oa.begin() != 1 || *oa.rbegin() != k + 1) return false;
  }
  return true;
}

void criterion_7() {
  Verdict v;
  Suite noncross{"chord-noncrossing"}, roundtrip{"cut-glue"}, count{"slice-count"},
      bijection{"slice-order-bijection"}, tangency{"tangency"}, sampled{"sampled-noncrossing"},
      optimal{"as-optimality"};
  double worst_residual = 0;
  const int kEnvs = 1000;
  for (int i = 0; i < kEnvs; ++i) {
    const int n = 2 + 2 * (i % 5);
    const Environment env = generate_environment(n, stream_seed(977, n, i));
    const Forest forest = build_forest(env);
    const Triangulation tr = triangulate(env, forest);
    const Frame frame = cut(env, forest);
    roundtrip.check(rotations_equal(glue(frame, forest.entity_count), forest_rotation(forest)));
    const RouteGeometry geo{&forest, &tr};
    RoutedFrame rf(frame);
    bool nc = true, cnt = true;
    for (const Net& net : env.nets) {
      route_net(rf, env, net, {}, &geo);
      nc = nc && non_crossing(rf);
      cnt = cnt && slices(rf).size() == rf.chords().size() + 1;
    }
    noncross.check(nc);
    count.check(cnt);
    bijection.check(slice_order_bijection(rf, SliceMap(rf)));
    bool tangent = true, clean = false;
    try {
      const Embedding em = embed(rf, forest, env, tr);
      for (const SketchPath& p : em.paths) {
        const double res = tangency_residual(p);
        worst_residual = std::max(worst_residual, res);
        tangent = tangent && res < 1e-9;
      }
      // Sampling must resolve the thinnest arc spacing.
      double thinnest = 1.0;
      for (const SketchPath& p : em.paths) {
        for (const SketchArc& a : p.arcs) thinnest = std::min(thinnest, a.radius);
      }
      clean = sampled_crossings(em.paths, std::min(0.05, 0.01 * thinnest)).empty();
    } catch (const SketchError&) {
      tangent = false;
    }
    tangency.check(tangent);
    sampled.check(clean);
  }
  std::mt19937_64 rng(5);
  const Grid grid(RectBoundary{});
  std::uniform_int_distribution<int> c(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    const GridVariant var = i % 2 == 0 ? GridVariant::kAs1 : GridVariant::kAs2;
    const GridNode s{c(rng), c(rng)}, t{c(rng), c(rng)};
    const auto path = astar_search(grid, s, t, var);
    const double dx = std::abs(s.x - t.x), dy = std::abs(s.y - t.y);
    const double best = var == GridVariant::kAs1
                            ? dx + dy
                            : std::max(dx, dy) + (std::sqrt(2.0) - 1.0) * std::min(dx, dy);
    bool ok = !path.empty() && path.front() == s && path.back() == t &&
              std::abs(grid_path_length(path) - best) < 1e-9;
    for (std::size_t k = 1; ok && k < path.size(); ++k) {
      const int ax = std::abs(path[k].x - path[k - 1].x), ay = std::abs(path[k].y - path[k - 1].y);
      ok = ax <= 1 && ay <= 1 && ax + ay >= 1 && (var == GridVariant::kAs2 || ax + ay == 1);
    }
    optimal.check(ok);
  }
  std::string info;
  for (const Suite* s : {&noncross, &roundtrip, &count, &bijection, &tangency, &sampled, &optimal}) {
    v.require(s->cases >= 1000, s->name + " has fewer than 1000 cases");
    v.require(s->passed == s->cases, s->name + " " + std::to_string(s->cases - s->passed) + " failures");
    info += s->name + " " + std::to_string(s->passed) + "/" + std::to_string(s->cases) + ", ";
  }
  report(7, "property-suites", v, info + "max residual " + [&] {
    std::ostringstream s;
    s << worst_residual;
    return s.str();
  }());
}

void criterion_8() {
  Verdict v;
  std::mt19937_64 rng(11);
  int frames = 0, tries = 0, passed = 0, three = 0, tunnelled = 0, blocked = 0;
  long long systems = 0;
  while (frames < 200) {
    ++tries;
    const int n = 2 + tries % 2;
    const Environment env = testing::random_small_environment(n, rng, true);
    const CfRun run = route_env_cf(env);
    if (!run.completed) {
      // Boundary ends can leave a net without any route once the earlier
      // nets are placed; the enumerator must agree.
      const Forest forest = build_forest(env);
      const Triangulation tr = triangulate(env, forest);
      const RouteGeometry geo{&forest, &tr};
      RoutedFrame rf(cut(env, forest));
      if (rf.frame().size() > 12) continue;
      std::size_t j = 0;
      try {
        for (; j < env.nets.size(); ++j) route_net(rf, env, env.nets[j], {}, &geo);
      } catch (const RoutingError&) {
      }
      if (j == env.nets.size()) {
        v.require(false, "router failed outside route_net: " + run.error);
        continue;
      }
      testing::ChordEnumerator en(rf, env, {env.nets[j]});
      en.run([](const testing::ChordSystem&) { return false; });
      ++blocked;
      v.require(en.systems() == 0, "router missed a route for net " + std::to_string(j + 1));
      continue;
    }
    if (run.routed->frame().size() > 12) continue;
    ++frames;
    three += n == 3;
    tunnelled += run.routed->chords().size() > env.nets.size();
    const testing::ChordSystem want = testing::system_of(*run.routed);
    bool member = false;
    testing::ChordEnumerator en(run.routed->frame(), env, env.nets);
    en.run([&](const testing::ChordSystem& s) {
      member = member || s == want;
      return true;
    });
    systems += en.systems();
    const std::string glued = testing::check_glued_connectivity(*run.routed, env);
    if (member && glued.empty()) {
      ++passed;
    } else {
      v.require(false, "frame " + std::to_string(frames) + (member ? "" : " not enumerated") +
                           (glued.empty() ? "" : " " + glued));
    }
  }
  report(8, "brute-force-oracle", v,
         std::to_string(passed) + "/" + std::to_string(frames) + " frames (" + std::to_string(three) +
             " with 3 nets, " + std::to_string(tunnelled) + " tunnelling), " +
             std::to_string(systems) + " systems enumerated, " + std::to_string(blocked) +
             " blocked nets confirmed unroutable");
}

}  // namespace

int main() {
  ExperimentConfig cfg;
  cfg.output_dir.clear();
  const MetricsReport rep = run_experiment(cfg);
  criteria_1_to_4(cfg, rep);
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
