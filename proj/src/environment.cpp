#include "cframe/environment.hpp"

#include <set>

#include "cframe/rng.hpp"

namespace cframe {

const EntityDisk& Environment::entity(int index) const {
  const int ns = static_cast<int>(starts.size());
  if (index < 0 || index >= entity_count()) {
    throw EnvironmentError("entity index out of range: " + std::to_string(index));
  }
  return index < ns ? starts[index] : ends[index - ns];
}

int Environment::entity_index(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(starts.size()); ++i) {
    if (starts[i].id == id) return i;
  }
  for (int i = 0; i < static_cast<int>(ends.size()); ++i) {
    if (ends[i].id == id) return static_cast<int>(starts.size()) + i;
  }
  throw EnvironmentError("unknown entity id: " + id);
}

std::vector<PlanePoint> benchmark_start_positions(int n) {
  std::vector<PlanePoint> out;
  out.reserve(n);
  for (int k = 0; static_cast<int>(out.size()) < n; ++k) {
    const double y = 4.0 + 8.0 * k;
    out.push_back({50.0, y});
    if (static_cast<int>(out.size()) < n) out.push_back({50.0, -y});
  }
  return out;
}

Environment generate_environment(int n, std::uint64_t seed, const GeneratorParams& params) {
  if (n < 1) throw EnvironmentError("net count must be positive");
  if (!params.boundary.valid()) throw EnvironmentError("invalid boundary");

  Environment env;
  env.boundary = params.boundary;
  env.seed = seed;

  // The start layout is defined relative to the paper-size square; shift it
  // with the right edge so custom boundaries stay consistent.
  const double dx = params.boundary.x_max - 50.0;
  for (const PlanePoint& p : benchmark_start_positions(n)) {
    const int i = static_cast<int>(env.starts.size()) + 1;
    env.starts.push_back({"s" + std::to_string(i), EntityKind::kStart, {p.x + dx, p.y},
                          params.entity_radius});
  }

  Xoshiro256 rng(seed);
  const RectBoundary& b = params.boundary;
  const double lo_x = b.x_min + params.min_boundary_distance;
  const double hi_x = b.x_max - params.min_boundary_distance;
  const double lo_y = b.y_min + params.min_boundary_distance;
  const double hi_y = b.y_max - params.min_boundary_distance;
  if (lo_x > hi_x || lo_y > hi_y) throw EnvironmentError("boundary too small for clearance");

  for (int i = 1; i <= n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_attempts_per_point && !placed; ++attempt) {
      const PlanePoint c{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
      bool ok = true;
      for (const auto& s : env.starts) {
        if (distance(c, s.center) < params.min_pair_separation) { ok = false; break; }
      }
      for (const auto& t : env.ends) {
        if (!ok) break;
        if (distance(c, t.center) < params.min_pair_separation) ok = false;
      }
      if (ok) {
        env.ends.push_back({"t" + std::to_string(i), EntityKind::kEnd, c, params.entity_radius});
        placed = true;
      }
    }
    if (!placed) {
      throw EnvironmentError("rejection sampling exhausted for end point t" + std::to_string(i));
    }
  }

  for (int i = 1; i <= n; ++i) {
    env.nets.push_back({i, "s" + std::to_string(i), "t" + std::to_string(i)});
  }
  return env;
}

void validate_environment(const Environment& env) {
  if (!env.boundary.valid()) throw EnvironmentError("invalid boundary");
  std::set<std::string> ids;
  auto check_disk = [&](const EntityDisk& d, EntityKind kind) {
    if (d.kind != kind) throw EnvironmentError("entity " + d.id + " has the wrong kind");
    if (!(d.radius > 0.0)) throw EnvironmentError("entity " + d.id + " has non-positive radius");
    if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y) ||
        !env.boundary.contains(d.center)) {
      throw EnvironmentError("entity " + d.id + " lies outside the boundary");
    }
    if (!ids.insert(d.id).second) throw EnvironmentError("duplicate entity id " + d.id);
  };
  for (const auto& s : env.starts) check_disk(s, EntityKind::kStart);
  for (const auto& t : env.ends) check_disk(t, EntityKind::kEnd);

  std::set<int> indices;
  std::set<std::string> used;
  for (const auto& net : env.nets) {
    if (net.index < 1 || !indices.insert(net.index).second) {
      throw EnvironmentError("net indices must be positive and unique");
    }
    const int s = env.entity_index(net.start_id);
    const int t = env.entity_index(net.end_id);
    if (env.entity(s).kind != EntityKind::kStart || env.entity(t).kind != EntityKind::kEnd) {
      throw EnvironmentError("net " + std::to_string(net.index) + " must join a start to an end");
    }
    if (!used.insert(net.start_id).second || !used.insert(net.end_id).second) {
      throw EnvironmentError("entity used by two nets");
    }
  }
}

}  // namespace cframe
