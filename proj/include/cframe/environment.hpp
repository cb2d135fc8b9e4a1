#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cframe/geometry.hpp"

namespace cframe {

enum class EntityKind { kStart, kEnd };

struct EntityDisk {
  std::string id;
  EntityKind kind = EntityKind::kStart;
  PlanePoint center;
  double radius = 0.5;

  friend bool operator==(const EntityDisk&, const EntityDisk&) = default;
};

struct Net {
  int index = 0;  // 1-based
  std::string start_id;
  std::string end_id;

  friend bool operator==(const Net&, const Net&) = default;
};

class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A routing layer: rectangle boundary, start disks S, end disks T and the
/// nets pairing them. Entities are addressed internally by a dense index:
/// starts first, then ends.
struct Environment {
  RectBoundary boundary;
  std::vector<EntityDisk> starts;
  std::vector<EntityDisk> ends;
  std::vector<Net> nets;
  std::uint64_t seed = 0;

  int net_count() const { return static_cast<int>(nets.size()); }
  int entity_count() const { return static_cast<int>(starts.size() + ends.size()); }
  const EntityDisk& entity(int index) const;
  /// Throws EnvironmentError for unknown ids.
  int entity_index(const std::string& id) const;
  int start_index(const Net& net) const { return entity_index(net.start_id); }
  int end_index(const Net& net) const { return entity_index(net.end_id); }

  friend bool operator==(const Environment&, const Environment&) = default;
};

struct GeneratorParams {
  double min_pair_separation = 11.0;
  double min_boundary_distance = 3.0;
  double entity_radius = 0.5;
  int max_attempts_per_point = 10000;
  RectBoundary boundary{};
};

/// Start positions used by the benchmark layout: (50, +-4), (50, +-12), ...
std::vector<PlanePoint> benchmark_start_positions(int n);

/// Random benchmark environment with n nets. Starts sit on the right boundary
/// edge; end centres are rejection-sampled with a seeded generator. Throws
/// EnvironmentError when the sampler runs out of attempts.
Environment generate_environment(int n, std::uint64_t seed, const GeneratorParams& params = {});

/// Checks the structural invariants (ids, net references, geometry inside
/// the boundary). Separation rules are generator-specific and not checked.
void validate_environment(const Environment& env);

}  // namespace cframe
