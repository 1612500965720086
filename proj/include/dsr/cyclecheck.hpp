#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsr/dsrgraph.hpp"

namespace dsr {

inline constexpr long long kDefaultCycleCap = 1'000'000;
inline constexpr long long kDefaultECycleCap = 10'000;

struct CapExceeded : std::runtime_error {
  long long partial;
  explicit CapExceeded(const std::string& what, long long partial_count)
      : std::runtime_error(what), partial(partial_count) {}
};

// A simple direction-respecting cycle: vertices[k] -> vertices[k+1] (cyclic)
// traversed via edges[k] (index into DsrGraph::edges). Length is even, >= 2,
// and vertices alternate between the S and R sides.
struct Cycle {
  std::vector<int> vertices;  // global vertex ids
  std::vector<int> edges;
  // Rotation-normalized (and, for all-undirected cycles, reflection-
  // normalized) identifier; equal keys mean equal cycles.
  std::vector<std::pair<int, int>> canonical_key;

  int length() const { return static_cast<int>(edges.size()); }
  bool operator==(const Cycle& o) const { return canonical_key == o.canonical_key; }
};

// Computes the canonical key (and rotates the stored traversal to start at
// the canonical point). Requires vertices/edges to describe a valid cycle.
void finalize_cycle(const DsrGraph& G, Cycle& c);

struct CycleClass {
  int sign = +1;              // product of edge signs
  bool e_cycle = false;       // parity P(C) = (-1)^{|C|/2} sign(C) positive
  bool stoich_inf = false;
  Rational stoich;            // meaningful only when !stoich_inf
  bool s_cycle = false;
  bool es_cycle = false;
};

// Every simple cycle exactly once, in deterministic canonical order
// (by length, then canonical key). Throws CapExceeded beyond `cap` cycles.
std::vector<Cycle> enumerate_cycles(const DsrGraph& G,
                                    long long cap = kDefaultCycleCap);

CycleClass classify(const DsrGraph& G, const Cycle& C);

enum class NoIntersectReason { Disjoint, IncompatibleOrientation, EvenComponent };

struct IntersectResult {
  bool yes = false;
  NoIntersectReason reason = NoIntersectReason::Disjoint;
  // For yes: connected components of the shared edge set (edge indices,
  // sorted); every component has an odd number of edges.
  std::vector<std::vector<int>> components;
};

// S-to-R intersection of two distinct cycles (per their canonical keys).
IntersectResult s_to_r_intersection(const DsrGraph& G, const Cycle& C,
                                    const Cycle& D);

enum class StarStatus {
  Satisfied,
  ViolatedENotS,
  ViolatedStrIntersection,
  CapExceeded
};

const char* to_string(StarStatus s);

struct StarResult {
  StarStatus status = StarStatus::Satisfied;
  long long cycle_count = 0;
  long long e_cycle_count = 0;
  std::optional<Cycle> witness_cycle;                  // ViolatedENotS
  std::optional<std::pair<Cycle, Cycle>> witness_pair;  // ViolatedStrIntersection
  std::vector<std::vector<int>> shared_components;
  std::string note;
};

// Condition (*): all e-cycles are s-cycles and no two e-cycles have S-to-R
// intersection.
StarResult check_condition_star(const DsrGraph& G,
                                long long cycle_cap = kDefaultCycleCap,
                                long long ecycle_cap = kDefaultECycleCap);

// Human-readable vertex trace, e.g. "OAA-R6-FUM-...".
std::string cycle_to_string(const DsrGraph& G, const Cycle& C);

}  // namespace dsr
