#pragma once

#include "wtap/lp.hpp"
#include "wtap/random.hpp"

#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

namespace wtap {

/// Edge set around `center`: {e_v} alone, or E*(v) plus at most two
/// uncorrelated child edges. The dummy root edge is left out, so stars at the
/// root are the sets of one or two root-child edges.
struct Star {
  VertexId center = 0;
  std::vector<EdgeId> edges;  // sorted
};

struct StructuredEvent {
  int star = 0;
  std::vector<LinkId> links;  // sorted; small and covering on every star edge
};

inline constexpr long kDefaultEventCap = 200'000;

/// Stars, events and the index structure shared by the LP, the sampler and
/// cleanup.
struct StructuredModel {
  Instance inst;
  std::vector<VertexId> v_cor;
  std::vector<char> correlated;  // per vertex
  std::vector<char> fixed_zero;  // per link: covers e_v and an uncorrelated child edge of v
  int rho_prime = 0;

  std::vector<Star> stars;
  std::vector<StructuredEvent> events;
  std::vector<std::vector<int>> events_of_star;  // canonical order
  std::vector<int> local_index;                  // event -> position within its star

  std::vector<int> singleton;  // vertex v -> star {e_v} (-1 at the root)
  std::vector<int> core;       // vertex v -> star E*(v) (-1 at the root)
  std::map<std::pair<VertexId, VertexId>, int> extended;  // (v, uncorrelated child c) -> E*(v) + e_c

  struct Nesting {
    std::vector<int> projection;           // E2 event (local) -> E1 event (global)
    std::vector<std::vector<int>> groups;  // E1 event (local) -> agreeing E2 events (global)
  };
  std::map<std::pair<int, int>, Nesting> nested;  // (E1 star, E2 star), E1 strictly inside E2

  int num_x() const { return inst.num_links(); }
  int y_offset() const { return inst.num_links(); }
  int z_offset() const { return inst.num_links() + static_cast<int>(events.size()); }

  /// Events of star s2 agreeing with event `base` of a star nested in s2.
  const std::vector<int>& agreeing(int base, int s2) const;
  /// The event of star s1 that `event` (of a star containing s1) induces.
  int project(int event, int s1) const;
  bool link_in_event(int event, LinkId id) const;
};

struct StructuredSolution {
  FractionalSolution x;
  std::vector<Rational> y;  // indexed by event id of `model`
  FractionalSolution z;
  std::vector<VertexId> v_cor;
  int rho_prime = 0;
  std::shared_ptr<const StructuredModel> model;
};

struct StructuredLp {
  LinearProgram lp;
  std::shared_ptr<StructuredModel> model;
};

/// Children v (parent not the root) whose edge shares x0 mass >= delta with
/// the parent edge.
std::vector<VertexId> select_vcor(const Instance& inst, const FractionalSolution& x0, const Rational& delta);

std::vector<Star> enumerate_stars(const Instance& inst, std::span<const VertexId> v_cor);

/// Largest |L_e| over edges after dropping the fixed-to-zero links.
int default_rho_prime(const Instance& inst, std::span<const VertexId> v_cor);

/// Variables x | y | z, marginal, coverage and consistency rows, the
/// seed odd-cut rows 2 z(L_e) >= 2, z <= 1, fixings and the two cost
/// couplings; objective c(z). The remaining odd-cut rows are added lazily by
/// `solve_structured`.
StructuredLp build_structured_lp(const Instance& inst, std::span<const VertexId> v_cor, int rho_prime,
                                 long event_cap = kDefaultEventCap);

StructuredSolution solve_structured(const Instance& inst, std::span<const VertexId> v_cor, int rho_prime,
                                    long event_cap = kDefaultEventCap, const SolveOptions& options = {});

/// Event of `target_star` drawn with probability y(E2) / y(base).
int conditional_sample(const StructuredModel& model, const std::vector<Rational>& y, int base_event,
                       int target_star, Rng& rng);

struct LinkCopy {
  LinkId link = 0;
  /// Uncorrelated child v_i whose sampled event added this copy; -1 for
  /// copies added from E_cor.
  VertexId owner = -1;
};

struct VertexTrace {
  int call_event = -1;   // (e_v, L') the vertex was called with; -1 at the root
  int core_event = -1;  // event drawn for E*(v) (the call event when E*(v) = {e_v}); -1 at the root
  std::map<VertexId, int> child_events;  // uncorrelated child -> event sampled for it
};

struct RoundingTrace {
  std::vector<VertexTrace> vertices;
};

struct RoundingResult {
  std::vector<LinkCopy> copies;  // multiset O
  RoundingTrace trace;
};

/// Structured-Rounding from the root. Vertex v draws from its own stream
/// derive_seed(seed, {v}).
RoundingResult structured_rounding(const StructuredSolution& sol, std::uint64_t seed);

std::vector<LinkId> copies_to_links(const std::vector<LinkCopy>& copies);
Rational multiset_cost(const Instance& inst, const std::vector<LinkCopy>& copies);

/// c(x(L_C u L_UP)) + 2 c(x(L_U \ L_UP)).
Rational expected_rounding_cost(const StructuredSolution& sol);

/// Canonical text dump of x, z and the nonzero y values.
void write_structured(std::ostream& os, const StructuredSolution& sol);

}  // namespace wtap
