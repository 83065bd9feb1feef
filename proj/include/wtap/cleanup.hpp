#pragma once

#include "wtap/classic_round.hpp"
#include "wtap/exact.hpp"
#include "wtap/structured.hpp"

#include <map>
#include <memory>
#include <span>
#include <vector>

namespace wtap {

/// Owner tag for links added by cleanup (ADD(Q) swaps).
inline constexpr VertexId kAddedOwner = -2;

/// Edge-disjoint piece of Z_i+ \ A_i, named by its highest edge.
struct Subtree {
  EdgeId root_edge;
  std::vector<EdgeId> edges;  // sorted
};

/// Per-vertex cleanup data at `vertex`, given the core event drawn there.
struct CleanupContext {
  VertexId vertex = 0;
  int event = -1;  // -1 at the root (trivial event)
  std::vector<VertexId> uncorrelated_children;
  std::vector<std::vector<EdgeId>> Z;  // Z_i+, sorted
  std::vector<std::vector<EdgeId>> A;  // A_i, sorted
  std::vector<std::vector<Subtree>> Q;
  std::vector<std::vector<LinkId>> allowed;       // up-links with leading edge in Z_i+
  std::vector<std::vector<ExactSolution>> add;    // ADD(Q) per member of Q[i]
  Rational gamma;

  int index_of(VertexId child) const;
};

struct ProtectionState {
  std::vector<char> protected_vertex;  // per vertex; only uncorrelated non-root vertices can be set
  std::uint64_t covered = 0;           // bit e set iff some protected copy covers e_e
};

/// Marks each uncorrelated vertex protected with probability 1/2.
std::vector<char> draw_protected_vertices(const StructuredModel& model, Rng& rng);
ProtectionState protection_state(const StructuredModel& model, const std::vector<LinkCopy>& copies,
                                 std::vector<char> protected_vertex);
bool copy_protected(const ProtectionState& prot, const LinkCopy& copy);

/// {e_child} plus the correlated component hanging below `child`.
std::vector<EdgeId> compute_Zi(const Instance& inst, const std::vector<char>& correlated, VertexId child);

/// Edges of Z_i+ covered by the core event at v, or covered by some other
/// uncorrelated child's sampled event with probability >= gamma given that
/// event. `event` is -1 at the root.
std::vector<EdgeId> compute_Ai(const StructuredSolution& sol, int event, VertexId v, VertexId child,
                               const Rational& gamma);

/// Maximal subtrees of Z \ A, each starting at an edge whose parent edge is
/// not in Z \ A.
std::vector<Subtree> compute_Qi(const Instance& inst, std::span<const EdgeId> z, std::span<const EdgeId> a);

CleanupContext make_cleanup_context(const StructuredSolution& sol, VertexId v, int event, const Rational& gamma);

/// Q is active iff its root's parent edge is covered by a protected copy (the
/// owner must also be unprotected, checked by the caller).
bool subtree_active(const Instance& inst, const Subtree& q, const ProtectionState& prot);

/// Domination of the copy of an uncorrelated non-up link for its owner v_i,
/// where ctx is the context at v_i's parent.
bool is_dominated(const StructuredSolution& sol, const LinkCopy& copy, const CleanupContext& ctx,
                  const ProtectionState& prot);

struct CleanupResult {
  std::vector<LinkCopy> copies;  // multiset after cleanup
  std::vector<LinkCopy> removed;
  std::vector<LinkCopy> added;
};

/// Caches contexts per (vertex, core event) across runs on one solution.
class Cleaner {
 public:
  Cleaner(std::shared_ptr<const StructuredSolution> sol, Rational gamma);

  const CleanupContext& context(VertexId v, int event);
  /// Removes dominated copies and applies ADD swaps. Unprotected uncorrelated
  /// vertices are processed in `order` (BFS order when empty).
  CleanupResult run(const RoundingResult& rounding, const ProtectionState& prot,
                    std::span<const VertexId> order = {});

  const StructuredSolution& solution() const { return *sol_; }
  const Rational& gamma() const { return gamma_; }

 private:
  std::shared_ptr<const StructuredSolution> sol_;
  Rational gamma_;
  std::map<std::pair<VertexId, int>, CleanupContext> cache_;
};

CleanupResult cleanup(const StructuredSolution& sol, const RoundingResult& rounding, const ProtectionState& prot,
                      const Rational& gamma);

struct Params149 {
  Rational gamma{3, 20};
  Rational p{25, 53};
};

/// Constants of the 1.49 analysis: K = gamma^2 / (1 - 2 gamma),
/// C1 = (1 - p)(1 + K), C2 = (1 - p)(2 - gamma / 2), ratio = C1 + 2p.
struct Analysis149 {
  Rational K;
  Rational C1;
  Rational C2;
  Rational ratio;
};

Analysis149 analyze_149(const Params149& params);

struct CombinedRun {
  ExactSolution solution;  // deduplicated
  bool odd_cut_branch = false;
  Rational multiset_cost;  // cost paid per copy; equals solution.cost on the odd-cut branch
  Rational pre_cleanup_cost;
  std::vector<LinkCopy> removed_copies;
  bool protected_removed = false;
};

/// Both combined algorithms on one Structured Fractional Solution. The
/// Odd-Cut rounding is deterministic and computed once.
class Combiner {
 public:
  Combiner(const Instance& inst, const StructuredSolution& sol, const Params149& params = {});

  CombinedRun run_15(std::uint64_t seed);
  CombinedRun run_149(std::uint64_t seed);

  const ExactSolution& odd_cut_solution() const { return odd_cut_; }
  Rational z_cost() const { return sol_->z.objective_value; }

 private:
  CombinedRun structured_branch(std::uint64_t seed, bool with_cleanup);

  Instance inst_;
  std::shared_ptr<const StructuredSolution> sol_;
  Params149 params_;
  ExactSolution odd_cut_;
  Cleaner cleaner_;
};

ExactSolution run_15(const Instance& inst, const StructuredSolution& sol, std::uint64_t seed);
ExactSolution run_149(const Instance& inst, const StructuredSolution& sol, const Params149& params,
                      std::uint64_t seed);

}  // namespace wtap
