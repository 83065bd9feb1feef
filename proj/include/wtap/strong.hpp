#pragma once

#include "wtap/lp.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace wtap {

inline constexpr long kDefaultSubtreeCap = 20'000;
inline constexpr long kDefaultStrongEventCap = 50'000;

/// (R, R_small, L_small): every edge of R_small (leaf edges of R) is covered
/// by 1..rho links of L_small, every other edge of R by more than rho links.
struct StrongEvent {
  int subtree = 0;
  std::vector<EdgeId> R;        // sorted
  std::vector<EdgeId> R_small;  // sorted
  std::vector<LinkId> L_small;  // sorted
};

struct StrongModel {
  Instance inst;
  int beta = 0;
  int rho = 0;
  std::vector<std::vector<EdgeId>> subtrees;  // canonical order: by size, then edge list
  std::vector<std::uint64_t> subtree_mask;
  std::map<std::uint64_t, int> subtree_index;
  std::vector<StrongEvent> events;
  std::vector<std::vector<int>> events_of_subtree;
  std::vector<std::uint64_t> small_mask;         // per event
  std::vector<std::vector<LinkId>> relevant;     // per event: L(R), sorted

  /// Event id, or -1.
  int find_event(int subtree, std::uint64_t small, const std::vector<LinkId>& links) const;
  /// Position of `id` in relevant[event], or -1.
  int relevant_index(int event, LinkId id) const;

 private:
  friend StrongModel build_strong_model(const Instance&, int, int, long, long);
  std::map<std::tuple<int, std::uint64_t, std::vector<LinkId>>, int> index_;
};

/// Connected edge sets with at most beta + 3 leaves.
std::vector<std::vector<EdgeId>> enumerate_subtrees(const Instance& inst, int beta,
                                                    long cap = kDefaultSubtreeCap);

/// Vertices of degree one in the edge set.
std::vector<VertexId> subtree_leaves(const Instance& inst, std::span<const EdgeId> edges);
/// Leaf edges: edges incident to a leaf of the edge set.
std::vector<EdgeId> leaf_edges(const Instance& inst, std::span<const EdgeId> edges);

/// Growth center for extending R inside Q: the root u of R if it is internal
/// in R, else u's neighbour v when |R| >= 2; for |R| = 1, u unless u is a
/// leaf of Q.
VertexId extension_center(const Instance& inst, std::span<const EdgeId> R, std::span<const EdgeId> Q);

StrongModel build_strong_model(const Instance& inst, int beta, int rho, long subtree_cap = kDefaultSubtreeCap,
                               long event_cap = kDefaultStrongEventCap);

/// Ext(F, Q), built by growing from the center.
std::vector<int> ext_set(const StrongModel& model, int event, int q_subtree);
/// Same set by filtering every event against the definition.
std::vector<int> ext_set_naive(const StrongModel& model, int event, int q_subtree);

struct StrongLp {
  LinearProgram lp;
  std::shared_ptr<const StrongModel> model;
};

/// Variables x | y | free y_l. y_l(F) is substituted by y(F) for l in
/// L_small and by 0 for the other links of L(R_small); rows for Q = R are
/// identities and left out. Seed odd-cut rows 2 x(L_e) >= 2 are included;
/// the rest are added lazily by `solve_strong_lp`.
StrongLp build_strong_lp(const Instance& inst, int beta, int rho, long subtree_cap = kDefaultSubtreeCap,
                         long event_cap = kDefaultStrongEventCap);

struct StrongCandidate {
  FractionalSolution x;
  std::vector<Rational> y;                    // per event
  std::vector<std::vector<Rational>> y_link;  // per event, parallel to model.relevant
};

/// The 0/1 point induced by a feasible link set.
StrongCandidate intended_solution(const StrongModel& model, std::span<const LinkId> lstar);

// Row families of the Strong LP, numbered as the checker reports them.
enum StrongRow : int {
  kRowOddCut = 6,        // odd cuts and x >= 0
  kRowEdgeCover = 7,     // events of a single edge sum to 1
  kRowEdgeMarginal = 8,  // y_l over single-edge events equals x_l
  kRowEventNonneg = 9,
  kRowLinkNonneg = 10,
  kRowSmallIn = 11,      // y_l = y_F for small links in L_F
  kRowSmallOut = 12,     // y_l = 0 for other small links
  kRowHuge = 13,         // huge edges covered rho times
  kRowExtEvent = 14,     // extensions of F to Q sum to y_F
  kRowExtLink = 15,      // and likewise per link
};

struct StrongViolation {
  int constraint = 0;  // a StrongRow
  std::string where;
  Rational deficit;
};

/// Every violated Strong LP row, each with its deficit.
std::vector<StrongViolation> check_strong_feasibility(const StrongModel& model, const StrongCandidate& candidate);

struct StrongLpValue {
  Rational objective;
  FractionalSolution x;
  std::size_t events = 0;
  std::size_t rows = 0;
  std::size_t columns = 0;
  long iterations = 0;
};

StrongLpValue solve_strong_lp(const Instance& inst, int beta, int rho, long subtree_cap = kDefaultSubtreeCap,
                              long event_cap = kDefaultStrongEventCap, const SolveOptions& options = {});

}  // namespace wtap
