#pragma once

#include "wtap/core.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wtap {

enum class Relation { GreaterEqual, Equal, LessEqual };

struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable index, coefficient)
  Relation relation = Relation::GreaterEqual;
  Rational rhs;
  std::string name;
};

/// Minimisation LP over exact rationals. Variables carry [lower, upper] bounds
/// with lower >= 0; an empty upper bound means unbounded above.
struct LinearProgram {
  std::vector<std::string> variable_names;
  std::vector<Rational> objective;
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<LinearConstraint> constraints;

  int num_variables() const { return static_cast<int>(objective.size()); }
  int add_variable(std::string name, Rational cost, Rational lo = 0, std::optional<Rational> hi = std::nullopt);
  void add_constraint(std::vector<std::pair<int, Rational>> terms, Relation relation, Rational rhs,
                      std::string name = {});
};

enum class PivotRule {
  Bland,
  /// Most negative reduced cost; falls back to Bland for good after a run of
  /// degenerate pivots, which keeps the termination guarantee.
  DantzigThenBland,
};

struct SolveOptions {
  PivotRule rule = PivotRule::Bland;
  long max_iterations = 5'000'000;
};

struct LpResult {
  Rational objective;
  std::vector<Rational> point;
  bool vertex = true;
  long iterations = 0;
};

/// Two-phase primal simplex on a sparse exact tableau. Throws Infeasible or
/// Unbounded.
LpResult solve_lp(const LinearProgram& lp, const SolveOptions& options = {});

/// Plain-text interchange dump (`min`, `st`, `bounds`, `end`).
void write_lp(std::ostream& os, const LinearProgram& lp);

struct FractionalSolution {
  std::vector<Rational> values;  // indexed by link id
  Rational objective_value;
};

struct OddCutViolation {
  std::vector<VertexId> vertex_set;
  Rational deficit;
};

inline constexpr int kDefaultSeparationCap = 18;

/// min c.x s.t. x(L_e) >= 1, 0 <= x <= 1.
FractionalSolution cut_lp(const Instance& inst);
LinearProgram cut_lp_program(const Instance& inst);

/// The Odd Cut LP with every odd-cut row written out (n <= separation cap).
LinearProgram odd_cut_lp_program(const Instance& inst, int separation_cap = kDefaultSeparationCap);

struct OddCutOptions {
  int separation_cap = kDefaultSeparationCap;
  /// Links forced to zero (empty = none).
  std::vector<char> fixed_zero;
  SolveOptions solve;
};

/// Odd Cut LP by cutting planes over `separate_odd_cut`.
FractionalSolution odd_cut_lp(const Instance& inst, const OddCutOptions& options = {});

/// Most violated odd-cut constraint for `values` (over all S containing the
/// root), or nothing when every constraint holds.
std::optional<OddCutViolation> separate_odd_cut(const Instance& inst, const std::vector<Rational>& values,
                                                int separation_cap = kDefaultSeparationCap);

/// Coefficients of the odd-cut row for vertex set S (bit v set iff v in S):
/// per link, [link crosses S] + |P_link ∩ δ_E(S)|. Second member is the rhs.
std::pair<std::vector<std::pair<int, Rational>>, Rational> odd_cut_row(const Instance& inst,
                                                                       std::uint64_t vertex_mask);

bool is_integral(const FractionalSolution& x);

struct PresolvedProgram {
  LinearProgram lp;
  std::vector<int> map;  // original column -> reduced column, -1 when fixed at 0
};

/// Equivalent smaller program: columns forced to zero by `= 0` rows over
/// non-negative columns are dropped, columns tied by `a - b = 0` rows are
/// merged, and rows left empty, redundant or duplicated are removed. Every
/// column must have lower bound 0.
PresolvedProgram presolve(const LinearProgram& lp);

Rational objective_of(const Instance& inst, const std::vector<Rational>& values);

}  // namespace wtap
