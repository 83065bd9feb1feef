#include "wtap/lp.hpp"

#include "hybrid_rational.hpp"

#include <algorithm>
#include <string>

namespace wtap {

int LinearProgram::add_variable(std::string name, Rational cost, Rational lo, std::optional<Rational> hi) {
  variable_names.push_back(std::move(name));
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  return num_variables() - 1;
}

void LinearProgram::add_constraint(std::vector<std::pair<int, Rational>> terms, Relation relation, Rational rhs,
                                   std::string name) {
  constraints.push_back(LinearConstraint{std::move(terms), relation, std::move(rhs), std::move(name)});
}

namespace {

struct SparseRow {
  std::vector<int> idx;  // ascending column indices
  std::vector<detail::Num> val;

  const detail::Num* find(int col) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), col);
    if (it == idx.end() || *it != col) return nullptr;
    return &val[it - idx.begin()];
  }
};

// row -= factor * pivot; `out` is scratch space whose storage is recycled.
void axpy(SparseRow& row, const detail::Num& factor, const SparseRow& pivot, SparseRow& out) {
  out.idx.clear();
  out.val.clear();
  out.idx.reserve(row.idx.size() + pivot.idx.size());
  out.val.reserve(row.idx.size() + pivot.idx.size());
  size_t a = 0, b = 0;
  detail::Num tmp;
  while (a < row.idx.size() || b < pivot.idx.size()) {
    if (b == pivot.idx.size() || (a < row.idx.size() && row.idx[a] < pivot.idx[b])) {
      out.idx.push_back(row.idx[a]);
      out.val.push_back(std::move(row.val[a]));
      ++a;
    } else if (a == row.idx.size() || pivot.idx[b] < row.idx[a]) {
      tmp = factor * pivot.val[b];
      out.idx.push_back(pivot.idx[b]);
      out.val.push_back(-tmp);
      ++b;
    } else {
      row.val[a] -= factor * pivot.val[b];
      if (!row.val[a].is_zero()) {
        out.idx.push_back(row.idx[a]);
        out.val.push_back(std::move(row.val[a]));
      }
      ++a;
      ++b;
    }
  }
  std::swap(row, out);
}

class Tableau {
 public:
  std::vector<SparseRow> rows;
  std::vector<detail::Num> rhs;
  std::vector<int> basis;
  std::vector<char> banned;  // columns that may never enter
  std::vector<detail::Num> reduced;  // dense reduced-cost row
  detail::Num value;  // current objective value of the phase
  long iterations = 0;
  int num_cols = 0;

  void pivot(int r, int q) {
    SparseRow& prow = rows[r];
    const detail::Num inv = prow.find(q)->inverse();
    for (auto& v : prow.val) v *= inv;
    rhs[r] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const detail::Num* a = rows[i].find(q);
      if (!a) continue;
      const detail::Num factor = *a;
      axpy(rows[i], factor, prow, scratch_);
      rhs[i] -= factor * rhs[r];
    }
    if (!reduced[q].is_zero()) {
      const detail::Num factor = reduced[q];
      for (size_t k = 0; k < prow.idx.size(); ++k) reduced[prow.idx[k]] -= factor * prow.val[k];
      value += factor * rhs[r];
    }
    basis[r] = q;
  }

  enum class Outcome { Optimal, Unbounded };

  // With stop_at_zero (phase 1) the run ends once the objective reaches 0.
  Outcome run(const SolveOptions& options, bool stop_at_zero = false) {
    bool bland = options.rule == PivotRule::Bland;
    int degenerate_run = 0;
    for (;;) {
      if (stop_at_zero && value.is_zero()) return Outcome::Optimal;
      if (++iterations > options.max_iterations) {
        throw Error(ErrorCode::TooLarge, "simplex iteration limit reached");
      }
      int q = -1;
      for (int j = 0; j < num_cols; ++j) {
        if (banned[j] || reduced[j].sign() >= 0) continue;
        if (q < 0) {
          q = j;
          if (bland) break;
        } else if (reduced[j] < reduced[q]) {
          q = j;
        }
      }
      if (q < 0) return Outcome::Optimal;
      int r = -1;
      detail::Num best_ratio;
      for (size_t i = 0; i < rows.size(); ++i) {
        const detail::Num* a = rows[i].find(q);
        if (!a || a->sign() <= 0) continue;
        detail::Num ratio = rhs[i] / *a;
        if (r < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[r])) {
          r = static_cast<int>(i);
          best_ratio = std::move(ratio);
        }
      }
      if (r < 0) return Outcome::Unbounded;
      if (best_ratio.is_zero()) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(r, q);
    }
  }

  SparseRow scratch_;

  void remove_row(int r) {
    rows.erase(rows.begin() + r);
    rhs.erase(rhs.begin() + r);
    basis.erase(basis.begin() + r);
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SolveOptions& options) {
  const int n = lp.num_variables();

  struct Row {
    std::vector<std::pair<int, Rational>> terms;
    Relation relation;
    Rational rhs;
  };
  std::vector<Row> rows;
  rows.reserve(lp.constraints.size() + n);
  for (const auto& c : lp.constraints) {
    Row row{{}, c.relation, c.rhs};
    std::vector<std::pair<int, Rational>> terms = c.terms;
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [j, coef] : terms) {
      if (j < 0 || j >= n) throw Error(ErrorCode::InvalidConfig, "constraint references unknown variable");
      row.rhs -= coef * lp.lower[j];
      if (!row.terms.empty() && row.terms.back().first == j) {
        row.terms.back().second += coef;
      } else {
        row.terms.emplace_back(j, coef);
      }
    }
    std::erase_if(row.terms, [](const auto& t) { return sgn(t.second) == 0; });
    if (row.terms.empty()) {
      const int s = sgn(row.rhs);
      const bool ok = (c.relation == Relation::Equal && s == 0) ||
                      (c.relation == Relation::GreaterEqual && s <= 0) ||
                      (c.relation == Relation::LessEqual && s >= 0);
      if (!ok) throw Error(ErrorCode::Infeasible, "empty constraint " + c.name + " cannot hold");
      continue;
    }
    rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    Rational span = *lp.upper[j] - lp.lower[j];
    if (sgn(span) < 0) throw Error(ErrorCode::Infeasible, "empty bounds on " + lp.variable_names[j]);
    rows.push_back(Row{{{j, Rational(1)}}, Relation::LessEqual, span});
  }

  // Column layout: structural | slack/surplus | artificial.
  Tableau t;
  int next_col = n;
  std::vector<int> slack_col(rows.size(), -1);
  for (size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (sgn(row.rhs) < 0) {
      row.rhs = -row.rhs;
      for (auto& term : row.terms) term.second = -term.second;
      if (row.relation == Relation::GreaterEqual) row.relation = Relation::LessEqual;
      else if (row.relation == Relation::LessEqual) row.relation = Relation::GreaterEqual;
    }
    if (row.relation != Relation::Equal) slack_col[i] = next_col++;
  }
  const int first_artificial = next_col;
  std::vector<int> art_col(rows.size(), -1);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].relation != Relation::LessEqual) art_col[i] = next_col++;
  }
  t.num_cols = next_col;
  t.banned.assign(t.num_cols, 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    SparseRow sr;
    for (auto& [j, coef] : rows[i].terms) {
      sr.idx.push_back(j);
      sr.val.emplace_back(coef);
    }
    if (slack_col[i] >= 0) {
      sr.idx.push_back(slack_col[i]);
      sr.val.emplace_back(rows[i].relation == Relation::LessEqual ? 1 : -1);
    }
    if (art_col[i] >= 0) {
      sr.idx.push_back(art_col[i]);
      sr.val.emplace_back(1);
    }
    t.rows.push_back(std::move(sr));
    t.rhs.emplace_back(rows[i].rhs);
    t.basis.push_back(art_col[i] >= 0 ? art_col[i] : slack_col[i]);
  }

  // Phase 1: minimise the sum of artificials.
  t.reduced.assign(t.num_cols, detail::Num(0));
  t.value = 0;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (art_col[i] < 0) continue;
    for (size_t k = 0; k < t.rows[i].idx.size(); ++k) {
      const int j = t.rows[i].idx[k];
      if (j < first_artificial) t.reduced[j] -= t.rows[i].val[k];
    }
    t.value += t.rhs[i];
  }
  if (t.value.sign() > 0) {
    t.run(options, true);
    if (t.value.sign() > 0) throw Error(ErrorCode::Infeasible, "LP has no feasible point");
  }
  // Drive remaining (zero-level) artificials out of the basis.
  for (int i = static_cast<int>(t.rows.size()) - 1; i >= 0; --i) {
    if (t.basis[i] < first_artificial) continue;
    int q = -1;
    for (size_t k = 0; k < t.rows[i].idx.size(); ++k) {
      if (t.rows[i].idx[k] < first_artificial) {
        q = t.rows[i].idx[k];
        break;
      }
    }
    if (q >= 0) {
      t.pivot(i, q);
    } else {
      t.remove_row(i);
    }
  }
  for (int j = first_artificial; j < t.num_cols; ++j) t.banned[j] = 1;
  // Artificial columns are never needed again; strip them from the rows.
  for (auto& row : t.rows) {
    auto cut = std::lower_bound(row.idx.begin(), row.idx.end(), first_artificial) - row.idx.begin();
    row.idx.resize(cut);
    row.val.resize(cut);
  }

  // Phase 2.
  t.reduced.assign(t.num_cols, detail::Num(0));
  for (int j = 0; j < n; ++j) t.reduced[j] = detail::Num(lp.objective[j]);
  t.value = 0;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const int b = t.basis[i];
    if (b >= n || sgn(lp.objective[b]) == 0) continue;
    const detail::Num cb(lp.objective[b]);
    for (size_t k = 0; k < t.rows[i].idx.size(); ++k) t.reduced[t.rows[i].idx[k]] -= cb * t.rows[i].val[k];
    t.value += cb * t.rhs[i];
  }
  if (t.run(options) == Tableau::Outcome::Unbounded) throw Error(ErrorCode::Unbounded, "objective unbounded below");

  LpResult result;
  result.point = lp.lower;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) result.point[t.basis[i]] += t.rhs[i].to_mpq();
  }
  result.objective = 0;
  for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.point[j];
  result.iterations = t.iterations;
  result.vertex = true;
  return result;
}

void write_lp(std::ostream& os, const LinearProgram& lp) {
  auto name = [&](int j) { return lp.variable_names[j].empty() ? "x" + std::to_string(j) : lp.variable_names[j]; };
  os << "min:";
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (sgn(lp.objective[j]) != 0) os << " + " << format_rational(lp.objective[j]) << " " << name(j);
  }
  os << "\nst\n";
  for (size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    os << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ":";
    for (const auto& [j, coef] : c.terms) os << " + " << format_rational(coef) << " " << name(j);
    os << (c.relation == Relation::GreaterEqual ? " >= " : c.relation == Relation::Equal ? " = " : " <= ")
       << format_rational(c.rhs) << "\n";
  }
  os << "bounds\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    os << format_rational(lp.lower[j]) << " <= " << name(j);
    if (lp.upper[j]) os << " <= " << format_rational(*lp.upper[j]);
    os << "\n";
  }
  os << "end\n";
}

}  // namespace wtap
