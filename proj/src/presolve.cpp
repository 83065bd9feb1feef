#include "wtap/lp.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace wtap {

PresolvedProgram presolve(const LinearProgram& lp) {
  const int n = lp.num_variables();
  std::vector<int> rep(n);
  for (int j = 0; j < n; ++j) rep[j] = j;
  std::vector<char> zero(n, 0);
  std::vector<Rational> cost = lp.objective;
  std::vector<std::optional<Rational>> upper = lp.upper;
  for (int j = 0; j < n; ++j) {
    if (sgn(lp.lower[j]) != 0) throw Error(ErrorCode::NotApplicable, "presolve expects zero lower bounds");
    if (upper[j] && sgn(*upper[j]) == 0) zero[j] = 1;
  }
  std::function<int(int)> find = [&](int j) { return rep[j] == j ? j : rep[j] = find(rep[j]); };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    rep[b] = a;
    cost[a] += cost[b];
    if (upper[b] && (!upper[a] || *upper[b] < *upper[a])) upper[a] = upper[b];
    if (zero[b]) zero[a] = 1;
  };

  struct Row {
    std::map<int, Rational> terms;
    Relation relation;
    Rational rhs;
    std::string name;
    bool live = true;
  };
  std::vector<Row> rows;
  for (const auto& c : lp.constraints) {
    Row r{{}, c.relation, c.rhs, c.name};
    for (const auto& [j, coef] : c.terms) r.terms[j] += coef;
    rows.push_back(std::move(r));
  }
  auto normalize = [&](Row& r) {
    std::map<int, Rational> t;
    for (const auto& [j, coef] : r.terms) {
      const int k = find(j);
      if (!zero[k]) t[k] += coef;
    }
    std::erase_if(t, [](const auto& kv) { return sgn(kv.second) == 0; });
    r.terms = std::move(t);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (Row& r : rows) {
      if (!r.live) continue;
      normalize(r);
      if (r.terms.empty()) {
        const int s = sgn(r.rhs);
        const bool ok = (r.relation == Relation::Equal && s == 0) || (r.relation == Relation::GreaterEqual && s <= 0) ||
                        (r.relation == Relation::LessEqual && s >= 0);
        if (!ok) throw Error(ErrorCode::Infeasible, "row " + r.name + " cannot hold");
        r.live = false;
        continue;
      }
      int pos = 0, neg = 0;
      for (const auto& [j, coef] : r.terms) (sgn(coef) > 0 ? pos : neg)++;
      if (r.relation == Relation::Equal && sgn(r.rhs) == 0) {
        if (pos == 0 || neg == 0) {
          for (const auto& [j, coef] : r.terms) zero[j] = 1;
          r.live = false;
          changed = true;
        } else if (r.terms.size() == 2 && r.terms.begin()->second == -r.terms.rbegin()->second) {
          unite(r.terms.begin()->first, r.terms.rbegin()->first);
          r.live = false;
          changed = true;
        }
      } else if (r.relation == Relation::GreaterEqual && neg == 0 && sgn(r.rhs) <= 0) {
        r.live = false;
      } else if (r.relation == Relation::LessEqual && pos == 0 && sgn(r.rhs) >= 0) {
        r.live = false;
      }
    }
  }

  PresolvedProgram out;
  std::vector<int> column(n, -1);
  for (int j = 0; j < n; ++j) {
    if (find(j) != j || zero[j]) continue;
    column[j] = out.lp.add_variable(lp.variable_names[j], cost[j], 0, upper[j]);
  }
  out.map.resize(n);
  for (int j = 0; j < n; ++j) out.map[j] = zero[find(j)] ? -1 : column[find(j)];
  std::set<std::tuple<int, std::string, std::vector<std::pair<int, std::string>>>> seen;
  for (Row& r : rows) {
    if (!r.live) continue;
    normalize(r);
    std::vector<std::pair<int, Rational>> terms;
    std::vector<std::pair<int, std::string>> key;
    for (const auto& [j, coef] : r.terms) {
      terms.emplace_back(column[j], coef);
      key.emplace_back(column[j], coef.get_str());
    }
    if (!seen.insert({static_cast<int>(r.relation), r.rhs.get_str(), key}).second) continue;
    out.lp.add_constraint(std::move(terms), r.relation, r.rhs, r.name);
  }
  return out;
}

}  // namespace wtap
