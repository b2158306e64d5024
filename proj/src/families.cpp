#include "ol/families.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace ol {

Problem chain_problem(Interner& in, int n) {
  if (n < 2) throw Error(Error::Code::Argument, "chain family needs n >= 2");
  std::vector<FormulaId> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars.push_back(in.var("x" + std::to_string(i)));
  FormulaId left = vars[0];
  for (int i = 1; i < n; ++i) left = in.disj(left, vars[static_cast<std::size_t>(i)]);
  FormulaId right = vars[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 0; --i) right = in.disj(vars[static_cast<std::size_t>(i)], right);
  return Problem::make({}, Sequent(Annot{left, Side::L}, Annot{right, Side::R}));
}

CnfInstance random_cnf(std::mt19937& rng, int vars, int clauses, int width, bool horn) {
  CnfInstance out;
  out.num_vars = vars;
  std::uniform_int_distribution<int> var_dist(1, vars);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int c = 0; c < clauses; ++c) {
    Clause clause;
    std::vector<int> picked;
    int want = std::min(width, vars);
    while (static_cast<int>(picked.size()) < want) {
      int v = var_dist(rng);
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    bool used_positive = false;
    for (int v : picked) {
      bool pol = coin(rng) == 1;
      if (horn && pol && used_positive) pol = false;
      used_positive = used_positive || pol;
      clause.literals[v] = pol;
    }
    out.clauses.push_back(clause);
  }
  return out;
}

}  // namespace ol
