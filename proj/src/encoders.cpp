#include "ol/encoders.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace ol {

std::string cnf_var_name(int index) { return "x" + std::to_string(index); }

Sequent encode_clause(Interner& in, const Clause& c) {
  std::vector<FormulaId> neg, pos;
  for (const auto& [var, polarity] : c.literals) {
    FormulaId v = in.var(cnf_var_name(var));
    (polarity ? pos : neg).push_back(v);
  }
  // Right fold in ascending variable order (map iteration is ascending).
  auto fold = [&](const std::vector<FormulaId>& xs, bool conjunction) {
    FormulaId acc = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;)
      acc = conjunction ? in.conj(xs[i], acc) : in.disj(xs[i], acc);
    return acc;
  };
  Sequent s;
  if (neg.size() + pos.size() <= 2) {
    // Width-2 clauses keep one labelled variable per literal ({x, y} becomes
    // x^R, y^R), matching the 2SAT encoding; the Cut rule can then act on the
    // bare variables, which the resolution simulation needs.
    for (FormulaId v : neg) s = s.with(Annot{v, Side::L});
    for (FormulaId v : pos) s = s.with(Annot{v, Side::R});
    return s;
  }
  if (!neg.empty()) s = s.with(Annot{fold(neg, true), Side::L});
  if (!pos.empty()) s = s.with(Annot{fold(pos, false), Side::R});
  return s;
}

Problem encode_instance(Interner& in, const CnfInstance& i) {
  std::vector<Sequent> axioms;
  axioms.reserve(i.clauses.size());
  for (const Clause& c : i.clauses) axioms.push_back(encode_clause(in, c));
  return Problem::make(std::move(axioms), Sequent{});
}

namespace {

/// 2SAT solver over variables 0..n-1 via implication-graph SCCs (Tarjan).
/// Literal encoding: 2*v for v, 2*v+1 for ~v.
class TwoSat {
 public:
  explicit TwoSat(int n) : n_(n), adj_(static_cast<std::size_t>(2 * n)) {}

  void add_clause(int lit_a, int lit_b) {
    adj_[static_cast<std::size_t>(lit_a ^ 1)].push_back(lit_b);
    adj_[static_cast<std::size_t>(lit_b ^ 1)].push_back(lit_a);
  }

  /// Satisfying assignment (index -> value), or nullopt.
  std::optional<std::vector<bool>> solve() {
    int m = 2 * n_;
    index_.assign(static_cast<std::size_t>(m), -1);
    low_.assign(static_cast<std::size_t>(m), 0);
    comp_.assign(static_cast<std::size_t>(m), -1);
    on_stack_.assign(static_cast<std::size_t>(m), false);
    next_index_ = next_comp_ = 0;
    for (int v = 0; v < m; ++v)
      if (index_[static_cast<std::size_t>(v)] < 0) strongconnect(v);
    std::vector<bool> value(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) {
      int cp = comp_[static_cast<std::size_t>(2 * v)];
      int cn = comp_[static_cast<std::size_t>(2 * v + 1)];
      if (cp == cn) return std::nullopt;
      // Tarjan numbers components in reverse topological order; a literal is
      // true when its component comes later in topological order.
      value[static_cast<std::size_t>(v)] = cp < cn;
    }
    return value;
  }

 private:
  void strongconnect(int root) {
    // Iterative Tarjan to keep deep implication chains off the call stack.
    struct Frame {
      int v;
      std::size_t next_edge;
    };
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::size_t uv = static_cast<std::size_t>(f.v);
      if (f.next_edge == 0) {
        index_[uv] = low_[uv] = next_index_++;
        stack_.push_back(f.v);
        on_stack_[uv] = true;
      }
      bool descended = false;
      while (f.next_edge < adj_[uv].size()) {
        int w = adj_[uv][f.next_edge++];
        std::size_t uw = static_cast<std::size_t>(w);
        if (index_[uw] < 0) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack_[uw]) low_[uv] = std::min(low_[uv], index_[uw]);
      }
      if (descended) continue;
      if (low_[uv] == index_[uv]) {
        while (true) {
          int w = stack_.back();
          stack_.pop_back();
          on_stack_[static_cast<std::size_t>(w)] = false;
          comp_[static_cast<std::size_t>(w)] = next_comp_;
          if (w == f.v) break;
        }
        ++next_comp_;
      }
      int v_done = f.v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t up = static_cast<std::size_t>(frames.back().v);
        low_[up] = std::min(low_[up], low_[static_cast<std::size_t>(v_done)]);
      }
    }
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> index_, low_, comp_;
  std::vector<bool> on_stack_;
  std::vector<int> stack_;
  int next_index_ = 0, next_comp_ = 0;
};

}  // namespace

Classification classify(const CnfInstance& i) {
  Classification out;
  if (i.clauses.empty()) {
    out.two_cnf = out.horn = out.renamed_horn = out.general = true;
    out.rename_witness = std::set<int>{};
    return out;
  }

  out.two_cnf = std::all_of(i.clauses.begin(), i.clauses.end(), [](const Clause& c) {
    return c.literals.size() <= 2;
  });
  out.horn = std::all_of(i.clauses.begin(), i.clauses.end(), [](const Clause& c) {
    int positives = 0;
    for (const auto& [var, pol] : c.literals) positives += pol ? 1 : 0;
    return positives <= 1;
  });

  // Renamability (Lewis): a rename set V makes every clause Horn iff for
  // every pair of literals in a clause, not both are positive after
  // complementing V. Positive-after-rename of (x, pol) is pol XOR v_x, so
  // each pair yields the 2-clause (pol1 ? ~v1 : v1) or (pol2 ? ~v2 : v2).
  TwoSat ts(i.num_vars + 1);
  for (const Clause& c : i.clauses) {
    std::vector<std::pair<int, bool>> lits(c.literals.begin(), c.literals.end());
    for (std::size_t a = 0; a < lits.size(); ++a)
      for (std::size_t b = a + 1; b < lits.size(); ++b) {
        int la = 2 * lits[a].first + (lits[a].second ? 0 : 1);
        int lb = 2 * lits[b].first + (lits[b].second ? 0 : 1);
        ts.add_clause(la, lb);
      }
  }
  if (auto model = ts.solve()) {
    out.renamed_horn = true;
    std::set<int> witness;
    for (int v = 1; v <= i.num_vars; ++v)
      if ((*model)[static_cast<std::size_t>(v)]) witness.insert(v);
    out.rename_witness = std::move(witness);
  }

  out.general = !(out.two_cnf || out.horn || out.renamed_horn);
  return out;
}

RenameSet rename_set_for(Interner& in, const std::set<int>& witness) {
  RenameSet rs;
  for (int v : witness) rs.vars.insert(in.var(cnf_var_name(v)));
  return rs;
}

}  // namespace ol
