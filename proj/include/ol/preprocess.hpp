#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ol/core.hpp"

namespace ol {

/// Variables (Kind::Var ids) to complement during renaming.
struct RenameSet {
  std::unordered_set<FormulaId> vars;
};

/// Repeatedly combines axioms that share a side: {a^L, b1^R} + {a^L, b2^R}
/// becomes {a^L, (b1 & b2)^R}, dually for shared right-hand sides, using the
/// a <= ~b / b <= ~a flip to expose shared sides. Singleton axioms all fold
/// into one. Provability of any goal is unchanged; the result has pairwise
/// distinct left sides and right sides and no left side complementing a right
/// side.
std::vector<Sequent> merge_axioms(Interner& in, const std::vector<Sequent>& axioms);

/// Summed size of the interpreted inequalities of the axioms, not counting
/// negation nodes. merge_axioms never increases this measure.
std::size_t merge_measure(Interner& in, const std::vector<Sequent>& axioms);

/// Replaces every 0 by v & ~v and every 1 by v | ~v for a single reserved
/// fresh variable v. Equi-provable; problems without bounds are returned
/// unchanged.
Problem eliminate_bounds(Interner& in, const Problem& p);

/// Negation normal form: negations pushed to variables/atoms by De Morgan,
/// double negations collapsed, ~0 -> 1 and ~1 -> 0.
FormulaId nnf(Interner& in, FormulaId f);

/// Complements every literal occurrence (x or ~x) of a variable in v
/// throughout axioms and goal; ~~x collapses back to x at literal positions
/// only. An involution.
Problem rename(Interner& in, const Problem& p, const RenameSet& v);
FormulaId rename_formula(Interner& in, FormulaId f, const RenameSet& v);

struct TseitinResult {
  Problem problem;
  /// Fresh variable id -> the formula it names.
  std::unordered_map<FormulaId, FormulaId> definitions;
};

/// Flattens the problem to height <= 2 by naming subexpressions of the form
/// x & y / x | y (x, y literals) with fresh reserved variables and adding both
/// defining axioms {c^L, e^R} and {e^L, c^R}. Applies an NNF pass first.
/// Equi-provable; the output satisfies is_tseitin_normal.
TseitinResult tseitin(Interner& in, const Problem& p);

/// True iff every sequent of the problem matches one of the flat shapes
/// {a, b&c}, {a, b|c}, {a, b}, {a}, or the empty sequent, for literals
/// a, b, c (sides arbitrary).
bool is_tseitin_normal(const Interner& in, const Problem& p);

}  // namespace ol
