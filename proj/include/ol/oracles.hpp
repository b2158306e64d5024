#pragma once

#include <optional>

#include "ol/core.hpp"
#include "ol/epr.hpp"

namespace ol {

struct OracleVerdict {
  bool holds = false;
  /// Countermodel when holds is false; absent otherwise.
  std::optional<Assignment> witness;
};

/// Exhaustive {0,1} check: the goal inequality holds under every Boolean
/// assignment satisfying all axiom inequalities. Caps at 20 variables
/// (Error::Cap); predicate atoms raise Error::NotGround.
OracleVerdict classical_verdict(Interner& in, const Problem& p);

/// Exhaustive check over a finite ortholattice. Caps the assignment space at
/// |l|^vars <= 2^20 (Error::Cap).
OracleVerdict ortholattice_verdict(Interner& in, const Problem& p,
                                   const FiniteOrtholattice& l);

/// Independent naive bottom-up Datalog evaluator: computes the least model of
/// the Horn-shaped program by saturation and tests membership of the ground
/// query. Shares no machinery with ground()/prove().
bool datalog_naive(const Interner& in, const EprProblem& program, FormulaId query);

}  // namespace ol
