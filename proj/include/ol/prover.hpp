#pragma once

#include <chrono>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ol/core.hpp"
#include "ol/proofkit.hpp"

namespace ol {

/// The bounded sequent space searched by the prover: all sequents of size
/// <= 2 over side-annotated subformulas of the goal and axioms.
struct SearchSpace {
  std::vector<Sequent> relevant;
  std::unordered_map<std::uint64_t, std::size_t> index;  // Sequent::key -> dense id
  std::vector<FormulaId> axiom_formulas;
};

SearchSpace build_search_space(const Interner& in, const Problem& p);

enum class Verdict : std::uint8_t { Provable, NotProvable };

enum class Engine : std::uint8_t {
  Fixpoint,  // AND-OR least-fixpoint worklist (default)
  Backward,  // memoized backward search with cycle-aware negative caching
};

struct ProveStats {
  std::size_t visited = 0;  // distinct sequents expanded
  std::size_t edges = 0;    // premise links across all expanded rule instances
  std::uint64_t elapsed_micros = 0;
};

struct ProveResult {
  Verdict verdict = Verdict::NotProvable;
  ProofPtr proof;  // present iff verdict == Provable
  ProveStats stats;
};

/// One backward rule instance: premises that together justify a conclusion.
struct ParentInstance {
  Rule rule = Rule::Hyp;
  FormulaId cut_formula = kNoFormula;  // Cut only
  std::vector<Sequent> premises;
};

/// Enumerates every rule instance concluding s within the relevant space:
/// Hyp/Ax applicability, the two Weaken parents of a two-member sequent,
/// decompositions of each member (using the other member -- or, on a
/// singleton, the member itself -- as context), and two cut orientations per
/// axiom formula. At most 7 + 4|A| entries.
std::vector<ParentInstance> possible_parents(const Interner& in, const Sequent& s,
                                             const Problem& p);

/// Decides derivability of p.goal from p.axioms in the sequent calculus and
/// reconstructs a checkable proof on success. Requires a propositional,
/// bound-free problem: predicate atoms raise Error::NotGround, 0/1 constants
/// raise Error::NotPreprocessed.
ProveResult prove(Interner& in, const Problem& p, Engine engine = Engine::Fixpoint);

bool provable(Interner& in, const Problem& p, Engine engine = Engine::Fixpoint);

/// Least fixpoint of derivability over the full relevant space: exactly the
/// relevant sequents derivable from p.axioms.
std::vector<Sequent> provable_set(Interner& in, const Problem& p);

}  // namespace ol
