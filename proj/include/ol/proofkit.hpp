#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ol/core.hpp"

namespace ol {

enum class Rule : std::uint8_t {
  Hyp,
  Ax,
  Cut,
  Weaken,
  LeftAnd,
  RightAnd,
  LeftOr,
  RightOr,
  LeftNot,
  RightNot,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
int rule_arity(Rule r);

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

/// One node of a rule-tagged derivation tree. Subproofs may be shared.
struct Proof {
  Sequent conclusion;
  Rule rule = Rule::Hyp;
  FormulaId cut_formula = kNoFormula;  // Cut only
  std::vector<ProofPtr> premises;

  static ProofPtr make(Sequent conclusion, Rule rule, std::vector<ProofPtr> premises = {},
                       FormulaId cut_formula = kNoFormula);
};

std::size_t proof_node_count(const ProofPtr& p);

struct CheckReport {
  bool ok = true;
  std::string path;   // e.g. "root.premise[1].premise[0]"
  std::string error;  // first violated schema
};

/// Validates every node against its rule schema (plus Ax membership).
bool check_proof(const Interner& in, const ProofPtr& p, const std::vector<Sequent>& axioms,
                 CheckReport* report = nullptr);

/// Rank of a Cut node: 1 if a premise is an Ax node, 2 if a premise concludes
/// a rank-1 Cut, 3 meaning "3 or more" otherwise. Non-Cut nodes are an error.
int cut_rank(const ProofPtr& p);

/// Rewrites the proof until every Cut has its cut formula among the axiom
/// formulas and rank at most 2. Preserves the conclusion. Throws
/// Error::Resource past the node-construction cap.
ProofPtr eliminate_cuts(const Interner& in, const ProofPtr& p,
                        const std::vector<Sequent>& axioms,
                        std::size_t node_cap = 1000000);

/// True iff every formula in every conclusion of the proof is a subformula of
/// the goal or of an axiom of p.
bool audit_subformula(const Interner& in, const ProofPtr& pr, const Problem& p);

/// Sampling check of the Subst rule: when phi and psi are provably equivalent
/// under p.axioms, substituting psi for phi preserves provability on sampled
/// provable sequents. Vacuously true when the equivalence is not provable.
bool admissible_substitution_check(Interner& in, const Problem& p, FormulaId phi,
                                   FormulaId psi, unsigned seed = 1, int samples = 24);

/// Formulas appearing as members of axiom sequents (deduplicated, in axiom
/// order). These are the only legal cut formulas after eliminate_cuts.
std::vector<FormulaId> axiom_formulas(const std::vector<Sequent>& axioms);

}  // namespace ol
