#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ol/core.hpp"

namespace ol {

/// Function-free predicate signature.
struct Signature {
  std::map<std::string, int> predicates;  // identifier -> arity
  std::set<std::string> constants;
};

/// Effectively propositional deduction problem: axioms and goal are sequents
/// whose formulas are built from predicate atoms. Term variables are
/// uppercase-initial, constants lowercase-initial (disjoint namespaces).
struct EprProblem {
  Signature signature;
  std::vector<Sequent> axioms;
  Sequent goal;
};

/// Number of distinct term variables in the sequent.
std::size_t degree(const Interner& in, const Sequent& s);

/// d(A): maximum degree over the axioms (0 when there are none).
std::size_t degree(const Interner& in, const EprProblem& p);

/// Idempotent substitution of term variables by variables or constants.
struct Substitution {
  std::map<std::string, TermArg> bindings;
};

TermArg apply(const Substitution& s, const TermArg& t);
FormulaId apply(Interner& in, const Substitution& s, FormulaId atom);

/// Most general unifier of two predicate atoms; nullopt on predicate/arity
/// mismatch or constant clash (failure, not an error).
std::optional<Substitution> mgu(const Interner& in, FormulaId a, FormulaId b);

/// Grounds the problem: each axiom is instantiated over every map from its
/// variables into the constants occurring in the problem plus the goal's
/// variables (treated as rigid fresh constants); a reserved constant is
/// injected when that pool would be empty. Each ground atom p(c1,...,ck)
/// becomes a propositional variable named by its printed form. Throws
/// Error::Signature on arity mismatch.
Problem ground(Interner& in, const EprProblem& p);

/// Number of ground axiom instances produced by ground(), before
/// deduplication: pool^degree summed per axiom.
std::size_t ground_instance_count(const Interner& in, const EprProblem& p);

/// Reflexivity, symmetry, transitivity of eq_pred plus one congruence sequent
/// per predicate and argument position. Throws Error::Signature unless
/// eq_pred is binary in s.
std::vector<Sequent> congruence_axioms(Interner& in, const Signature& s,
                                       const std::string& eq_pred);

/// Decides a ground query against a Horn-shaped program by grounding and
/// proving. Throws Error::Shape on a non-Horn axiom or non-ground query.
bool datalog_solve(Interner& in, const EprProblem& program, FormulaId query);

/// True iff every axiom is a fact {head^R} or a rule {(body1 & ... & bodyk)^L,
/// head^R} over atoms.
bool is_horn_program(const Interner& in, const EprProblem& p);

/// Printed form of an atom, e.g. "p(a,X)".
std::string atom_to_string(const Interner& in, FormulaId atom);

}  // namespace ol
