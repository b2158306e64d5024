#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ol/core.hpp"
#include "ol/encoders.hpp"
#include "ol/epr.hpp"
#include "ol/proofkit.hpp"

namespace ol {

/// A parsed problem document: propositional when no predicate atom occurs,
/// EPR otherwise (with the signature reconstructed from atom occurrences).
using ParsedProblem = std::variant<Problem, EprProblem>;

/// Parses a problem document (see docs/formats.md). Diagnostics carry
/// line/column positions. Identifiers in the reserved "$" namespace are
/// rejected unless allow_reserved is set (used when re-reading our own
/// preprocessed output).
ParsedProblem parse_problem(Interner& in, std::string_view text,
                            bool allow_reserved = false);

/// Convenience accessors over ParsedProblem.
bool is_epr(const ParsedProblem& p);

std::string print_problem(const Interner& in, const Problem& p);
std::string print_problem(const Interner& in, const EprProblem& p);

std::string formula_to_string(const Interner& in, FormulaId f);
std::string sequent_to_string(const Interner& in, const Sequent& s);

/// Parses a single formula (atoms allowed), for CLI flags like --query.
FormulaId parse_formula(Interner& in, std::string_view text,
                        bool allow_reserved = false);

/// DIMACS CNF. Tautological clauses are dropped with a warning appended to
/// *warnings; header/count mismatches and out-of-range indices are errors.
CnfInstance parse_dimacs(std::string_view text,
                         std::vector<std::string>* warnings = nullptr);

/// Line-oriented proof records "idx rule[{cutformula}] [lhs |- rhs]
/// premise-indices...", one per node, root last; premises refer to earlier
/// records (DAG sharing allowed).
std::string emit_proof(const Interner& in, const ProofPtr& p);
ProofPtr parse_proof(Interner& in, std::string_view text);

}  // namespace ol
