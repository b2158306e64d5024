#pragma once

#include <random>

#include "ol/core.hpp"
#include "ol/encoders.hpp"

namespace ol {

/// Axiom-free associativity family: left-associated versus right-associated
/// disjunction chains over n variables. Provable; backward search over the
/// chain's subformula pairs is quadratic in n.
Problem chain_problem(Interner& in, int n);

/// Random CNF instance. width literals per clause drawn without replacement;
/// horn forces at most one positive literal per clause.
CnfInstance random_cnf(std::mt19937& rng, int vars, int clauses, int width,
                       bool horn = false);

}  // namespace ol
