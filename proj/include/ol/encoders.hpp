#pragma once

#include <map>
#include <optional>
#include <set>

#include "ol/core.hpp"
#include "ol/preprocess.hpp"

namespace ol {

/// Clause over 1-based variable indices; the map guarantees no variable
/// occurs with both polarities (true = positive literal).
struct Clause {
  std::map<int, bool> literals;
};

struct CnfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

/// Name of the propositional variable standing for DIMACS index i.
std::string cnf_var_name(int index);

/// Encodes a clause as a sequent: negative literals conjoined (right fold,
/// ascending index) on the left, positive literals disjoined on the right;
/// an empty side is omitted and the empty clause maps to the empty sequent.
Sequent encode_clause(Interner& in, const Clause& c);

/// One axiom per clause, goal = empty sequent; the problem is Provable iff
/// the instance is unsatisfiable whenever it falls in an OL-solvable class.
Problem encode_instance(Interner& in, const CnfInstance& i);

struct Classification {
  bool two_cnf = false;
  bool horn = false;
  bool renamed_horn = false;
  bool general = false;
  /// Variable indices to complement, present iff renamed_horn.
  std::optional<std::set<int>> rename_witness;
};

/// Structural class membership; renamability is decided by the standard 2SAT
/// reduction and comes with a witness rename set.
Classification classify(const CnfInstance& i);

/// The witness as a RenameSet over the encoded problem's variables.
RenameSet rename_set_for(Interner& in, const std::set<int>& witness);

}  // namespace ol
