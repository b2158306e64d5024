#pragma once

// Random instance generators shared by the unit and acceptance tests.
// Everything is driven by a caller-provided std::mt19937 so failures are
// reproducible from the seed alone.

#include <random>
#include <string>
#include <vector>

#include "ol/core.hpp"
#include "ol/epr.hpp"

namespace gen {

inline std::vector<ol::FormulaId> var_pool(ol::Interner& in, int n) {
  std::vector<ol::FormulaId> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars.push_back(in.var("x" + std::to_string(i)));
  return vars;
}

inline ol::FormulaId random_formula(std::mt19937& rng, ol::Interner& in,
                                    const std::vector<ol::FormulaId>& vars,
                                    int depth, bool with_bounds = false) {
  std::uniform_int_distribution<int> pick(0, with_bounds ? 9 : 7);
  int k = depth <= 0 ? 0 : pick(rng);
  switch (k) {
    case 0:
    case 1:
    case 2: {
      std::uniform_int_distribution<std::size_t> pv(0, vars.size() - 1);
      return vars[pv(rng)];
    }
    case 3:
    case 4:
      return in.conj(random_formula(rng, in, vars, depth - 1, with_bounds),
                     random_formula(rng, in, vars, depth - 1, with_bounds));
    case 5:
    case 6:
      return in.disj(random_formula(rng, in, vars, depth - 1, with_bounds),
                     random_formula(rng, in, vars, depth - 1, with_bounds));
    case 7:
      return in.negation(random_formula(rng, in, vars, depth - 1, with_bounds));
    case 8:
      return in.zero();
    default:
      return in.one();
  }
}

inline ol::Sequent random_sequent(std::mt19937& rng, ol::Interner& in,
                                  const std::vector<ol::FormulaId>& vars,
                                  int depth, bool with_bounds = false) {
  std::uniform_int_distribution<int> nmem(1, 2);
  std::uniform_int_distribution<int> side(0, 1);
  ol::Sequent s(ol::Annot{random_formula(rng, in, vars, depth, with_bounds),
                          static_cast<ol::Side>(side(rng))});
  if (nmem(rng) == 2) {
    ol::Annot a{random_formula(rng, in, vars, depth, with_bounds),
                static_cast<ol::Side>(side(rng))};
    if (!s.contains(a)) s = s.with(a);
  }
  return s;
}

/// Random problem with n_axioms valid axiom sequents (non-empty, duplicate-free,
/// not of the trivial {f^L, f^R} shape) and a random goal.
inline ol::Problem random_problem(std::mt19937& rng, ol::Interner& in,
                                  const std::vector<ol::FormulaId>& vars,
                                  int n_axioms, int depth,
                                  bool with_bounds = false) {
  std::vector<ol::Sequent> axioms;
  std::vector<std::uint64_t> seen;
  while (static_cast<int>(axioms.size()) < n_axioms) {
    ol::Sequent s = random_sequent(rng, in, vars, depth, with_bounds);
    if (s.size() == 2 && s.member(0).formula == s.member(1).formula) continue;
    bool dup = false;
    for (std::uint64_t k : seen) dup = dup || k == s.key();
    if (dup) continue;
    seen.push_back(s.key());
    axioms.push_back(s);
  }
  return ol::Problem::make(std::move(axioms),
                           random_sequent(rng, in, vars, depth, with_bounds));
}

/// Random Datalog-style EPR problem: ground facts plus rules whose body is a
/// conjunction of one or two atoms over term variables, with a ground query.
struct DatalogInstance {
  ol::EprProblem problem;
  std::vector<std::string> constants;
};

inline DatalogInstance random_datalog(std::mt19937& rng, ol::Interner& in,
                                      int n_facts, int n_rules) {
  std::vector<std::string> preds = {"p", "q", "r"};
  std::vector<int> arity = {1, 2, 1};
  std::vector<std::string> consts = {"a", "b", "c"};
  std::uniform_int_distribution<std::size_t> pp(0, preds.size() - 1);
  std::uniform_int_distribution<std::size_t> pc(0, consts.size() - 1);

  auto ground_atom = [&](std::size_t pi) {
    std::vector<ol::TermArg> args;
    for (int i = 0; i < arity[pi]; ++i)
      args.push_back(ol::TermArg{false, consts[pc(rng)]});
    return in.atom(preds[pi], std::move(args));
  };
  auto rule_atom = [&](std::size_t pi, const std::vector<std::string>& tvars) {
    std::uniform_int_distribution<std::size_t> pv(0, tvars.size() - 1);
    std::uniform_int_distribution<int> ground(0, 3);
    std::vector<ol::TermArg> args;
    for (int i = 0; i < arity[pi]; ++i) {
      if (ground(rng) == 0)
        args.push_back(ol::TermArg{false, consts[pc(rng)]});
      else
        args.push_back(ol::TermArg{true, tvars[pv(rng)]});
    }
    return in.atom(preds[pi], std::move(args));
  };

  std::vector<ol::Sequent> axioms;
  std::vector<std::uint64_t> seen;
  auto push = [&](const ol::Sequent& s) {
    if (s.size() == 2 && s.member(0).formula == s.member(1).formula) return;
    for (std::uint64_t k : seen)
      if (k == s.key()) return;
    seen.push_back(s.key());
    axioms.push_back(s);
  };

  while (static_cast<int>(axioms.size()) < n_facts)
    push(ol::Sequent(ol::Annot{ground_atom(pp(rng)), ol::Side::R}));
  int target = n_facts + n_rules;
  std::uniform_int_distribution<int> nbody(1, 2);
  std::vector<std::string> tvars = {"X", "Y"};
  while (static_cast<int>(axioms.size()) < target) {
    ol::FormulaId body = rule_atom(pp(rng), tvars);
    if (nbody(rng) == 2) body = in.conj(body, rule_atom(pp(rng), tvars));
    ol::FormulaId head = rule_atom(pp(rng), tvars);
    push(ol::Sequent(ol::Annot{body, ol::Side::L}, ol::Annot{head, ol::Side::R}));
  }

  ol::EprProblem ep;
  for (std::size_t i = 0; i < preds.size(); ++i)
    ep.signature.predicates[preds[i]] = arity[i];
  for (const auto& c : consts) ep.signature.constants.insert(c);
  ep.axioms = std::move(axioms);
  ep.goal = ol::Sequent(ol::Annot{ground_atom(pp(rng)), ol::Side::R});
  return DatalogInstance{std::move(ep), std::move(consts)};
}

}  // namespace gen
