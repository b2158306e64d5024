// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and workload sizes are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gen.hpp"
#include "ol/core.hpp"
#include "ol/encoders.hpp"
#include "ol/epr.hpp"
#include "ol/families.hpp"
#include "ol/io.hpp"
#include "ol/oracles.hpp"
#include "ol/preprocess.hpp"
#include "ol/proofkit.hpp"
#include "ol/prover.hpp"

using namespace ol;

namespace {

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t problem_norm(const Interner& in, const Problem& p) {
  return subformula_count(in, p.goal) + subformula_count(in, p.axioms);
}

// Shared complexity/subformula bookkeeping across the sweeps.
bool g_visited_bound_ok = true;
bool g_subformula_ok = true;

ProveResult checked_prove(Interner& in, const Problem& p,
                          Engine engine = Engine::Fixpoint) {
  ProveResult r = prove(in, p, engine);
  std::size_t norm = problem_norm(in, p);
  if (r.stats.visited > 4 * norm * norm) g_visited_bound_ok = false;
  if (r.verdict == Verdict::Provable && !audit_subformula(in, r.proof, p))
    g_subformula_ok = false;
  return r;
}

// ---- criterion 1: soundness sweep -----------------------------------------

void soundness_sweep() {
  auto t0 = std::chrono::steady_clock::now();
  Interner in;
  std::mt19937 rng(1001);
  auto vars = gen::var_pool(in, 4);
  const auto lattices = {o6(), m4(), boolean_lattice(1)};
  int violations = 0, provable_count = 0;
  for (int t = 0; t < 1000; ++t) {
    Problem p = gen::random_problem(rng, in, vars, 1 + t % 3, 4);
    ProveResult r = checked_prove(in, p);
    if (r.verdict != Verdict::Provable) continue;
    ++provable_count;
    for (const auto& l : lattices)
      if (!ortholattice_verdict(in, p, l).holds) ++violations;
  }
  double secs = seconds_since(t0);
  report("soundness-sweep", violations == 0 && provable_count > 0 && secs < 60.0,
         std::to_string(provable_count) + " provable of 1000, " +
             std::to_string(violations) + " violations, " +
             std::to_string(secs).substr(0, 5) + "s (limit 60s)");
}

// ---- criteria 2-3: 2SAT / Horn / renamed-Horn completeness ----------------

bool cnf_unsat_classical(Interner& in, const CnfInstance& inst) {
  return classical_verdict(in, encode_instance(in, inst)).holds;
}

CnfInstance flip_polarity(const CnfInstance& inst, const std::set<int>& vars) {
  CnfInstance out;
  out.num_vars = inst.num_vars;
  for (const Clause& c : inst.clauses) {
    Clause fc;
    for (auto [v, pol] : c.literals)
      fc.literals[v] = vars.count(v) ? !pol : pol;
    out.clauses.push_back(fc);
  }
  return out;
}

void twosat_completeness() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(1002);
  int mismatches = 0, unsat_count = 0;
  for (int t = 0; t < 2000; ++t) {
    Interner in;
    std::uniform_int_distribution<int> nv(2, 12);
    int vars = nv(rng);
    std::uniform_int_distribution<int> nc(1, 3 * vars);
    CnfInstance inst = random_cnf(rng, vars, nc(rng), 2);
    bool unsat = cnf_unsat_classical(in, inst);
    unsat_count += unsat ? 1 : 0;
    ProveResult r = checked_prove(in, encode_instance(in, inst));
    if ((r.verdict == Verdict::Provable) != unsat) ++mismatches;
  }
  double secs = seconds_since(t0);
  report("2sat-completeness", mismatches == 0 && unsat_count > 0 && secs < 120.0,
         std::to_string(unsat_count) + " unsat of 2000, " +
             std::to_string(mismatches) + " mismatches, " +
             std::to_string(secs).substr(0, 5) + "s (limit 120s)");
}

void horn_completeness() {
  std::mt19937 rng(1003);
  int mismatches = 0, unsat_count = 0, renamed_checked = 0;
  for (int t = 0; t < 600; ++t) {
    Interner in;
    std::uniform_int_distribution<int> nv(2, 12), nc(1, 30), width(1, 3);
    CnfInstance inst = random_cnf(rng, nv(rng), nc(rng), width(rng), /*horn=*/true);
    bool unsat = cnf_unsat_classical(in, inst);
    unsat_count += unsat ? 1 : 0;
    ProveResult r = checked_prove(in, encode_instance(in, inst));
    if ((r.verdict == Verdict::Provable) != unsat) ++mismatches;
    // randomized renaming of the same instance stays decidable
    std::set<int> flips;
    for (int v = 1; v <= inst.num_vars; ++v)
      if (rng() % 2) flips.insert(v);
    CnfInstance renamed = flip_polarity(inst, flips);
    if (!classify(renamed).renamed_horn) continue;
    ++renamed_checked;
    bool runsat = cnf_unsat_classical(in, renamed);
    ProveResult rr = checked_prove(in, encode_instance(in, renamed));
    if ((rr.verdict == Verdict::Provable) != runsat) ++mismatches;
  }
  report("horn-completeness",
         mismatches == 0 && unsat_count > 0 && renamed_checked > 0,
         std::to_string(unsat_count) + " unsat of 600, " +
             std::to_string(renamed_checked) + " renamed variants, " +
             std::to_string(mismatches) + " mismatches");
}

// ---- criterion 4: worked examples --------------------------------------------

void paper_examples() {
  Interner in;
  bool ok = true;
  std::string detail;
  // x & (~x | u) |- u: provable with the axiom, not as a bare sequent
  Problem with_axiom = std::get<Problem>(
      parse_problem(in, "axiom |- x & (~x | u)\ngoal |- u\n"));
  ok = ok && provable(in, with_axiom);
  FormulaId lhs =
      in.conj(in.var("x"), in.disj(in.negation(in.var("x")), in.var("u")));
  Problem bare = Problem::make(
      {}, Sequent(Annot{lhs, Side::L}, Annot{in.var("u"), Side::R}));
  ok = ok && !provable(in, bare);
  // cut through x1 | x2
  Problem cut_example =
      std::get<Problem>(parse_problem(in, "axiom x1 | x2 |- y\ngoal x1 |- y\n"));
  ProveResult r = prove(in, cut_example);
  ok = ok && r.verdict == Verdict::Provable;
  FormulaId cutf = in.disj(in.var("x1"), in.var("x2"));
  bool saw_cut = false;
  if (r.proof) {
    std::vector<ProofPtr> stack{r.proof};
    while (!stack.empty()) {
      ProofPtr n = stack.back();
      stack.pop_back();
      if (n->rule == Rule::Cut && n->cut_formula == cutf) saw_cut = true;
      for (const auto& q : n->premises) stack.push_back(q);
    }
  }
  ok = ok && saw_cut;
  // O6 countermodel x -> b, u -> a
  const auto l = o6();
  Assignment a{{in.var("x"), 2}, {in.var("u"), 1}};
  ok = ok && eval(in, l, lhs, a) == 2 && !l.leq_at(2, 1) &&
       !sequent_holds(in, l, bare.goal, a);
  report("worked-examples", ok);
}

// ---- criterion 5: cut elimination -------------------------------------------

// Proof of {(w | ~w)^R} from no axioms, used as the left premise of an
// injected cut on the non-axiom formula w | ~w.
ProofPtr excluded_middle_proof(Interner& in, FormulaId w) {
  FormulaId nw = in.negation(w);
  FormulaId f = in.disj(w, nw);
  Annot fr{f, Side::R};
  ProofPtr hyp = Proof::make(Sequent(Annot{w, Side::L}, Annot{w, Side::R}), Rule::Hyp);
  ProofPtr rn = Proof::make(Sequent(Annot{w, Side::R}, Annot{nw, Side::R}),
                            Rule::RightNot, {hyp});
  ProofPtr or2 = Proof::make(Sequent(Annot{w, Side::R}, fr), Rule::RightOr, {rn});
  return Proof::make(Sequent(fr), Rule::RightOr, {or2});
}

void cut_elimination() {
  Interner in;
  std::mt19937 rng(1005);
  auto vars = gen::var_pool(in, 3);
  FormulaId w = in.var("w");  // outside the generator pool
  FormulaId f = in.disj(w, in.negation(w));
  ProofPtr lemma = excluded_middle_proof(in, w);
  int injected = 0, violations = 0;
  bool cap_hit = false;
  while (injected < 500) {
    Problem p = gen::random_problem(rng, in, vars, 1 + injected % 3, 3);
    if (p.goal.size() > 1) continue;  // keep room for the injected cut member
    ProveResult r = prove(in, p);
    if (r.verdict != Verdict::Provable) continue;
    // Cut: from {f^R} and {f^L} u goal, conclude goal (with f not an axiom
    // formula, so elimination has real work to do).
    ProofPtr weakened =
        Proof::make(p.goal.with(Annot{f, Side::L}), Rule::Weaken, {r.proof});
    ProofPtr with_cut =
        Proof::make(p.goal, Rule::Cut, {lemma, weakened}, f);
    if (!check_proof(in, with_cut, p.axioms)) {
      ++violations;
      continue;
    }
    ++injected;
    ProofPtr norm;
    try {
      norm = eliminate_cuts(in, with_cut, p.axioms);
    } catch (const Error&) {
      cap_hit = true;
      ++violations;
      continue;
    }
    if (!norm || norm->conclusion != p.goal || !check_proof(in, norm, p.axioms)) {
      ++violations;
      continue;
    }
    auto legal = axiom_formulas(p.axioms);
    std::vector<ProofPtr> stack{norm};
    std::set<const Proof*> seen;
    while (!stack.empty()) {
      ProofPtr n = stack.back();
      stack.pop_back();
      if (!seen.insert(n.get()).second) continue;
      if (n->rule == Rule::Cut) {
        bool among = false;
        for (FormulaId g : legal) among = among || g == n->cut_formula;
        if (!among || cut_rank(n) > 2) ++violations;
      }
      for (const auto& q : n->premises) stack.push_back(q);
    }
  }
  report("cut-elimination",
         violations == 0 && !cap_hit,
         "500 injected cuts, " + std::to_string(violations) +
             " violations, node cap hit: " + (cap_hit ? "yes" : "no"));
}

// ---- criterion 7: complexity envelopes --------------------------------------

void complexity_envelopes() {
  // parent-count bound over random relevant sequents
  Interner in;
  std::mt19937 rng(1007);
  auto vars = gen::var_pool(in, 3);
  bool parents_ok = true;
  for (int t = 0; t < 200; ++t) {
    Problem p = gen::random_problem(rng, in, vars, 1 + t % 3, 3);
    std::size_t bound = 7 + 4 * p.axioms.size();
    for (const Sequent& s : build_search_space(in, p).relevant)
      if (possible_parents(in, s, p).size() > bound) parents_ok = false;
  }
  // chain-family scaling: least-squares slope of log time vs log n
  std::vector<double> xs, ys;
  std::string points;
  for (int n = 64; n <= 2048; n *= 2) {
    Interner cin;
    Problem p = chain_problem(cin, n);
    ProveResult r = checked_prove(cin, p);
    if (r.verdict != Verdict::Provable) parents_ok = false;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(r.stats.elapsed_micros)));
    points += std::to_string(n) + ":" + std::to_string(r.stats.elapsed_micros) + "us ";
  }
  double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double kSlopeMin = 1.6, kSlopeMax = 2.6;
  bool slope_ok = slope >= kSlopeMin && slope <= kSlopeMax;
  report("complexity-envelopes",
         parents_ok && slope_ok && g_visited_bound_ok,
         "scaling exponent " + std::to_string(slope).substr(0, 5) +
             " in [1.6, 2.6]; " + points +
             (g_visited_bound_ok ? "; visited bound held on all runs"
                                 : "; visited bound violated"));
}

// ---- criterion 8: axiom merging ---------------------------------------------

void merge_equivalence() {
  Interner in;
  std::mt19937 rng(1008);
  auto vars = gen::var_pool(in, 3);
  int violations = 0;
  for (int t = 0; t < 300; ++t) {
    Problem p = gen::random_problem(rng, in, vars, 2 + t % 2, 2);
    auto merged = merge_axioms(in, p.axioms);
    if (provable(in, p) != provable(in, Problem::make(merged, p.goal)))
      ++violations;
    if (merge_measure(in, merged) > merge_measure(in, p.axioms)) ++violations;
    // pairwise distinct sides in the inequality view
    for (std::size_t i = 0; i < merged.size(); ++i) {
      Inequality a = interpret(in, merged[i]);
      for (std::size_t j = i + 1; j < merged.size(); ++j) {
        Inequality b = interpret(in, merged[j]);
        if (a.lhs == b.lhs || a.rhs == b.rhs) ++violations;
      }
    }
  }
  // singleton-only axiom sets merge to one axiom
  bool singleton_ok = true;
  for (int t = 0; t < 50; ++t) {
    std::vector<Sequent> axs;
    std::vector<std::uint64_t> seen;
    std::uniform_int_distribution<std::size_t> pv(0, vars.size() - 1);
    while (axs.size() < 3) {
      Sequent s(Annot{vars[pv(rng)], static_cast<Side>(rng() % 2)});
      bool dup = false;
      for (auto k : seen) dup = dup || k == s.key();
      if (dup) continue;
      seen.push_back(s.key());
      axs.push_back(s);
    }
    if (merge_axioms(in, axs).size() != 1) singleton_ok = false;
  }
  report("merge-equivalence", violations == 0 && singleton_ok,
         "300 problems, " + std::to_string(violations) + " violations");
}

// ---- criterion 9: tseitin invariance ----------------------------------------

void tseitin_invariance() {
  Interner in;
  std::mt19937 rng(1009);
  auto vars = gen::var_pool(in, 3);
  int violations = 0;
  for (int t = 0; t < 300; ++t) {
    Problem p = gen::random_problem(rng, in, vars, 1 + t % 2, 3);
    TseitinResult ts = tseitin(in, p);
    if (!is_tseitin_normal(in, ts.problem)) ++violations;
    if (provable(in, p) != provable(in, ts.problem)) ++violations;
  }
  report("tseitin-invariance", violations == 0,
         "300 problems, " + std::to_string(violations) + " violations");
}

// ---- criterion 10: datalog agreement ----------------------------------------

void datalog_agreement() {
  std::mt19937 rng(1010);
  int violations = 0, positive = 0;
  for (int t = 0; t < 300; ++t) {
    Interner in;
    std::uniform_int_distribution<int> nf(1, 4), nr(1, 6);
    gen::DatalogInstance d = gen::random_datalog(rng, in, nf(rng), nr(rng));
    if (ground(in, d.problem).axioms.size() >
        ground_instance_count(in, d.problem))
      ++violations;  // grounded axiom count exceeds the instance bound
    std::uniform_int_distribution<std::size_t> pc(0, d.constants.size() - 1);
    for (int q = 0; q < 10; ++q) {
      FormulaId query =
          q % 2 == 0
              ? in.atom("p", {{false, d.constants[pc(rng)]}})
              : in.atom("q", {{false, d.constants[pc(rng)]},
                              {false, d.constants[pc(rng)]}});
      bool solved = datalog_solve(in, d.problem, query);
      bool naive = datalog_naive(in, d.problem, query);
      if (solved != naive) ++violations;
      positive += solved ? 1 : 0;
    }
  }
  report("datalog-agreement", violations == 0 && positive > 0,
         "300 programs x 10 queries, " + std::to_string(positive) +
             " positive, " + std::to_string(violations) + " disagreements");
}

// ---- criterion 11: congruence / substitution --------------------------------

void congruence_substitution() {
  std::mt19937 rng(1011);
  int violations = 0, transported = 0;
  Signature sig;
  sig.predicates = {{"p", 1}, {"q", 2}, {"eq", 2}};
  sig.constants = {"a", "b", "c"};
  std::vector<std::string> consts = {"a", "b", "c"};
  for (int t = 0; t < 100; ++t) {
    Interner in;
    EprProblem ep;
    ep.signature = sig;
    ep.axioms = congruence_axioms(in, sig, "eq");
    // identified pair s ~ t plus random facts mentioning s
    std::string s = consts[rng() % 3];
    std::string tt = consts[rng() % 3];
    ep.axioms.push_back(
        Sequent(Annot{in.atom("eq", {{false, s}, {false, tt}}), Side::R}));
    std::vector<std::uint64_t> seen;
    for (const auto& ax : ep.axioms) seen.push_back(ax.key());
    auto push = [&](const Sequent& sq) {
      for (auto k : seen)
        if (k == sq.key()) return;
      seen.push_back(sq.key());
      ep.axioms.push_back(sq);
    };
    int nfacts = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nfacts; ++i) {
      if (rng() % 2)
        push(Sequent(Annot{in.atom("p", {{false, s}}), Side::R}));
      else
        push(Sequent(
            Annot{in.atom("q", {{false, s}, {false, consts[rng() % 3]}}),
                  Side::R}));
    }
    // goal mentioning s; then the same goal with s replaced by t
    bool unary = rng() % 2 == 0;
    std::string other = consts[rng() % 3];
    FormulaId goal_s = unary ? in.atom("p", {{false, s}})
                             : in.atom("q", {{false, s}, {false, other}});
    FormulaId goal_t = unary ? in.atom("p", {{false, tt}})
                             : in.atom("q", {{false, tt}, {false, other}});
    ep.goal = Sequent(Annot{goal_s, Side::R});
    bool before = provable(in, ground(in, ep));
    ep.goal = Sequent(Annot{goal_t, Side::R});
    bool after = provable(in, ground(in, ep));
    if (before) {
      ++transported;
      if (!after) ++violations;
    }
  }
  report("congruence-substitution", violations == 0 && transported > 0,
         std::to_string(transported) + " transported goals of 100, " +
             std::to_string(violations) + " violations");
}

}  // namespace

int main() {
  soundness_sweep();
  twosat_completeness();
  horn_completeness();
  paper_examples();
  cut_elimination();
  complexity_envelopes();
  merge_equivalence();
  tseitin_invariance();
  datalog_agreement();
  congruence_substitution();
  report("subformula-property", g_subformula_ok,
         "audited every proof emitted across the suites above");
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
