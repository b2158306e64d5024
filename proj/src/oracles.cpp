#include "ol/oracles.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_set>
#include <set>
#include <string>
#include <vector>

namespace ol {

namespace {

std::vector<FormulaId> problem_vars(const Interner& in, const Problem& p) {
  std::unordered_set<FormulaId> set;
  for (const Sequent& s : p.axioms)
    for (int i = 0; i < s.size(); ++i) collect_vars(in, s.member(i).formula, set);
  for (int i = 0; i < p.goal.size(); ++i) collect_vars(in, p.goal.member(i).formula, set);
  std::vector<FormulaId> vars(set.begin(), set.end());
  std::sort(vars.begin(), vars.end());
  return vars;
}

void require_no_atoms(const Interner& in, const Problem& p) {
  if (problem_contains_kind(in, p, Kind::Atom))
    throw Error(Error::Code::NotGround, "oracle requires a propositional problem");
}

OracleVerdict exhaustive_verdict(Interner& in, const Problem& p,
                                 const FiniteOrtholattice& l, std::size_t space_cap) {
  require_no_atoms(in, p);
  std::vector<FormulaId> vars = problem_vars(in, p);

  std::size_t space = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    space *= static_cast<std::size_t>(l.n);
    if (space > space_cap)
      throw Error(Error::Code::Cap, "oracle assignment space exceeds the cap");
  }

  Assignment a;
  std::vector<int> idx(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = idx[i];
    bool axioms_hold = true;
    for (const Sequent& ax : p.axioms)
      if (!sequent_holds(in, l, ax, a)) {
        axioms_hold = false;
        break;
      }
    if (axioms_hold && !sequent_holds(in, l, p.goal, a))
      return OracleVerdict{false, a};
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < l.n) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return OracleVerdict{true, std::nullopt};
}

}  // namespace

OracleVerdict classical_verdict(Interner& in, const Problem& p) {
  std::vector<FormulaId> vars = problem_vars(in, p);
  if (vars.size() > 20)
    throw Error(Error::Code::Cap, "classical oracle caps at 20 variables");
  return exhaustive_verdict(in, p, boolean_lattice(1), std::size_t{1} << 20);
}

OracleVerdict ortholattice_verdict(Interner& in, const Problem& p,
                                   const FiniteOrtholattice& l) {
  return exhaustive_verdict(in, p, l, std::size_t{1} << 20);
}

// ---- naive Datalog ----

namespace {

struct GroundAtom {
  std::string pred;
  std::vector<std::string> args;
  bool operator<(const GroundAtom& o) const {
    return std::tie(pred, args) < std::tie(o.pred, o.args);
  }
  bool operator==(const GroundAtom& o) const {
    return pred == o.pred && args == o.args;
  }
};

struct NaiveRule {
  GroundAtom head;                 // args may hold variable names
  std::vector<GroundAtom> body;    // same
};

void flatten_body(const Interner& in, FormulaId f, std::vector<GroundAtom>& out) {
  const FormulaNode& n = in.node(f);
  if (n.kind == Kind::And) {
    flatten_body(in, n.left, out);
    flatten_body(in, n.right, out);
    return;
  }
  if (n.kind != Kind::Atom)
    throw Error(Error::Code::Shape, "naive Datalog body must conjoin atoms");
  GroundAtom a{n.name, {}};
  for (const TermArg& t : n.args) a.args.push_back(t.name);
  out.push_back(a);
}

bool is_term_var(const std::string& name) {
  return !name.empty() && (std::isupper(static_cast<unsigned char>(name[0])) != 0);
}

}  // namespace

bool datalog_naive(const Interner& in, const EprProblem& program, FormulaId query) {
  std::vector<NaiveRule> rules;
  std::set<std::string> constants;
  auto scan_atom = [&](const GroundAtom& a) {
    for (const std::string& arg : a.args)
      if (!is_term_var(arg)) constants.insert(arg);
  };

  for (const Sequent& ax : program.axioms) {
    NaiveRule r;
    if (ax.size() == 1) {
      Annot h = ax.member(0);
      if (h.side != Side::R) throw Error(Error::Code::Shape, "fact must be right-annotated");
      std::vector<GroundAtom> head;
      flatten_body(in, h.formula, head);
      if (head.size() != 1) throw Error(Error::Code::Shape, "fact must be a single atom");
      r.head = head[0];
    } else if (ax.size() == 2) {
      Annot a = ax.member(0), b = ax.member(1);
      Annot body = a.side == Side::L ? a : b;
      Annot head = a.side == Side::L ? b : a;
      if (body.side != Side::L || head.side != Side::R)
        throw Error(Error::Code::Shape, "rule must pair a left body with a right head");
      std::vector<GroundAtom> h;
      flatten_body(in, head.formula, h);
      if (h.size() != 1) throw Error(Error::Code::Shape, "rule head must be a single atom");
      r.head = h[0];
      flatten_body(in, body.formula, r.body);
    } else {
      throw Error(Error::Code::Shape, "empty axiom in Datalog program");
    }
    rules.push_back(r);
    scan_atom(r.head);
    for (const GroundAtom& a : r.body) scan_atom(a);
  }

  const FormulaNode& qn = in.node(query);
  if (qn.kind != Kind::Atom)
    throw Error(Error::Code::Shape, "naive Datalog query must be an atom");
  GroundAtom goal{qn.name, {}};
  for (const TermArg& t : qn.args) {
    if (t.is_var) throw Error(Error::Code::Shape, "naive Datalog query must be ground");
    goal.args.push_back(t.name);
    constants.insert(t.name);
  }
  if (constants.empty()) constants.insert("$c");

  std::vector<std::string> pool(constants.begin(), constants.end());
  std::set<GroundAtom> model;

  auto instantiate = [](const GroundAtom& a,
                        const std::map<std::string, std::string>& env) {
    GroundAtom g = a;
    for (std::string& arg : g.args) {
      auto it = env.find(arg);
      if (it != env.end()) arg = it->second;
    }
    return g;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const NaiveRule& r : rules) {
      std::set<std::string> vars;
      auto take = [&](const GroundAtom& a) {
        for (const std::string& arg : a.args)
          if (is_term_var(arg)) vars.insert(arg);
      };
      take(r.head);
      for (const GroundAtom& a : r.body) take(a);
      std::vector<std::string> vlist(vars.begin(), vars.end());

      std::vector<std::size_t> idx(vlist.size(), 0);
      while (true) {
        std::map<std::string, std::string> env;
        for (std::size_t i = 0; i < vlist.size(); ++i) env[vlist[i]] = pool[idx[i]];
        bool body_holds = true;
        for (const GroundAtom& a : r.body)
          if (!model.count(instantiate(a, env))) {
            body_holds = false;
            break;
          }
        if (body_holds && model.insert(instantiate(r.head, env)).second) changed = true;
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < pool.size()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) break;
      }
    }
  }
  return model.count(goal) != 0;
}

}  // namespace ol
