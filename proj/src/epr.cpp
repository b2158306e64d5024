#include "ol/epr.hpp"

#include "ol/prover.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace ol {

namespace {

void walk_atoms(const Interner& in, FormulaId f,
                const std::function<void(FormulaId)>& fn) {
  const FormulaNode& n = in.node(f);
  switch (n.kind) {
    case Kind::Atom: fn(f); break;
    case Kind::Not: walk_atoms(in, n.left, fn); break;
    case Kind::And:
    case Kind::Or:
      walk_atoms(in, n.left, fn);
      walk_atoms(in, n.right, fn);
      break;
    default: break;
  }
}

void collect_term_vars(const Interner& in, const Sequent& s,
                       std::vector<std::string>& out) {
  for (int i = 0; i < s.size(); ++i)
    walk_atoms(in, s.member(i).formula, [&](FormulaId a) {
      for (const TermArg& t : in.node(a).args)
        if (t.is_var && std::find(out.begin(), out.end(), t.name) == out.end())
          out.push_back(t.name);
    });
}

void check_arities(const Interner& in, const Signature& sig, const Sequent& s) {
  for (int i = 0; i < s.size(); ++i)
    walk_atoms(in, s.member(i).formula, [&](FormulaId a) {
      const FormulaNode& n = in.node(a);
      auto it = sig.predicates.find(n.name);
      if (it == sig.predicates.end())
        throw Error(Error::Code::Signature, "unknown predicate: " + n.name);
      if (it->second != static_cast<int>(n.args.size()))
        throw Error(Error::Code::Signature,
                    "arity mismatch for " + n.name + ": expected " +
                        std::to_string(it->second) + ", got " +
                        std::to_string(n.args.size()));
    });
}

/// Constants occurring in the axioms and goal, plus goal variables as rigid
/// constants; the reserved constant when the pool would otherwise be empty.
std::vector<TermArg> grounding_pool(const Interner& in, const EprProblem& p) {
  std::vector<TermArg> pool;
  auto push = [&](const TermArg& t) {
    if (std::find(pool.begin(), pool.end(), t) == pool.end()) pool.push_back(t);
  };
  auto scan = [&](const Sequent& s, bool take_vars) {
    for (int i = 0; i < s.size(); ++i)
      walk_atoms(in, s.member(i).formula, [&](FormulaId a) {
        for (const TermArg& t : in.node(a).args)
          if (!t.is_var || take_vars) push(t);
      });
  };
  for (const Sequent& a : p.axioms) scan(a, false);
  scan(p.goal, true);
  if (pool.empty()) pool.push_back(TermArg{false, "$c"});
  return pool;
}

FormulaId propositionalize(Interner& in, FormulaId f, const Substitution& sub) {
  const FormulaNode& n = in.node(f);
  switch (n.kind) {
    case Kind::Atom: return in.var(atom_to_string(in, apply(in, sub, f)));
    case Kind::Not: return in.negation(propositionalize(in, n.left, sub));
    case Kind::And:
      return in.conj(propositionalize(in, n.left, sub),
                     propositionalize(in, n.right, sub));
    case Kind::Or:
      return in.disj(propositionalize(in, n.left, sub),
                     propositionalize(in, n.right, sub));
    default: return f;
  }
}

Sequent propositionalize(Interner& in, const Sequent& s, const Substitution& sub) {
  Sequent t;
  for (int i = 0; i < s.size(); ++i) {
    Annot a = s.member(i);
    t = t.with(Annot{propositionalize(in, a.formula, sub), a.side});
  }
  return t;
}

}  // namespace

std::size_t degree(const Interner& in, const Sequent& s) {
  std::vector<std::string> vars;
  collect_term_vars(in, s, vars);
  return vars.size();
}

std::size_t degree(const Interner& in, const EprProblem& p) {
  std::size_t d = 0;
  for (const Sequent& a : p.axioms) d = std::max(d, degree(in, a));
  return d;
}

TermArg apply(const Substitution& s, const TermArg& t) {
  if (!t.is_var) return t;
  auto it = s.bindings.find(t.name);
  return it == s.bindings.end() ? t : it->second;
}

FormulaId apply(Interner& in, const Substitution& s, FormulaId atom) {
  const FormulaNode& n = in.node(atom);
  std::vector<TermArg> args;
  args.reserve(n.args.size());
  for (const TermArg& t : n.args) args.push_back(apply(s, t));
  return in.atom(n.name, std::move(args));
}

std::optional<Substitution> mgu(const Interner& in, FormulaId a, FormulaId b) {
  const FormulaNode& na = in.node(a);
  const FormulaNode& nb = in.node(b);
  if (na.kind != Kind::Atom || nb.kind != Kind::Atom)
    throw Error(Error::Code::Argument, "mgu expects predicate atoms");
  if (na.name != nb.name || na.args.size() != nb.args.size()) return std::nullopt;

  std::map<std::string, TermArg> bind;
  auto resolve = [&](TermArg t) {
    while (t.is_var) {
      auto it = bind.find(t.name);
      if (it == bind.end()) break;
      t = it->second;
    }
    return t;
  };
  for (std::size_t i = 0; i < na.args.size(); ++i) {
    TermArg x = resolve(na.args[i]);
    TermArg y = resolve(nb.args[i]);
    if (x == y) continue;
    if (x.is_var)
      bind[x.name] = y;
    else if (y.is_var)
      bind[y.name] = x;
    else
      return std::nullopt;  // constant clash
  }
  Substitution out;
  for (const auto& [name, target] : bind) out.bindings[name] = resolve(target);
  return out;
}

Problem ground(Interner& in, const EprProblem& p) {
  for (const Sequent& a : p.axioms) check_arities(in, p.signature, a);
  check_arities(in, p.signature, p.goal);

  std::vector<TermArg> pool = grounding_pool(in, p);
  std::vector<Sequent> axioms;
  std::unordered_set<std::uint64_t> seen;

  for (const Sequent& ax : p.axioms) {
    std::vector<std::string> vars;
    collect_term_vars(in, ax, vars);
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      Substitution sub;
      for (std::size_t i = 0; i < vars.size(); ++i) sub.bindings[vars[i]] = pool[idx[i]];
      Sequent g = propositionalize(in, ax, sub);
      bool trivial = g.size() == 2 && g.member(0).formula == g.member(1).formula;
      if (!trivial && seen.insert(g.key()).second) axioms.push_back(g);
      // next tuple (odometer); empty idx means the single empty substitution
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < pool.size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }

  Sequent goal = propositionalize(in, p.goal, Substitution{});
  return Problem::make(std::move(axioms), goal);
}

std::size_t ground_instance_count(const Interner& in, const EprProblem& p) {
  std::size_t pool = grounding_pool(in, p).size();
  std::size_t total = 0;
  for (const Sequent& ax : p.axioms) {
    std::size_t d = degree(in, ax);
    std::size_t instances = 1;
    for (std::size_t i = 0; i < d; ++i) instances *= pool;
    total += instances;
  }
  return total;
}

std::vector<Sequent> congruence_axioms(Interner& in, const Signature& s,
                                       const std::string& eq_pred) {
  auto it = s.predicates.find(eq_pred);
  if (it == s.predicates.end() || it->second != 2)
    throw Error(Error::Code::Signature,
                "congruence axioms need a binary predicate, got: " + eq_pred);

  TermArg X{true, "X"}, Y{true, "Y"}, Z{true, "Z"};
  auto eq = [&](TermArg a, TermArg b) { return in.atom(eq_pred, {a, b}); };

  std::vector<Sequent> out;
  out.push_back(Sequent(Annot{eq(X, X), Side::R}));
  out.push_back(Sequent(Annot{eq(X, Y), Side::L}, Annot{eq(Y, X), Side::R}));
  out.push_back(Sequent(Annot{in.conj(eq(X, Y), eq(Y, Z)), Side::L},
                        Annot{eq(X, Z), Side::R}));

  for (const auto& [pred, arity] : s.predicates) {
    if (pred == eq_pred) continue;
    for (int j = 0; j < arity; ++j) {
      std::vector<TermArg> lhs_args, rhs_args;
      for (int k = 0; k < arity; ++k) {
        if (k == j) {
          lhs_args.push_back(X);
          rhs_args.push_back(Y);
        } else {
          TermArg z{true, "Z" + std::to_string(k + 1)};
          lhs_args.push_back(z);
          rhs_args.push_back(z);
        }
      }
      out.push_back(
          Sequent(Annot{in.conj(eq(X, Y), in.atom(pred, std::move(lhs_args))), Side::L},
                  Annot{in.atom(pred, std::move(rhs_args)), Side::R}));
    }
  }
  return out;
}

bool is_horn_program(const Interner& in, const EprProblem& p) {
  std::function<bool(FormulaId)> is_body = [&](FormulaId f) {
    const FormulaNode& n = in.node(f);
    if (n.kind == Kind::Atom) return true;
    if (n.kind == Kind::And) return is_body(n.left) && is_body(n.right);
    return false;
  };
  for (const Sequent& ax : p.axioms) {
    if (ax.size() == 1) {
      Annot a = ax.member(0);
      if (a.side != Side::R || in.node(a.formula).kind != Kind::Atom) return false;
    } else if (ax.size() == 2) {
      Annot a = ax.member(0), b = ax.member(1);
      if (a.side == b.side) return false;
      Annot body = a.side == Side::L ? a : b;
      Annot head = a.side == Side::L ? b : a;
      if (in.node(head.formula).kind != Kind::Atom) return false;
      if (!is_body(body.formula)) return false;
    } else {
      return false;
    }
  }
  return true;
}

bool datalog_solve(Interner& in, const EprProblem& program, FormulaId query) {
  if (!is_horn_program(in, program))
    throw Error(Error::Code::Shape, "datalog_solve requires a Horn-shaped program");
  const FormulaNode& q = in.node(query);
  if (q.kind != Kind::Atom)
    throw Error(Error::Code::Shape, "datalog query must be a predicate atom");
  for (const TermArg& t : q.args)
    if (t.is_var) throw Error(Error::Code::Shape, "datalog query must be ground");

  EprProblem instance = program;
  instance.goal = Sequent(Annot{query, Side::R});
  check_arities(in, instance.signature, instance.goal);
  Problem grounded = ground(in, instance);
  return provable(in, grounded);
}

std::string atom_to_string(const Interner& in, FormulaId atom) {
  const FormulaNode& n = in.node(atom);
  std::string out = n.name;
  out += '(';
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (i) out += ',';
    out += n.args[i].name;
  }
  out += ')';
  return out;
}

}  // namespace ol
