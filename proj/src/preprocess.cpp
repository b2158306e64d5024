#include "ol/preprocess.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace ol {

namespace {

// ---- axiom merging ----

// Inequality view of an axiom. kNoFormula stands for the implicit bound:
// top as a left side (1 <= r), bottom as a right side (l <= 0).
struct Ineq {
  FormulaId l = kNoFormula;
  FormulaId r = kNoFormula;
};

struct MergeItem {
  Ineq ineq;
  std::optional<Sequent> orig;  // still the untouched input axiom
  std::size_t first_index = 0;  // for deterministic operand order
};

Ineq to_ineq(Interner& in, const Sequent& s) {
  if (s.size() == 1) {
    Annot a = s.member(0);
    if (a.side == Side::L) return {a.formula, kNoFormula};  // a <= 0
    return {kNoFormula, a.formula};                         // 1 <= a
  }
  Annot a = s.member(0), b = s.member(1);
  if (a.side == Side::L && b.side == Side::R) return {a.formula, b.formula};
  if (a.side == Side::R && b.side == Side::L) return {b.formula, a.formula};
  if (a.side == Side::L) return {a.formula, in.negation(b.formula)};  // a <= ~b
  return {in.negation(a.formula), b.formula};                         // ~a <= b
}

Sequent from_ineq(const Ineq& q) {
  if (q.l == kNoFormula) return Sequent(Annot{q.r, Side::R});
  if (q.r == kNoFormula) return Sequent(Annot{q.l, Side::L});
  return Sequent(Annot{q.l, Side::L}, Annot{q.r, Side::R});
}

// All equivalent orientations of an inequality, via a <= ~b  <=>  b <= ~a and
// its bound degenerations.
std::vector<Ineq> variants(Interner& in, const Ineq& q) {
  std::vector<Ineq> out{q};
  auto push = [&](Ineq v) {
    for (const Ineq& w : out)
      if (w.l == v.l && w.r == v.r) return;
    out.push_back(v);
  };
  // Negation-introducing flips are applied only to sides that are not
  // themselves negations, so the closure stays finite (at most one added
  // negation per side; the stripping flips shrink).
  auto is_not = [&](FormulaId f) {
    return f != kNoFormula && in.node(f).kind == Kind::Not;
  };
  for (std::size_t i = 0; i < out.size(); ++i) {
    Ineq v = out[i];
    if (is_not(v.l) && is_not(v.r)) {
      push({in.node(v.r).left, in.node(v.l).left});  // ~a <= ~b  <=>  b <= a
      continue;
    }
    if (is_not(v.r)) {
      FormulaId c = in.node(v.r).left;
      if (v.l == kNoFormula)
        push({c, kNoFormula});  // 1 <= ~c  <=>  c <= 0
      else if (!is_not(v.l))
        push({c, in.negation(v.l)});  // l <= ~c  <=>  c <= ~l
    }
    if (is_not(v.l)) {
      FormulaId c = in.node(v.l).left;
      if (v.r == kNoFormula)
        push({kNoFormula, c});  // ~c <= 0  <=>  1 <= c
      else if (!is_not(v.r))
        push({in.negation(v.r), c});  // ~c <= r  <=>  ~r <= c
    }
    if (v.l == kNoFormula && v.r != kNoFormula && !is_not(v.r))
      push({in.negation(v.r), kNoFormula});  // 1 <= r  <=>  ~r <= 0
    if (v.r == kNoFormula && v.l != kNoFormula && !is_not(v.l))
      push({kNoFormula, in.negation(v.l)});  // l <= 0  <=>  1 <= ~l
  }
  return out;
}

// Merge two items sharing a side under some orientation; nullopt otherwise.
std::optional<Ineq> try_merge(Interner& in, const MergeItem& x, const MergeItem& y) {
  const MergeItem& a = x.first_index <= y.first_index ? x : y;
  const MergeItem& b = x.first_index <= y.first_index ? y : x;
  for (const Ineq& va : variants(in, a.ineq)) {
    for (const Ineq& vb : variants(in, b.ineq)) {
      if (va.l == vb.l) {
        FormulaId r = (va.r == kNoFormula || vb.r == kNoFormula) ? kNoFormula
                                                                 : in.conj(va.r, vb.r);
        return Ineq{va.l, r};
      }
      if (va.r == vb.r) {
        FormulaId l = (va.l == kNoFormula || vb.l == kNoFormula) ? kNoFormula
                                                                 : in.disj(va.l, vb.l);
        return Ineq{l, va.r};
      }
    }
  }
  return std::nullopt;
}

std::size_t tree_size_skipping_not(const Interner& in, FormulaId f,
                                   std::unordered_map<FormulaId, std::size_t>& memo) {
  if (f == kNoFormula) return 1;  // implicit bound
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  const FormulaNode& n = in.node(f);
  std::size_t s = n.kind == Kind::Not ? 0 : 1;
  if (n.left != kNoFormula) s += tree_size_skipping_not(in, n.left, memo);
  if (n.kind == Kind::And || n.kind == Kind::Or)
    s += tree_size_skipping_not(in, n.right, memo);
  memo[f] = s;
  return s;
}

}  // namespace

std::vector<Sequent> merge_axioms(Interner& in, const std::vector<Sequent>& axioms) {
  std::vector<MergeItem> items;
  items.reserve(axioms.size());
  for (std::size_t i = 0; i < axioms.size(); ++i)
    items.push_back({to_ineq(in, axioms[i]), axioms[i], i});

  bool merged_any = false;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < items.size() && !progress; ++i) {
      for (std::size_t j = i + 1; j < items.size() && !progress; ++j) {
        if (auto m = try_merge(in, items[i], items[j])) {
          items[i] = {*m, std::nullopt, std::min(items[i].first_index, items[j].first_index)};
          items.erase(items.begin() + static_cast<std::ptrdiff_t>(j));
          merged_any = true;
          progress = true;
        }
      }
    }
  }
  if (!merged_any) return axioms;

  std::vector<Sequent> out;
  for (const MergeItem& it : items) {
    Sequent s = it.orig ? *it.orig : from_ineq(it.ineq);
    if (s.size() == 2 && s.member(0).formula == s.member(1).formula) continue;  // trivial
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

std::size_t merge_measure(Interner& in, const std::vector<Sequent>& axioms) {
  std::unordered_map<FormulaId, std::size_t> memo;
  std::size_t total = 0;
  for (const Sequent& s : axioms) {
    Ineq q = to_ineq(in, s);
    total += tree_size_skipping_not(in, q.l, memo);
    total += tree_size_skipping_not(in, q.r, memo);
  }
  return total;
}

// ---- bound elimination ----

Problem eliminate_bounds(Interner& in, const Problem& p) {
  if (!problem_contains_kind(in, p, Kind::Zero) &&
      !problem_contains_kind(in, p, Kind::One))
    return p;
  FormulaId v = in.var("$b");
  FormulaId zero_rep = in.conj(v, in.negation(v));
  FormulaId one_rep = in.disj(v, in.negation(v));
  std::unordered_map<FormulaId, FormulaId> memo;
  std::function<FormulaId(FormulaId)> rw = [&](FormulaId f) -> FormulaId {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const FormulaNode& n = in.node(f);
    FormulaId out = f;
    switch (n.kind) {
      case Kind::Zero: out = zero_rep; break;
      case Kind::One: out = one_rep; break;
      case Kind::Not: out = in.negation(rw(n.left)); break;
      case Kind::And: out = in.conj(rw(n.left), rw(n.right)); break;
      case Kind::Or: out = in.disj(rw(n.left), rw(n.right)); break;
      default: break;
    }
    memo[f] = out;
    return out;
  };
  auto rw_seq = [&](const Sequent& s) {
    Sequent t;
    for (int i = 0; i < s.size(); ++i) {
      Annot a = s.member(i);
      t = t.with(Annot{rw(a.formula), a.side});
    }
    return t;
  };
  std::vector<Sequent> axioms;
  axioms.reserve(p.axioms.size());
  for (const Sequent& a : p.axioms) axioms.push_back(rw_seq(a));
  return Problem::make(std::move(axioms), rw_seq(p.goal));
}

// ---- negation normal form ----

namespace {

struct NnfCtx {
  Interner& in;
  std::unordered_map<FormulaId, FormulaId> pos, neg;

  FormulaId positive(FormulaId f) {
    auto it = pos.find(f);
    if (it != pos.end()) return it->second;
    const FormulaNode& n = in.node(f);
    FormulaId out = f;
    switch (n.kind) {
      case Kind::Not: out = negative(n.left); break;
      case Kind::And: out = in.conj(positive(n.left), positive(n.right)); break;
      case Kind::Or: out = in.disj(positive(n.left), positive(n.right)); break;
      default: break;
    }
    pos[f] = out;
    return out;
  }

  FormulaId negative(FormulaId f) {
    auto it = neg.find(f);
    if (it != neg.end()) return it->second;
    const FormulaNode& n = in.node(f);
    FormulaId out;
    switch (n.kind) {
      case Kind::Not: out = positive(n.left); break;
      case Kind::And: out = in.disj(negative(n.left), negative(n.right)); break;
      case Kind::Or: out = in.conj(negative(n.left), negative(n.right)); break;
      case Kind::Zero: out = in.one(); break;
      case Kind::One: out = in.zero(); break;
      default: out = in.negation(f); break;
    }
    neg[f] = out;
    return out;
  }
};

}  // namespace

FormulaId nnf(Interner& in, FormulaId f) {
  NnfCtx ctx{in, {}, {}};
  return ctx.positive(f);
}

// ---- renaming ----

FormulaId rename_formula(Interner& in, FormulaId f, const RenameSet& v) {
  const FormulaNode& n = in.node(f);
  switch (n.kind) {
    case Kind::Var:
      return v.vars.count(f) ? in.negation(f) : f;
    case Kind::Not: {
      FormulaId c = n.left;
      if (in.node(c).kind == Kind::Var) return v.vars.count(c) ? c : f;
      return in.negation(rename_formula(in, c, v));
    }
    case Kind::And:
      return in.conj(rename_formula(in, n.left, v), rename_formula(in, n.right, v));
    case Kind::Or:
      return in.disj(rename_formula(in, n.left, v), rename_formula(in, n.right, v));
    default:
      return f;
  }
}

Problem rename(Interner& in, const Problem& p, const RenameSet& v) {
  auto rw_seq = [&](const Sequent& s) {
    Sequent t;
    for (int i = 0; i < s.size(); ++i) {
      Annot a = s.member(i);
      t = t.with(Annot{rename_formula(in, a.formula, v), a.side});
    }
    return t;
  };
  std::vector<Sequent> axioms;
  axioms.reserve(p.axioms.size());
  for (const Sequent& a : p.axioms) {
    Sequent t = rw_seq(a);
    // Complementation can collapse distinct members into the trivial
    // {f^L, f^R} shape, which is derivable by Hyp and carries no content.
    if (t.size() == 2 && t.member(0).formula == t.member(1).formula) continue;
    axioms.push_back(t);
  }
  return Problem::make(std::move(axioms), rw_seq(p.goal));
}

// ---- Tseitin transform ----

namespace {

bool is_literal(const Interner& in, FormulaId f) {
  const FormulaNode& n = in.node(f);
  switch (n.kind) {
    case Kind::Var:
    case Kind::Atom:
    case Kind::Zero:
    case Kind::One:
      return true;
    case Kind::Not: {
      Kind k = in.node(n.left).kind;
      return k == Kind::Var || k == Kind::Atom;
    }
    default:
      return false;
  }
}

bool is_flat_compound(const Interner& in, FormulaId f) {
  const FormulaNode& n = in.node(f);
  return (n.kind == Kind::And || n.kind == Kind::Or) && is_literal(in, n.left) &&
         is_literal(in, n.right);
}

bool sequent_is_flat(const Interner& in, const Sequent& s) {
  if (s.empty()) return true;
  if (s.size() == 1) {
    FormulaId f = s.member(0).formula;
    return is_literal(in, f) || is_flat_compound(in, f);
  }
  FormulaId a = s.member(0).formula, b = s.member(1).formula;
  bool la = is_literal(in, a), lb = is_literal(in, b);
  if (la && lb) return true;
  if (la) return is_flat_compound(in, b);
  if (lb) return is_flat_compound(in, a);
  return false;
}

// Innermost-leftmost strict subexpression of the form literal-op-literal.
FormulaId find_strict_flat(const Interner& in, FormulaId root) {
  std::function<FormulaId(FormulaId, bool)> go = [&](FormulaId f,
                                                     bool is_root) -> FormulaId {
    const FormulaNode& n = in.node(f);
    if (n.kind != Kind::And && n.kind != Kind::Or) {
      if (n.kind == Kind::Not && !is_literal(in, f)) return go(n.left, false);
      return kNoFormula;
    }
    if (FormulaId hit = go(n.left, false); hit != kNoFormula) return hit;
    if (FormulaId hit = go(n.right, false); hit != kNoFormula) return hit;
    if (!is_root && is_flat_compound(in, f)) return f;
    return kNoFormula;
  };
  return go(root, true);
}

FormulaId substitute_one(Interner& in, FormulaId f, FormulaId from, FormulaId to,
                         std::unordered_map<FormulaId, FormulaId>& memo) {
  if (f == from) return to;
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  const FormulaNode& n = in.node(f);
  FormulaId out = f;
  switch (n.kind) {
    case Kind::Not: out = in.negation(substitute_one(in, n.left, from, to, memo)); break;
    case Kind::And:
      out = in.conj(substitute_one(in, n.left, from, to, memo),
                    substitute_one(in, n.right, from, to, memo));
      break;
    case Kind::Or:
      out = in.disj(substitute_one(in, n.left, from, to, memo),
                    substitute_one(in, n.right, from, to, memo));
      break;
    default: break;
  }
  memo[f] = out;
  return out;
}

}  // namespace

TseitinResult tseitin(Interner& in, const Problem& p) {
  auto nnf_seq = [&](const Sequent& s) {
    Sequent t;
    for (int i = 0; i < s.size(); ++i) {
      Annot a = s.member(i);
      t = t.with(Annot{nnf(in, a.formula), a.side});
    }
    return t;
  };
  std::vector<Sequent> axioms;
  axioms.reserve(p.axioms.size());
  for (const Sequent& a : p.axioms) {
    Sequent t = nnf_seq(a);
    // NNF can collapse distinct members into the content-free {f^L, f^R}.
    if (t.size() == 2 && t.member(0).formula == t.member(1).formula) continue;
    axioms.push_back(t);
  }
  Sequent goal = nnf_seq(p.goal);

  // Fresh-name counter, skipping any reserved names already in the problem.
  std::unordered_set<std::string> used;
  {
    std::unordered_set<FormulaId> vars;
    for (const Sequent& s : axioms)
      for (int i = 0; i < s.size(); ++i) collect_vars(in, s.member(i).formula, vars);
    for (int i = 0; i < goal.size(); ++i) collect_vars(in, goal.member(i).formula, vars);
    for (FormulaId v : vars) used.insert(in.node(v).name);
  }
  std::size_t counter = 0;
  auto fresh = [&]() {
    std::string name;
    do {
      name = "$t" + std::to_string(counter++);
    } while (used.count(name));
    used.insert(name);
    return in.var(name);
  };

  TseitinResult result;
  std::size_t original_axioms = axioms.size();

  auto each_member = [&](auto&& fn) -> FormulaId {
    for (std::size_t i = 0; i < original_axioms; ++i)
      for (int j = 0; j < axioms[i].size(); ++j)
        if (FormulaId hit = fn(axioms[i].member(j).formula, axioms[i]); hit != kNoFormula)
          return hit;
    for (int j = 0; j < goal.size(); ++j)
      if (FormulaId hit = fn(goal.member(j).formula, goal); hit != kNoFormula) return hit;
    return kNoFormula;
  };

  while (true) {
    // Strict flat subexpressions first, then whole members of sequents that
    // still fail the flat-shape predicate (two compounds, or a lone compound).
    FormulaId target = each_member([&](FormulaId f, const Sequent&) {
      return find_strict_flat(in, f);
    });
    if (target == kNoFormula)
      target = each_member([&](FormulaId f, const Sequent& s) {
        if (!sequent_is_flat(in, s) && is_flat_compound(in, f)) return f;
        return kNoFormula;
      });
    if (target == kNoFormula) break;

    FormulaId c = fresh();
    result.definitions[c] = target;
    std::unordered_map<FormulaId, FormulaId> memo;
    auto sub_seq = [&](const Sequent& s) {
      Sequent t;
      for (int i = 0; i < s.size(); ++i) {
        Annot a = s.member(i);
        t = t.with(Annot{substitute_one(in, a.formula, target, c, memo), a.side});
      }
      return t;
    };
    for (Sequent& a : axioms) a = sub_seq(a);
    goal = sub_seq(goal);
    axioms.push_back(Sequent(Annot{c, Side::L}, Annot{target, Side::R}));
    axioms.push_back(Sequent(Annot{target, Side::L}, Annot{c, Side::R}));
  }

  result.problem = Problem::make(std::move(axioms), goal);
  return result;
}

bool is_tseitin_normal(const Interner& in, const Problem& p) {
  for (const Sequent& s : p.axioms)
    if (!sequent_is_flat(in, s)) return false;
  return sequent_is_flat(in, p.goal);
}

}  // namespace ol
