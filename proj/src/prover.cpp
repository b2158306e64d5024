#include "ol/prover.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace ol {

namespace {

void validate_propositional(const Interner& in, const Problem& p) {
  if (problem_contains_kind(in, p, Kind::Atom)) {
    throw Error(Error::Code::NotGround,
                "prover requires a ground propositional problem (predicate atoms present)");
  }
  if (problem_contains_kind(in, p, Kind::Zero) || problem_contains_kind(in, p, Kind::One)) {
    throw Error(Error::Code::NotPreprocessed,
                "prover requires a bound-free problem (0/1 present); eliminate bounds first");
  }
}

}  // namespace

SearchSpace build_search_space(const Interner& in, const Problem& p) {
  SearchSpace ss;
  std::vector<FormulaId> forms;
  std::unordered_set<FormulaId> seen;
  auto add_seq = [&](const Sequent& s) {
    for (int i = 0; i < s.size(); ++i) {
      for (FormulaId f : subformulas(in, s.member(i).formula)) {
        if (seen.insert(f).second) forms.push_back(f);
      }
    }
  };
  add_seq(p.goal);
  for (const auto& ax : p.axioms) add_seq(ax);
  ss.axiom_formulas = axiom_formulas(p.axioms);

  std::vector<Annot> annots;
  annots.reserve(forms.size() * 2);
  for (FormulaId f : forms) {
    annots.push_back({f, Side::L});
    annots.push_back({f, Side::R});
  }
  auto push = [&](const Sequent& s) {
    if (ss.index.emplace(s.key(), ss.relevant.size()).second) ss.relevant.push_back(s);
  };
  push(Sequent{});
  for (const Annot& a : annots) push(Sequent(a));
  for (std::size_t i = 0; i < annots.size(); ++i) {
    for (std::size_t j = i + 1; j < annots.size(); ++j) {
      push(Sequent(annots[i], annots[j]));
    }
  }
  return ss;
}

std::vector<ParentInstance> possible_parents(const Interner& in, const Sequent& s,
                                             const Problem& p) {
  std::vector<ParentInstance> out;
  auto push = [&](ParentInstance inst) {
    for (const auto& prev : out) {
      if (prev.rule == inst.rule && prev.cut_formula == inst.cut_formula &&
          prev.premises.size() == inst.premises.size()) {
        bool same = true;
        for (std::size_t i = 0; i < inst.premises.size(); ++i) {
          if (!(prev.premises[i] == inst.premises[i])) same = false;
        }
        if (same) return;
      }
    }
    out.push_back(std::move(inst));
  };

  // Hyp
  if (s.size() == 2 && s.member(0).formula == s.member(1).formula &&
      s.member(0).side != s.member(1).side) {
    push({Rule::Hyp, kNoFormula, {}});
  }
  // Ax
  for (const auto& ax : p.axioms) {
    if (ax == s) {
      push({Rule::Ax, kNoFormula, {}});
      break;
    }
  }
  // Weaken: drop one member of a two-member sequent.
  if (s.size() == 2) {
    push({Rule::Weaken, kNoFormula, {s.without(s.member(1))}});
    push({Rule::Weaken, kNoFormula, {s.without(s.member(0))}});
  }
  // Logical decompositions of a member, with the other member as context; a
  // singleton also decomposes against itself (the contracted reading).
  auto decompose = [&](Annot m, const Sequent& ctx) {
    const FormulaNode& n = in.node(m.formula);
    switch (n.kind) {
      case Kind::And:
        if (m.side == Side::L) {
          push({Rule::LeftAnd, kNoFormula, {ctx.with({n.left, Side::L})}});
          push({Rule::LeftAnd, kNoFormula, {ctx.with({n.right, Side::L})}});
        } else {
          push({Rule::RightAnd, kNoFormula,
                {ctx.with({n.left, Side::R}), ctx.with({n.right, Side::R})}});
        }
        break;
      case Kind::Or:
        if (m.side == Side::L) {
          push({Rule::LeftOr, kNoFormula,
                {ctx.with({n.left, Side::L}), ctx.with({n.right, Side::L})}});
        } else {
          push({Rule::RightOr, kNoFormula, {ctx.with({n.left, Side::R})}});
          push({Rule::RightOr, kNoFormula, {ctx.with({n.right, Side::R})}});
        }
        break;
      case Kind::Not:
        if (m.side == Side::L) {
          push({Rule::LeftNot, kNoFormula, {ctx.with({n.left, Side::R})}});
        } else {
          push({Rule::RightNot, kNoFormula, {ctx.with({n.left, Side::L})}});
        }
        break;
      default:
        break;
    }
  };
  if (s.size() == 2) {
    decompose(s.member(0), s.without(s.member(0)));
    decompose(s.member(1), s.without(s.member(1)));
  } else if (s.size() == 1) {
    decompose(s.member(0), Sequent{});
    decompose(s.member(0), s);
  }
  // Cuts on axiom formulas, over every split of s into two contexts.
  std::vector<std::pair<Sequent, Sequent>> splits;
  if (s.size() == 2) {
    Sequent a(s.member(0)), b(s.member(1));
    splits = {{a, b}, {b, a}};
  } else if (s.size() == 1) {
    // The contraction split (m in both premises) subsumes the one-sided
    // splits: {f^R} proven lifts to {m, f^R} by Weaken at that node. Emitting
    // only it keeps completeness and the 7 + 4|A| parent-count bound.
    Sequent m(s.member(0));
    splits = {{m, m}};
  } else {
    splits = {{Sequent{}, Sequent{}}};
  }
  for (FormulaId f : axiom_formulas(p.axioms)) {
    for (const auto& [g, d] : splits) {
      push({Rule::Cut, f, {g.with({f, Side::R}), d.with({f, Side::L})}});
    }
  }
  return out;
}

namespace {

/// Open-addressing map from Sequent keys to dense node ids. Sequent keys are
/// never zero (a two-member key needs two distinct member codes, and shorter
/// sequents carry the all-ones empty-slot marker), so zero marks a free slot.
class SequentKeyMap {
 public:
  SequentKeyMap() { resize(1 << 10); }

  std::uint32_t* find(std::uint64_t key) {
    std::size_t i = probe(key);
    return keys_[i] == 0 ? nullptr : &vals_[i];
  }

  const std::uint32_t* find(std::uint64_t key) const {
    std::size_t i = probe(key);
    return keys_[i] == 0 ? nullptr : &vals_[i];
  }

  /// Returns the slot value, inserting value if the key is new.
  std::uint32_t get_or_insert(std::uint64_t key, std::uint32_t value, bool* inserted) {
    if (size_ * 10 >= keys_.size() * 7) resize(keys_.size() * 2);
    std::size_t i = probe(key);
    if (keys_[i] == 0) {
      keys_[i] = key;
      vals_[i] = value;
      ++size_;
      *inserted = true;
      return value;
    }
    *inserted = false;
    return vals_[i];
  }

 private:
  std::size_t probe(std::uint64_t key) const {
    std::size_t mask = keys_.size() - 1;
    std::size_t i = (key * 0x9e3779b97f4a7c15ull) >> shift_;
    while (keys_[i] != 0 && keys_[i] != key) i = (i + 1) & mask;
    return i;
  }

  void resize(std::size_t cap) {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<std::uint32_t> old_vals = std::move(vals_);
    keys_.assign(cap, 0);
    vals_.assign(cap, 0);
    shift_ = 64;
    for (std::size_t c = cap; c > 1; c >>= 1) --shift_;
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
      if (old_keys[i] == 0) continue;
      std::size_t j = probe(old_keys[i]);
      keys_[j] = old_keys[i];
      vals_[j] = old_vals[i];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::size_t size_ = 0;
  int shift_ = 64;
};

/// Lazy AND-OR graph over the sequents backward-reachable from the roots,
/// with least-fixpoint propagation and per-node proof levels (the synchronous
/// round at which a node first became provable). Storage is flat: instances
/// keep at most two premise ids (every rule has arity <= 2), and
/// premise-to-instance links live in one CSR block, so the quadratic sequent
/// space of large goals stays within memory.
class FixpointGraph {
 public:
  FixpointGraph(const Interner& in, const Problem& p) : in_(in), p_(p) {}

  std::uint32_t node(const Sequent& s) {
    bool inserted = false;
    std::uint32_t id = index_.get_or_insert(
        s.key(), static_cast<std::uint32_t>(seqs_.size()), &inserted);
    if (inserted) seqs_.push_back(s);
    return id;
  }

  void run(const Sequent& root) {
    node(root);
    discover();
    propagate();
  }

  // Full-space variant: seed every relevant sequent.
  void run_all() {
    SearchSpace ss = build_search_space(in_, p_);
    for (const auto& s : ss.relevant) node(s);
    discover();
    propagate();
  }

  bool proven(const Sequent& s) const {
    const std::uint32_t* id = index_.find(s.key());
    return id != nullptr && level_[*id] >= 0;
  }

  int level(std::size_t id) const { return level_[id]; }
  const std::vector<Sequent>& sequents() const { return seqs_; }

  ProveStats stats() const {
    ProveStats st;
    st.visited = seqs_.size();
    st.edges = edges_;
    return st;
  }

  /// Deterministic reconstruction: per sequent, the first instance in
  /// enumeration order whose premises were all proven at strictly smaller
  /// levels. Rule tags are recovered by re-enumerating possible_parents on
  /// the (small) proof subgraph only.
  ProofPtr reconstruct(const Sequent& s) {
    const std::uint32_t* id = index_.find(s.key());
    if (id == nullptr || level_[*id] < 0) return nullptr;
    return build(*id);
  }

 private:
  struct Inst {
    std::uint32_t prem[2];
    std::uint8_t npem;
  };

  void discover() {
    // Nodes appended by node() extend the loop, so every discovered sequent
    // is expanded exactly once, in id order (instances stay contiguous).
    for (std::size_t id = 0; id < seqs_.size(); ++id) {
      inst_begin_.push_back(static_cast<std::uint32_t>(insts_.size()));
      auto parents = possible_parents(in_, seqs_[id], p_);
      edges_ += parents.size();
      for (const auto& pi : parents) {
        Inst inst{{0, 0}, static_cast<std::uint8_t>(pi.premises.size())};
        for (std::size_t k = 0; k < pi.premises.size(); ++k)
          inst.prem[k] = node(pi.premises[k]);
        insts_.push_back(inst);
        unmet_.push_back(inst.npem);
      }
    }
    inst_begin_.push_back(static_cast<std::uint32_t>(insts_.size()));
  }

  std::uint32_t owner_of(std::uint32_t inst_id) const {
    auto it = std::upper_bound(inst_begin_.begin(), inst_begin_.end(), inst_id);
    return static_cast<std::uint32_t>(it - inst_begin_.begin() - 1);
  }

  void propagate() {
    std::size_t n = seqs_.size();
    level_.assign(n, -1);

    // CSR premise -> instance links.
    std::vector<std::uint32_t> offs(n + 1, 0);
    for (const Inst& inst : insts_)
      for (int k = 0; k < inst.npem; ++k) ++offs[inst.prem[k] + 1];
    for (std::size_t i = 1; i <= n; ++i) offs[i] += offs[i - 1];
    std::vector<std::uint32_t> links(offs[n]);
    {
      std::vector<std::uint32_t> cursor(offs.begin(), offs.end() - 1);
      for (std::uint32_t j = 0; j < insts_.size(); ++j)
        for (int k = 0; k < insts_[j].npem; ++k)
          links[cursor[insts_[j].prem[k]]++] = j;
    }

    std::vector<std::uint32_t> current;
    for (std::size_t id = 0; id < n; ++id) {
      for (std::uint32_t j = inst_begin_[id]; j < inst_begin_[id + 1]; ++j) {
        if (unmet_[j] == 0) {
          level_[id] = 0;
          current.push_back(static_cast<std::uint32_t>(id));
          break;
        }
      }
    }
    int round = 0;
    while (!current.empty()) {
      ++round;
      std::vector<std::uint32_t> next;
      for (std::uint32_t id : current) {
        for (std::uint32_t li = offs[id]; li < offs[id + 1]; ++li) {
          std::uint32_t j = links[li];
          if (--unmet_[j] == 0) {
            std::uint32_t owner = owner_of(j);
            if (level_[owner] < 0) {
              level_[owner] = round;
              next.push_back(owner);
            }
          }
        }
      }
      current = std::move(next);
    }
  }

  ProofPtr build(std::uint32_t id) {
    auto memoIt = memo_.find(id);
    if (memoIt != memo_.end()) return memoIt->second;
    int lv = level_[id];
    for (const auto& pi : possible_parents(in_, seqs_[id], p_)) {
      bool usable = true;
      std::vector<std::uint32_t> prem_ids;
      prem_ids.reserve(pi.premises.size());
      for (const auto& prem : pi.premises) {
        const std::uint32_t* pid = index_.find(prem.key());
        if (pid == nullptr || level_[*pid] < 0 || level_[*pid] >= lv) {
          usable = false;
          break;
        }
        prem_ids.push_back(*pid);
      }
      if (!usable) continue;
      std::vector<ProofPtr> prem;
      prem.reserve(prem_ids.size());
      for (std::uint32_t pid : prem_ids) prem.push_back(build(pid));
      ProofPtr pf = Proof::make(seqs_[id], pi.rule, std::move(prem), pi.cut_formula);
      memo_.emplace(id, pf);
      return pf;
    }
    throw Error(Error::Code::Argument, "internal: no justifying instance at reconstruction");
  }

  const Interner& in_;
  const Problem& p_;
  SequentKeyMap index_;
  std::vector<Sequent> seqs_;
  std::vector<int> level_;
  std::vector<Inst> insts_;
  std::vector<std::uint8_t> unmet_;
  std::vector<std::uint32_t> inst_begin_;
  std::unordered_map<std::uint32_t, ProofPtr> memo_;
  std::size_t edges_ = 0;
};

/// Literal backward memoized search. A failure cached during a pass may be
/// context-dependent (its exploration was truncated at an on-stack ancestor
/// that was later proven), so the failure cache is discarded after each pass
/// and the search repeats while the persistent proven cache keeps growing.
class BackwardSearch {
 public:
  BackwardSearch(const Interner& in, const Problem& p) : in_(in), p_(p) {}

  bool run(const Sequent& goal) {
    while (true) {
      failed_.clear();
      if (search(goal)) return true;
      std::size_t grown = proven_.size();
      if (grown == last_proven_) return false;
      last_proven_ = grown;
    }
  }

  ProveStats stats() const {
    ProveStats st;
    st.visited = visited_;
    st.edges = edges_;
    return st;
  }

 private:
  bool search(const Sequent& s) {
    std::uint64_t key = s.key();
    if (proven_.count(key)) return true;
    if (failed_.count(key)) return false;
    // An in-progress sequent counts as a failure for this attempt (cycle
    // truncation, as in the visited set of the search algorithm).
    if (!failed_.insert(key).second) return false;
    ++visited_;
    bool ok = false;
    for (const auto& inst : possible_parents(in_, s, p_)) {
      ++edges_;
      bool all = true;
      for (const auto& prem : inst.premises) {
        if (!search(prem)) {
          all = false;
          break;
        }
      }
      if (all) {
        ok = true;
        break;
      }
    }
    if (ok) {
      failed_.erase(key);
      proven_.insert(key);
    }
    return ok;
  }

  const Interner& in_;
  const Problem& p_;
  std::unordered_set<std::uint64_t> proven_;
  std::unordered_set<std::uint64_t> failed_;
  std::size_t last_proven_ = 0;
  std::size_t visited_ = 0;
  std::size_t edges_ = 0;
};

ProveResult prove_impl(Interner& in, const Problem& p, Engine engine, bool want_proof) {
  validate_propositional(in, p);
  auto t0 = std::chrono::steady_clock::now();
  ProveResult res;
  if (engine == Engine::Fixpoint) {
    FixpointGraph g(in, p);
    g.run(p.goal);
    res.stats = g.stats();
    if (g.proven(p.goal)) {
      res.verdict = Verdict::Provable;
      if (want_proof) res.proof = g.reconstruct(p.goal);
    }
  } else {
    BackwardSearch bs(in, p);
    bool ok = bs.run(p.goal);
    res.stats = bs.stats();
    if (ok) {
      res.verdict = Verdict::Provable;
      if (want_proof) {
        FixpointGraph g(in, p);
        g.run(p.goal);
        res.proof = g.reconstruct(p.goal);
      }
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  res.stats.elapsed_micros = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
  return res;
}

}  // namespace

ProveResult prove(Interner& in, const Problem& p, Engine engine) {
  return prove_impl(in, p, engine, /*want_proof=*/true);
}

bool provable(Interner& in, const Problem& p, Engine engine) {
  return prove_impl(in, p, engine, /*want_proof=*/false).verdict == Verdict::Provable;
}

std::vector<Sequent> provable_set(Interner& in, const Problem& p) {
  validate_propositional(in, p);
  FixpointGraph g(in, p);
  g.run_all();
  std::vector<Sequent> out;
  std::size_t id = 0;
  for (const auto& s : g.sequents()) {
    if (g.level(id) >= 0) out.push_back(s);
    ++id;
  }
  return out;
}

namespace {

FormulaId substitute(Interner& in, FormulaId f, FormulaId from, FormulaId to,
                     std::unordered_map<FormulaId, FormulaId>& memo) {
  if (f == from) return to;
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  const FormulaNode n = in.node(f);
  FormulaId result = f;
  switch (n.kind) {
    case Kind::Not:
      result = in.negation(substitute(in, n.left, from, to, memo));
      break;
    case Kind::And:
      result = in.conj(substitute(in, n.left, from, to, memo),
                       substitute(in, n.right, from, to, memo));
      break;
    case Kind::Or:
      result = in.disj(substitute(in, n.left, from, to, memo),
                       substitute(in, n.right, from, to, memo));
      break;
    default:
      break;
  }
  memo.emplace(f, result);
  return result;
}

bool mentions(const Interner& in, FormulaId f, FormulaId target) {
  for (FormulaId g : subformulas(in, f)) {
    if (g == target) return true;
  }
  return false;
}

}  // namespace

bool admissible_substitution_check(Interner& in, const Problem& p, FormulaId phi,
                                   FormulaId psi, unsigned seed, int samples) {
  Problem fwd{p.axioms, Sequent({phi, Side::L}, {psi, Side::R})};
  Problem bwd{p.axioms, Sequent({psi, Side::L}, {phi, Side::R})};
  if (!provable(in, fwd) || !provable(in, bwd)) return true;  // vacuous

  std::vector<Sequent> pool;
  for (const auto& s : provable_set(in, p)) {
    bool has_phi = false;
    for (int i = 0; i < s.size(); ++i) {
      if (mentions(in, s.member(i).formula, phi)) has_phi = true;
    }
    if (has_phi) pool.push_back(s);
  }
  std::mt19937 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (static_cast<int>(pool.size()) > samples) {
    pool.resize(static_cast<std::size_t>(samples));
  }
  std::unordered_map<FormulaId, FormulaId> memo;
  for (const auto& s : pool) {
    Sequent sub;
    for (int i = 0; i < s.size(); ++i) {
      Annot m = s.member(i);
      sub = sub.with({substitute(in, m.formula, phi, psi, memo), m.side});
    }
    if (!provable(in, Problem{p.axioms, sub})) return false;
  }
  return true;
}

}  // namespace ol
