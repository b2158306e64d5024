#include "ol/core.hpp"

#include <algorithm>
#include <functional>

namespace ol {

namespace {

std::string key_of(const FormulaNode& n) {
  switch (n.kind) {
    case Kind::Var:
      return "v " + n.name;
    case Kind::Zero:
      return "0";
    case Kind::One:
      return "1";
    case Kind::Not:
      return "n " + std::to_string(n.left);
    case Kind::And:
      return "a " + std::to_string(n.left) + " " + std::to_string(n.right);
    case Kind::Or:
      return "o " + std::to_string(n.left) + " " + std::to_string(n.right);
    case Kind::Atom: {
      std::string k = "p " + n.name;
      for (const auto& arg : n.args) {
        k += arg.is_var ? " V" : " c";
        k += arg.name;
      }
      return k;
    }
  }
  return {};
}

}  // namespace

FormulaId Interner::add(const std::string& key, FormulaNode node) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  auto id = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(key, id);
  published_.store(nodes_.size(), std::memory_order_release);
  return id;
}

FormulaId Interner::var(std::string_view name) {
  FormulaNode n;
  n.kind = Kind::Var;
  n.name = std::string(name);
  std::string key = key_of(n);
  return add(key, std::move(n));
}

FormulaId Interner::atom(std::string_view predicate, std::vector<TermArg> args) {
  FormulaNode n;
  n.kind = Kind::Atom;
  n.name = std::string(predicate);
  n.args = std::move(args);
  std::string key = key_of(n);
  return add(key, std::move(n));
}

FormulaId Interner::negation(FormulaId child) {
  node(child);  // range check
  FormulaNode n;
  n.kind = Kind::Not;
  n.left = child;
  std::string key = key_of(n);
  return add(key, std::move(n));
}

FormulaId Interner::conj(FormulaId left, FormulaId right) {
  node(left);
  node(right);
  FormulaNode n;
  n.kind = Kind::And;
  n.left = left;
  n.right = right;
  std::string key = key_of(n);
  return add(key, std::move(n));
}

FormulaId Interner::disj(FormulaId left, FormulaId right) {
  node(left);
  node(right);
  FormulaNode n;
  n.kind = Kind::Or;
  n.left = left;
  n.right = right;
  std::string key = key_of(n);
  return add(key, std::move(n));
}

FormulaId Interner::zero() {
  FormulaNode n;
  n.kind = Kind::Zero;
  std::string key = key_of(n);
  return add(key, std::move(n));
}

FormulaId Interner::one() {
  FormulaNode n;
  n.kind = Kind::One;
  std::string key = key_of(n);
  return add(key, std::move(n));
}

const FormulaNode& Interner::node(FormulaId id) const {
  if (id >= published_.load(std::memory_order_acquire)) {
    throw Error(Error::Code::Argument, "formula id out of range");
  }
  return nodes_[id];
}

// ---- Sequent ----

Sequent::Sequent(Annot a, Annot b) {
  std::uint32_t ca = a.code();
  std::uint32_t cb = b.code();
  if (ca == cb) {
    m_[0] = ca;
    size_ = 1;
    return;
  }
  if (ca > cb) std::swap(ca, cb);
  m_[0] = ca;
  m_[1] = cb;
  size_ = 2;
}

bool Sequent::contains(Annot a) const {
  std::uint32_t c = a.code();
  return (size_ > 0 && m_[0] == c) || (size_ > 1 && m_[1] == c);
}

Sequent Sequent::with(Annot a) const {
  if (contains(a)) return *this;
  if (size_ == 0) return Sequent(a);
  if (size_ == 1) return Sequent(member(0), a);
  throw Error(Error::Code::Argument, "sequent cannot hold more than two formulas");
}

Sequent Sequent::without(Annot a) const {
  Sequent r;
  for (int i = 0; i < size_; ++i) {
    if (!(member(i) == a)) r = r.with(member(i));
  }
  return r;
}

bool Sequent::is_subset_of(const Sequent& other) const {
  for (int i = 0; i < size_; ++i) {
    if (!other.contains(member(i))) return false;
  }
  return true;
}

// ---- Problem ----

Problem Problem::make(std::vector<Sequent> axioms, Sequent goal) {
  std::vector<Sequent> unique;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& ax : axioms) {
    if (ax.empty()) {
      throw Error(Error::Code::Argument, "axiom sequent must be nonempty");
    }
    if (ax.size() == 2) {
      Annot a = ax.member(0), b = ax.member(1);
      if (a.formula == b.formula && a.side != b.side) {
        throw Error(Error::Code::Argument, "trivial axiom {f^L, f^R} rejected");
      }
    }
    if (seen.insert(ax.key()).second) unique.push_back(ax);
  }
  return Problem{std::move(unique), goal};
}

// ---- formula utilities ----

std::vector<FormulaId> subformulas(const Interner& in, FormulaId f) {
  std::vector<FormulaId> out;
  std::unordered_set<FormulaId> seen;
  std::vector<FormulaId> stack{f};
  while (!stack.empty()) {
    FormulaId cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    out.push_back(cur);
    const FormulaNode& n = in.node(cur);
    if (n.left != kNoFormula) stack.push_back(n.left);
    if (n.right != kNoFormula) stack.push_back(n.right);
  }
  return out;
}

std::size_t subformula_count(const Interner& in, const std::vector<Sequent>& seqs) {
  std::unordered_set<FormulaId> seen;
  for (const auto& s : seqs) {
    for (int i = 0; i < s.size(); ++i) {
      for (FormulaId f : subformulas(in, s.member(i).formula)) seen.insert(f);
    }
  }
  return seen.size();
}

std::size_t subformula_count(const Interner& in, const Sequent& s) {
  return subformula_count(in, std::vector<Sequent>{s});
}

void collect_vars(const Interner& in, FormulaId f, std::unordered_set<FormulaId>& out) {
  for (FormulaId sub : subformulas(in, f)) {
    if (in.node(sub).kind == Kind::Var) out.insert(sub);
  }
}

bool contains_kind(const Interner& in, FormulaId f, Kind k) {
  for (FormulaId sub : subformulas(in, f)) {
    if (in.node(sub).kind == k) return true;
  }
  return false;
}

bool problem_contains_kind(const Interner& in, const Problem& p, Kind k) {
  auto sequent_has = [&](const Sequent& s) {
    for (int i = 0; i < s.size(); ++i) {
      if (contains_kind(in, s.member(i).formula, k)) return true;
    }
    return false;
  };
  for (const auto& ax : p.axioms) {
    if (sequent_has(ax)) return true;
  }
  return sequent_has(p.goal);
}

// ---- finite ortholattices ----

FiniteOrtholattice lattice_from_order(std::string name, int n,
                                      const std::vector<std::uint8_t>& leq,
                                      std::vector<int> neg) {
  FiniteOrtholattice l;
  l.name = std::move(name);
  l.n = n;
  l.leq = leq;
  l.neg = std::move(neg);
  l.meet.assign(static_cast<std::size_t>(n) * n, -1);
  l.join.assign(static_cast<std::size_t>(n) * n, -1);

  auto le = [&](int a, int b) { return leq[static_cast<std::size_t>(a * n + b)] != 0; };

  l.bottom = -1;
  l.top = -1;
  for (int a = 0; a < n; ++a) {
    bool is_bot = true, is_top = true;
    for (int b = 0; b < n; ++b) {
      if (!le(a, b)) is_bot = false;
      if (!le(b, a)) is_top = false;
    }
    if (is_bot) l.bottom = a;
    if (is_top) l.top = a;
  }
  if (l.bottom < 0 || l.top < 0) {
    throw Error(Error::Code::Argument, "order has no bottom or top element");
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int glb = -1, lub = -1;
      for (int c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && (glb < 0 || le(glb, c))) glb = c;
        if (le(a, c) && le(b, c) && (lub < 0 || le(c, lub))) lub = c;
      }
      // verify uniqueness of bounds
      for (int c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && !le(c, glb)) glb = -1;
        if (le(a, c) && le(b, c) && !le(lub, c)) lub = -1;
      }
      if (glb < 0 || lub < 0) {
        throw Error(Error::Code::Argument, "order is not a lattice");
      }
      l.meet[static_cast<std::size_t>(a * n + b)] = glb;
      l.join[static_cast<std::size_t>(a * n + b)] = lub;
    }
  }
  return l;
}

namespace {

FiniteOrtholattice build_from_leq_pairs(std::string name, int n,
                                        const std::vector<std::pair<int, int>>& covers,
                                        std::vector<int> neg) {
  // reflexive-transitive closure of the cover relation
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) leq[static_cast<std::size_t>(a * n + a)] = 1;
  for (auto [a, b] : covers) leq[static_cast<std::size_t>(a * n + b)] = 1;
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (leq[static_cast<std::size_t>(a * n + k)] &&
            leq[static_cast<std::size_t>(k * n + b)]) {
          leq[static_cast<std::size_t>(a * n + b)] = 1;
        }
      }
    }
  }
  return lattice_from_order(std::move(name), n, leq, std::move(neg));
}

}  // namespace

FiniteOrtholattice o6() {
  // 0=bot, 1=a, 2=b, 3=-b, 4=-a, 5=top; chains 0<a<b<1 and 0<-b<-a<1
  return build_from_leq_pairs("O6", 6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}},
                              {5, 4, 3, 2, 1, 0});
}

FiniteOrtholattice m4() {
  // 0=bot, 1=a, 2=-a, 3=b, 4=-b, 5=top; all middle elements incomparable
  return build_from_leq_pairs("M4", 6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}},
                              {5, 2, 1, 4, 3, 0});
}

FiniteOrtholattice boolean_lattice(int k) {
  if (k < 0 || k > 3) {
    throw Error(Error::Code::Argument, "boolean_lattice supports k in [0, 3]");
  }
  int n = 1 << k;
  int mask = n - 1;
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> neg(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    neg[static_cast<std::size_t>(a)] = (~a) & mask;
    for (int b = 0; b < n; ++b) {
      leq[static_cast<std::size_t>(a * n + b)] = ((a & b) == a) ? 1 : 0;
    }
  }
  return lattice_from_order("B" + std::to_string(n), n, leq, std::move(neg));
}

bool check_ortholattice(const FiniteOrtholattice& l, LawViolation* violation) {
  auto fail = [&](const std::string& law, std::vector<int> w) {
    if (violation) *violation = LawViolation{law, std::move(w)};
    return false;
  };
  int n = l.n;
  if (n <= 0 || l.meet.size() != static_cast<std::size_t>(n) * n ||
      l.join.size() != static_cast<std::size_t>(n) * n ||
      l.neg.size() != static_cast<std::size_t>(n) ||
      l.leq.size() != static_cast<std::size_t>(n) * n) {
    return fail("malformed tables", {});
  }
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  for (int v : l.meet) {
    if (!in_range(v)) return fail("malformed tables", {v});
  }
  for (int v : l.join) {
    if (!in_range(v)) return fail("malformed tables", {v});
  }
  for (int v : l.neg) {
    if (!in_range(v)) return fail("malformed tables", {v});
  }
  auto m = [&](int a, int b) { return l.meet_at(a, b); };
  auto j = [&](int a, int b) { return l.join_at(a, b); };

  for (int x = 0; x < n; ++x) {
    if (l.neg[static_cast<std::size_t>(l.neg[static_cast<std::size_t>(x)])] != x) {
      return fail("V6", {x});
    }
    if (j(x, x) != x) return fail("V3", {x});
    if (m(x, x) != x) return fail("V3'", {x});
    if (j(x, l.top) != l.top) return fail("V4", {x});
    if (m(x, l.bottom) != l.bottom) return fail("V4'", {x});
    if (j(x, l.bottom) != x) return fail("V5", {x});
    if (m(x, l.top) != x) return fail("V5'", {x});
    if (j(x, l.neg[static_cast<std::size_t>(x)]) != l.top) return fail("V7", {x});
    if (m(x, l.neg[static_cast<std::size_t>(x)]) != l.bottom) return fail("V7'", {x});
    for (int y = 0; y < n; ++y) {
      if (j(x, y) != j(y, x)) return fail("V1", {x, y});
      if (m(x, y) != m(y, x)) return fail("V1'", {x, y});
      int nx = l.neg[static_cast<std::size_t>(x)];
      int ny = l.neg[static_cast<std::size_t>(y)];
      if (l.neg[static_cast<std::size_t>(j(x, y))] != m(nx, ny)) return fail("V8", {x, y});
      if (l.neg[static_cast<std::size_t>(m(x, y))] != j(nx, ny)) return fail("V8'", {x, y});
      if (j(x, m(x, y)) != x) return fail("V9", {x, y});
      if (m(x, j(x, y)) != x) return fail("V9'", {x, y});
      if (l.leq_at(x, y) != (m(x, y) == x)) return fail("leq/meet consistency", {x, y});
      for (int z = 0; z < n; ++z) {
        if (j(x, j(y, z)) != j(j(x, y), z)) return fail("V2", {x, y, z});
        if (m(x, m(y, z)) != m(m(x, y), z)) return fail("V2'", {x, y, z});
      }
    }
  }
  return true;
}

int eval(const Interner& in, const FiniteOrtholattice& l, FormulaId f, const Assignment& a) {
  const FormulaNode& n = in.node(f);
  switch (n.kind) {
    case Kind::Var: {
      auto it = a.find(f);
      if (it == a.end()) {
        throw Error(Error::Code::Argument, "unassigned variable " + n.name);
      }
      return it->second;
    }
    case Kind::Atom:
      throw Error(Error::Code::NotGround, "cannot evaluate a predicate atom");
    case Kind::Zero:
      return l.bottom;
    case Kind::One:
      return l.top;
    case Kind::Not:
      return l.neg[static_cast<std::size_t>(eval(in, l, n.left, a))];
    case Kind::And:
      return l.meet_at(eval(in, l, n.left, a), eval(in, l, n.right, a));
    case Kind::Or:
      return l.join_at(eval(in, l, n.left, a), eval(in, l, n.right, a));
  }
  throw Error(Error::Code::Argument, "bad formula kind");
}

Inequality interpret(Interner& in, const Sequent& s) {
  if (s.empty()) return Inequality{in.one(), in.zero()};
  if (s.size() == 1) {
    Annot a = s.member(0);
    if (a.side == Side::L) return Inequality{a.formula, in.zero()};
    return Inequality{in.one(), a.formula};
  }
  Annot a = s.member(0), b = s.member(1);
  if (a.side == Side::L && b.side == Side::R) return Inequality{a.formula, b.formula};
  if (a.side == Side::R && b.side == Side::L) return Inequality{b.formula, a.formula};
  if (a.side == Side::L && b.side == Side::L) {
    return Inequality{a.formula, in.negation(b.formula)};
  }
  return Inequality{in.negation(a.formula), b.formula};
}

bool sequent_holds(Interner& in, const FiniteOrtholattice& l, const Sequent& s,
                   const Assignment& a) {
  Inequality ineq = interpret(in, s);
  return l.leq_at(eval(in, l, ineq.lhs, a), eval(in, l, ineq.rhs, a));
}

}  // namespace ol
