#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ol {

class Error : public std::runtime_error {
 public:
  enum class Code {
    Signature,
    NotGround,
    NotPreprocessed,
    Parse,
    Resource,
    Argument,
    Shape,
    Cap,
  };

  Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = 0xffffffffu;

enum class Kind : std::uint8_t { Var, Atom, Not, And, Or, Zero, One };

/// Argument of a predicate atom: a term variable or a constant.
struct TermArg {
  bool is_var = false;
  std::string name;

  friend bool operator==(const TermArg& a, const TermArg& b) {
    return a.is_var == b.is_var && a.name == b.name;
  }
};

struct FormulaNode {
  Kind kind = Kind::Zero;
  FormulaId left = kNoFormula;   // Not child, And/Or left
  FormulaId right = kNoFormula;  // And/Or right
  std::string name;              // Var name or Atom predicate
  std::vector<TermArg> args;     // Atom arguments
};

/// Hash-consing term store. Structurally equal formulas get equal ids and
/// children always have smaller ids than their parents. The store is
/// append-only: readers may look up published ids concurrently while new
/// interning is serialized.
class Interner {
 public:
  FormulaId var(std::string_view name);
  FormulaId atom(std::string_view predicate, std::vector<TermArg> args);
  FormulaId negation(FormulaId child);
  FormulaId conj(FormulaId left, FormulaId right);
  FormulaId disj(FormulaId left, FormulaId right);
  FormulaId zero();
  FormulaId one();

  const FormulaNode& node(FormulaId id) const;
  std::size_t size() const { return published_.load(std::memory_order_acquire); }

 private:
  FormulaId add(const std::string& key, FormulaNode node);

  mutable std::mutex mu_;
  std::deque<FormulaNode> nodes_;
  std::atomic<std::size_t> published_{0};
  std::unordered_map<std::string, FormulaId> index_;
};

enum class Side : std::uint8_t { L = 0, R = 1 };

inline Side flip(Side s) { return s == Side::L ? Side::R : Side::L; }

/// Side-annotated formula.
struct Annot {
  FormulaId formula = kNoFormula;
  Side side = Side::L;

  std::uint32_t code() const { return formula * 2u + static_cast<std::uint32_t>(side); }
  static Annot from_code(std::uint32_t c) {
    return Annot{c / 2u, static_cast<Side>(c & 1u)};
  }
  friend bool operator==(const Annot& a, const Annot& b) {
    return a.formula == b.formula && a.side == b.side;
  }
};

/// A set of at most two annotated formulas, stored in canonical order
/// (ascending formula id, L before R on ties).
class Sequent {
 public:
  Sequent() = default;
  explicit Sequent(Annot a) : size_(1) { m_[0] = a.code(); }
  Sequent(Annot a, Annot b);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Annot member(int i) const { return Annot::from_code(m_[static_cast<std::size_t>(i)]); }
  bool contains(Annot a) const;

  /// Set insertion; throws Error::Argument past two members.
  Sequent with(Annot a) const;
  Sequent without(Annot a) const;

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(m_[0]) << 32) | m_[1];
  }

  bool is_subset_of(const Sequent& other) const;

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.key() == b.key();
  }

 private:
  static constexpr std::uint32_t kEmptySlot = 0xffffffffu;
  std::array<std::uint32_t, 2> m_{kEmptySlot, kEmptySlot};
  int size_ = 0;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    return std::hash<std::uint64_t>{}(s.key());
  }
};

/// Deduction problem: axiom sequents plus a goal sequent.
struct Problem {
  std::vector<Sequent> axioms;
  Sequent goal;

  /// Validates: axioms nonempty as sequents, duplicate-free, and none of the
  /// trivial shape {f^L, f^R}.
  static Problem make(std::vector<Sequent> axioms, Sequent goal);
};

// ---- formula utilities ----

/// f plus all transitive children, in discovery (DFS) order.
std::vector<FormulaId> subformulas(const Interner& in, FormulaId f);

/// Number of distinct subformulas across all members of the given sequents.
std::size_t subformula_count(const Interner& in, const std::vector<Sequent>& seqs);
std::size_t subformula_count(const Interner& in, const Sequent& s);

/// Collects variable ids (Kind::Var leaves) of a formula.
void collect_vars(const Interner& in, FormulaId f, std::unordered_set<FormulaId>& out);

bool contains_kind(const Interner& in, FormulaId f, Kind k);
bool problem_contains_kind(const Interner& in, const Problem& p, Kind k);

// ---- finite ortholattices ----

struct FiniteOrtholattice {
  std::string name;
  int n = 0;
  std::vector<std::uint8_t> leq;  // n*n
  std::vector<int> meet;          // n*n
  std::vector<int> join;          // n*n
  std::vector<int> neg;           // n
  int bottom = 0;
  int top = 0;

  bool leq_at(int a, int b) const { return leq[static_cast<std::size_t>(a * n + b)] != 0; }
  int meet_at(int a, int b) const { return meet[static_cast<std::size_t>(a * n + b)]; }
  int join_at(int a, int b) const { return join[static_cast<std::size_t>(a * n + b)]; }
};

/// Builds meet/join tables from an order relation; throws Error::Argument if
/// glb/lub are not everywhere defined.
FiniteOrtholattice lattice_from_order(std::string name, int n,
                                      const std::vector<std::uint8_t>& leq,
                                      std::vector<int> neg);

FiniteOrtholattice o6();
FiniteOrtholattice m4();
/// Boolean algebra 2^k for k in [0, 3]: elements are bitmasks.
FiniteOrtholattice boolean_lattice(int k);

struct LawViolation {
  std::string law;
  std::vector<int> witness;
};

bool check_ortholattice(const FiniteOrtholattice& l, LawViolation* violation = nullptr);

/// Assignment of lattice elements to variable ids.
using Assignment = std::unordered_map<FormulaId, int>;

/// Bottom-up evaluation; throws Error::Argument on an unassigned variable.
int eval(const Interner& in, const FiniteOrtholattice& l, FormulaId f, const Assignment& a);

struct Inequality {
  FormulaId lhs = kNoFormula;
  FormulaId rhs = kNoFormula;
};

/// Def-table reading of a sequent as a single ortholattice inequality. May
/// intern negations and the 0/1 constants.
Inequality interpret(Interner& in, const Sequent& s);

/// Truth of interpret(s) in l under a.
bool sequent_holds(Interner& in, const FiniteOrtholattice& l, const Sequent& s,
                   const Assignment& a);

}  // namespace ol
