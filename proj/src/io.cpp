#include "ol/io.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ol {

namespace {

// ---- lexer ----

enum class Tok {
  Ident,
  Zero,
  One,
  Amp,
  Bar,
  Tilde,
  LParen,
  RParen,
  Comma,
  Turnstile,
  Dot,
  End,
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  throw Error(Error::Code::Parse,
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

class Lexer {
 public:
  Lexer(std::string_view text, bool allow_reserved)
      : text_(text), allow_reserved_(allow_reserved) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
        continue;
      }
      break;
    }
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_ = Token{Tok::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Tok t) {
      current_ = Token{t, std::string(1, c), line_, col_};
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '&': single(Tok::Amp); return;
      case '~': single(Tok::Tilde); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case ',': single(Tok::Comma); return;
      case '.': single(Tok::Dot); return;
      case '|':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          current_ = Token{Tok::Turnstile, "|-", line_, col_};
          pos_ += 2;
          col_ += 2;
        } else {
          single(Tok::Bar);
        }
        return;
      case '0': single(Tok::Zero); return;
      case '1': single(Tok::One); return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t start = pos_;
      int start_col = col_;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '$' ||
            d == '\'') {
          ++pos_;
          ++col_;
        } else {
          break;
        }
      }
      std::string name(text_.substr(start, pos_ - start));
      if (!allow_reserved_ && name.find('$') != std::string::npos)
        fail_at(line_, start_col, "identifier '" + name + "' uses the reserved $ namespace");
      current_ = Token{Tok::Ident, std::move(name), line_, start_col};
      return;
    }
    fail_at(line_, col_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  bool allow_reserved_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

// ---- formula parser ----

struct FormulaParser {
  Lexer& lex;
  Interner& in;
  bool saw_atom = false;
  // predicate -> (arity, first-seen position) for consistency checks
  std::map<std::string, int>* arities = nullptr;
  std::set<std::string>* constants = nullptr;

  FormulaId parse_or() {
    FormulaId l = parse_and();
    if (lex.peek().type == Tok::Bar) {
      lex.take();
      return in.disj(l, parse_or());
    }
    return l;
  }

  FormulaId parse_and() {
    FormulaId l = parse_unary();
    if (lex.peek().type == Tok::Amp) {
      lex.take();
      return in.conj(l, parse_and());
    }
    return l;
  }

  FormulaId parse_unary() {
    if (lex.peek().type == Tok::Tilde) {
      lex.take();
      return in.negation(parse_unary());
    }
    return parse_primary();
  }

  FormulaId parse_primary() {
    Token t = lex.take();
    switch (t.type) {
      case Tok::Zero: return in.zero();
      case Tok::One: return in.one();
      case Tok::LParen: {
        FormulaId f = parse_or();
        Token close = lex.take();
        if (close.type != Tok::RParen)
          fail_at(close.line, close.col, "expected ')'");
        return f;
      }
      case Tok::Ident: {
        if (lex.peek().type != Tok::LParen) return in.var(t.text);
        lex.take();  // '('
        std::vector<TermArg> args;
        if (lex.peek().type != Tok::RParen) {
          while (true) {
            Token a = lex.take();
            if (a.type != Tok::Ident)
              fail_at(a.line, a.col, "expected a term (variable or constant)");
            bool is_var = std::isupper(static_cast<unsigned char>(a.text[0])) != 0;
            args.push_back(TermArg{is_var, a.text});
            if (constants && !is_var) constants->insert(a.text);
            if (lex.peek().type == Tok::Comma) {
              lex.take();
              continue;
            }
            break;
          }
        }
        Token close = lex.take();
        if (close.type != Tok::RParen) fail_at(close.line, close.col, "expected ')'");
        saw_atom = true;
        if (arities) {
          auto [it, inserted] = arities->emplace(t.text, static_cast<int>(args.size()));
          if (!inserted && it->second != static_cast<int>(args.size()))
            fail_at(t.line, t.col,
                    "predicate '" + t.text + "' used with arity " +
                        std::to_string(args.size()) + " after arity " +
                        std::to_string(it->second));
        }
        return in.atom(t.text, std::move(args));
      }
      default:
        fail_at(t.line, t.col, "expected a formula");
    }
  }
};

bool starts_formula(Tok t) {
  return t == Tok::Ident || t == Tok::Zero || t == Tok::One || t == Tok::Tilde ||
         t == Tok::LParen;
}

Sequent parse_sequent(Lexer& lex, FormulaParser& fp) {
  std::vector<Annot> members;
  auto side_list = [&](Side side) {
    while (starts_formula(lex.peek().type)) {
      Token at = lex.peek();
      // "axiom" and "goal" are reserved statement keywords, never variables;
      // they end the member list (e.g. after an empty right-hand side).
      if (at.type == Tok::Ident && (at.text == "axiom" || at.text == "goal")) break;
      FormulaId f = fp.parse_or();
      if (members.size() == 2)
        fail_at(at.line, at.col, "a sequent has at most two formulas");
      members.push_back(Annot{f, side});
      if (lex.peek().type == Tok::Comma) {
        lex.take();
        continue;
      }
      break;
    }
  };
  side_list(Side::L);
  Token t = lex.take();
  if (t.type != Tok::Turnstile) fail_at(t.line, t.col, "expected '|-'");
  side_list(Side::R);
  Sequent s;
  for (const Annot& a : members) {
    if (s.contains(a)) continue;
    if (s.size() == 2)
      fail_at(t.line, t.col, "a sequent has at most two formulas");
    s = s.with(a);
  }
  return s;
}

}  // namespace

ParsedProblem parse_problem(Interner& in, std::string_view text, bool allow_reserved) {
  Lexer lex(text, allow_reserved);
  std::map<std::string, int> arities;
  std::set<std::string> constants;
  FormulaParser fp{lex, in, false, &arities, &constants};

  std::vector<Sequent> axioms;
  Sequent goal;
  bool have_goal = false;

  while (lex.peek().type != Tok::End) {
    Token kw = lex.take();
    if (kw.type != Tok::Ident || (kw.text != "axiom" && kw.text != "goal"))
      fail_at(kw.line, kw.col, "expected 'axiom' or 'goal'");
    Sequent s = parse_sequent(lex, fp);
    if (kw.text == "axiom") {
      if (s.empty()) fail_at(kw.line, kw.col, "an axiom sequent must be nonempty");
      axioms.push_back(s);
    } else {
      if (have_goal) fail_at(kw.line, kw.col, "duplicate goal");
      goal = s;
      have_goal = true;
    }
    if (lex.peek().type == Tok::Dot) lex.take();
  }

  if (!fp.saw_atom) return Problem::make(std::move(axioms), goal);

  EprProblem p;
  p.signature.predicates = std::move(arities);
  p.signature.constants = std::move(constants);
  p.axioms = std::move(axioms);
  p.goal = goal;
  return p;
}

bool is_epr(const ParsedProblem& p) { return std::holds_alternative<EprProblem>(p); }

FormulaId parse_formula(Interner& in, std::string_view text, bool allow_reserved) {
  Lexer lex(text, allow_reserved);
  FormulaParser fp{lex, in, false, nullptr, nullptr};
  FormulaId f = fp.parse_or();
  Token t = lex.take();
  if (t.type != Tok::End) fail_at(t.line, t.col, "trailing input after formula");
  return f;
}

// ---- printing ----

std::string formula_to_string(const Interner& in, FormulaId f) {
  const FormulaNode& n = in.node(f);
  auto wrap = [&](FormulaId child) {
    Kind k = in.node(child).kind;
    std::string s = formula_to_string(in, child);
    if (k == Kind::And || k == Kind::Or) return "(" + s + ")";
    return s;
  };
  switch (n.kind) {
    case Kind::Var: return n.name;
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Not: return "~" + wrap(n.left);
    case Kind::And: return wrap(n.left) + " & " + wrap(n.right);
    case Kind::Or: return wrap(n.left) + " | " + wrap(n.right);
    case Kind::Atom: {
      std::string s = n.name + "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) s += ",";
        s += n.args[i].name;
      }
      return s + ")";
    }
  }
  throw Error(Error::Code::Argument, "unknown formula kind");
}

std::string sequent_to_string(const Interner& in, const Sequent& s) {
  std::string lhs, rhs;
  for (int i = 0; i < s.size(); ++i) {
    Annot a = s.member(i);
    std::string& side = a.side == Side::L ? lhs : rhs;
    if (!side.empty()) side += ", ";
    side += formula_to_string(in, a.formula);
  }
  std::string out = lhs;
  out += lhs.empty() ? "|-" : " |-";
  if (!rhs.empty()) out += " " + rhs;
  return out;
}

std::string print_problem(const Interner& in, const Problem& p) {
  std::string out;
  for (const Sequent& a : p.axioms) out += "axiom " + sequent_to_string(in, a) + "\n";
  out += "goal " + sequent_to_string(in, p.goal) + "\n";
  return out;
}

std::string print_problem(const Interner& in, const EprProblem& p) {
  std::string out;
  for (const Sequent& a : p.axioms) out += "axiom " + sequent_to_string(in, a) + "\n";
  out += "goal " + sequent_to_string(in, p.goal) + "\n";
  return out;
}

// ---- DIMACS ----

CnfInstance parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  std::istringstream is{std::string(text)};
  std::string line;
  CnfInstance out;
  long declared_clauses = -1;
  long seen_clauses = 0;
  Clause current;
  bool tautological = false;
  int line_no = 0;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hs{line};
      std::string p, cnf;
      long v = -1, c = -1;
      hs >> p >> cnf >> v >> c;
      if (p != "p" || cnf != "cnf" || v < 0 || c < 0 || !hs)
        fail_at(line_no, 1, "malformed DIMACS header (expected 'p cnf V C')");
      if (declared_clauses >= 0) fail_at(line_no, 1, "duplicate DIMACS header");
      out.num_vars = static_cast<int>(v);
      declared_clauses = c;
      continue;
    }
    if (declared_clauses < 0) fail_at(line_no, 1, "clause before DIMACS header");
    std::istringstream ls{line};
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        ++seen_clauses;
        if (tautological) {
          if (warnings)
            warnings->push_back("dropped tautological clause " +
                                std::to_string(seen_clauses));
        } else {
          out.clauses.push_back(current);
        }
        current = Clause{};
        tautological = false;
        continue;
      }
      long v = lit > 0 ? lit : -lit;
      if (v < 1 || v > out.num_vars)
        fail_at(line_no, 1, "literal " + std::to_string(lit) + " out of range");
      bool pol = lit > 0;
      auto it = current.literals.find(static_cast<int>(v));
      if (it != current.literals.end() && it->second != pol) tautological = true;
      current.literals[static_cast<int>(v)] = pol;
    }
    if (!ls.eof()) fail_at(line_no, 1, "malformed clause literal");
  }
  if (!current.literals.empty())
    throw Error(Error::Code::Parse, "unterminated final clause (missing 0)");
  if (declared_clauses < 0) throw Error(Error::Code::Parse, "missing DIMACS header");
  if (seen_clauses != declared_clauses)
    throw Error(Error::Code::Parse,
                "clause count mismatch: header says " + std::to_string(declared_clauses) +
                    ", found " + std::to_string(seen_clauses));
  return out;
}

// ---- proofs ----

std::string emit_proof(const Interner& in, const ProofPtr& p) {
  std::unordered_map<const Proof*, std::size_t> index;
  std::string out;
  std::function<std::size_t(const ProofPtr&)> emit = [&](const ProofPtr& node) {
    auto it = index.find(node.get());
    if (it != index.end()) return it->second;
    std::vector<std::size_t> prem;
    prem.reserve(node->premises.size());
    for (const ProofPtr& q : node->premises) prem.push_back(emit(q));
    std::size_t idx = index.size();
    index[node.get()] = idx;
    out += std::to_string(idx);
    out += ' ';
    out += rule_name(node->rule);
    if (node->rule == Rule::Cut)
      out += "{" + formula_to_string(in, node->cut_formula) + "}";
    out += " [" + sequent_to_string(in, node->conclusion) + "]";
    for (std::size_t q : prem) out += " " + std::to_string(q);
    out += '\n';
    return idx;
  };
  emit(p);
  return out;
}

ProofPtr parse_proof(Interner& in, std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::unordered_map<std::size_t, ProofPtr> nodes;
  ProofPtr last;
  int line_no = 0;

  while (std::getline(is, line)) {
    ++line_no;
    std::string_view lv{line};
    auto strip = [&]() {
      while (!lv.empty() && std::isspace(static_cast<unsigned char>(lv.front())))
        lv.remove_prefix(1);
    };
    strip();
    if (lv.empty() || lv.front() == '#') continue;

    std::size_t pos = 0;
    while (pos < lv.size() && std::isdigit(static_cast<unsigned char>(lv[pos]))) ++pos;
    if (pos == 0) fail_at(line_no, 1, "expected a node index");
    std::size_t idx = std::stoull(std::string(lv.substr(0, pos)));
    lv.remove_prefix(pos);
    strip();

    pos = 0;
    while (pos < lv.size() && std::isalpha(static_cast<unsigned char>(lv[pos]))) ++pos;
    std::string rname{lv.substr(0, pos)};
    auto rule = rule_from_name(rname);
    if (!rule) fail_at(line_no, 1, "unknown rule tag '" + rname + "'");
    lv.remove_prefix(pos);

    FormulaId cut_formula = kNoFormula;
    if (!lv.empty() && lv.front() == '{') {
      std::size_t close = lv.find('}');
      if (close == std::string_view::npos) fail_at(line_no, 1, "unterminated cut formula");
      cut_formula = parse_formula(in, lv.substr(1, close - 1), /*allow_reserved=*/true);
      lv.remove_prefix(close + 1);
    }
    strip();

    if (lv.empty() || lv.front() != '[') fail_at(line_no, 1, "expected '[' conclusion");
    std::size_t close = lv.find(']');
    if (close == std::string_view::npos) fail_at(line_no, 1, "unterminated conclusion");
    std::string seq_text{lv.substr(1, close - 1)};
    lv.remove_prefix(close + 1);

    Lexer slex(seq_text, /*allow_reserved=*/true);
    FormulaParser fp{slex, in, false, nullptr, nullptr};
    Sequent conclusion = parse_sequent(slex, fp);
    if (slex.peek().type != Tok::End)
      fail_at(line_no, 1, "trailing input in conclusion");

    std::vector<ProofPtr> premises;
    std::istringstream ps{std::string(lv)};
    long prem;
    while (ps >> prem) {
      auto it = nodes.find(static_cast<std::size_t>(prem));
      if (prem < 0 || it == nodes.end())
        fail_at(line_no, 1, "dangling premise index " + std::to_string(prem));
      premises.push_back(it->second);
    }
    if (!ps.eof()) fail_at(line_no, 1, "malformed premise index");

    if (nodes.count(idx)) fail_at(line_no, 1, "duplicate node index");
    ProofPtr node = Proof::make(conclusion, *rule, std::move(premises), cut_formula);
    nodes[idx] = node;
    last = node;
  }
  if (!last) throw Error(Error::Code::Parse, "empty proof");
  return last;
}

}  // namespace ol
