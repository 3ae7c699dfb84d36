#pragma once

#include "rc/rational.hpp"
#include "rc/types.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

enum class Sort { Real, Int };

struct Var {
  std::string name;
  Sort sort = Sort::Real;
  friend bool operator==(const Var&, const Var&) = default;
};

// Σ coef[v]·v rel rhs over variable indices.
struct LinAtom {
  std::map<int, Q> coef;
  Q rhs;
  Rel rel = Rel::LE;

  Q coefficient(int v) const {
    auto it = coef.find(v);
    return it == coef.end() ? Q(0) : it->second;
  }
  bool mentions(int v) const { return coef.count(v) > 0; }
  void add_term(int v, const Q& c) {
    if (c == 0) return;
    Q& x = coef[v];
    x += c;
    if (x == 0) coef.erase(v);
  }
  bool holds(const std::vector<Q>& val) const {
    Q s = 0;
    for (const auto& [v, c] : coef) s += c * val[v];
    switch (rel) {
      case Rel::LE: return s <= rhs;
      case Rel::LT: return s < rhs;
      case Rel::EQ: return s == rhs;
    }
    return false;
  }
  friend bool operator==(const LinAtom&, const LinAtom&) = default;
};

using Conjunction = std::vector<LinAtom>;
using Dnf = std::vector<Conjunction>;

struct Formula {
  enum class Kind { True, False, Atom, And, Or, Not };
  Kind kind = Kind::True;
  LinAtom atom;
  std::vector<Formula> kids;

  static Formula truth() { return {}; }
  static Formula falsity() { return {Kind::False, {}, {}}; }
  static Formula of(LinAtom a) { return {Kind::Atom, std::move(a), {}}; }
  static Formula all(std::vector<Formula> k) { return {Kind::And, {}, std::move(k)}; }
  static Formula any(std::vector<Formula> k) { return {Kind::Or, {}, std::move(k)}; }
  static Formula negation(Formula f) { return {Kind::Not, {}, {std::move(f)}}; }
  friend bool operator==(const Formula&, const Formula&) = default;
};

struct BcliFormula {
  std::vector<Var> vars;
  Formula root;

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].name == name) return static_cast<int>(i);
    return -1;
  }
  int add_var(std::string name, Sort s) {
    vars.push_back({std::move(name), s});
    return static_cast<int>(vars.size()) - 1;
  }
  // Name not yet declared, of the form prefix + number.
  std::string fresh_name(const std::string& prefix) const {
    for (int i = 1;; ++i) {
      std::string n = prefix + std::to_string(i);
      if (index_of(n) < 0) return n;
    }
  }
};

inline bool evaluate(const Formula& f, const std::vector<Q>& val) {
  switch (f.kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: return f.atom.holds(val);
    case Formula::Kind::Not: return !evaluate(f.kids[0], val);
    case Formula::Kind::And:
      for (const auto& k : f.kids)
        if (!evaluate(k, val)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& k : f.kids)
        if (evaluate(k, val)) return true;
      return false;
  }
  return false;
}

// ¬(atom) as a disjunction of atoms.
inline std::vector<LinAtom> negate_atom(const LinAtom& a) {
  LinAtom n;
  for (const auto& [v, c] : a.coef) n.coef[v] = -c;
  n.rhs = -a.rhs;
  switch (a.rel) {
    case Rel::LE: n.rel = Rel::LT; return {n};
    case Rel::LT: n.rel = Rel::LE; return {n};
    case Rel::EQ: {
      LinAtom lo = a;
      lo.rel = Rel::LT;
      n.rel = Rel::LT;
      return {lo, n};
    }
  }
  return {};
}

namespace detail {

inline Dnf dnf_of(const Formula& f, bool neg) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return neg ? Dnf{} : Dnf{Conjunction{}};
    case K::False: return neg ? Dnf{Conjunction{}} : Dnf{};
    case K::Atom: {
      if (!neg) return {Conjunction{f.atom}};
      Dnf out;
      for (auto& a : negate_atom(f.atom)) out.push_back({a});
      return out;
    }
    case K::Not: return dnf_of(f.kids[0], !neg);
    case K::And:
    case K::Or: {
      bool conj = (f.kind == K::And) != neg;
      if (!conj) {
        Dnf out;
        for (const auto& k : f.kids)
          for (auto& c : dnf_of(k, neg)) out.push_back(std::move(c));
        return out;
      }
      Dnf acc{Conjunction{}};
      for (const auto& k : f.kids) {
        Dnf part = dnf_of(k, neg), next;
        for (const auto& x : acc)
          for (const auto& y : part) {
            Conjunction c = x;
            c.insert(c.end(), y.begin(), y.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
  }
  return {};
}

}  // namespace detail

inline Dnf dnf_terms(const Formula& f) { return detail::dnf_of(f, false); }

inline Formula from_dnf(const Dnf& D) {
  std::vector<Formula> ors;
  for (const auto& c : D) {
    std::vector<Formula> ands;
    for (const auto& a : c) ands.push_back(Formula::of(a));
    ors.push_back(Formula::all(std::move(ands)));
  }
  return Formula::any(std::move(ors));
}

// Disjunction of conjunctions of atoms; negations absorbed into relation flips.
inline BcliFormula to_dnf(const BcliFormula& F) { return {F.vars, from_dnf(dnf_terms(F.root))}; }

// ---- s-expression text format ----

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& m)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + m), line(l), col(c) {}
};

namespace detail {

struct SNode {
  bool list = false;
  std::string atom;
  std::vector<SNode> items;
  int line = 1, col = 1;
};

class SReader {
 public:
  explicit SReader(std::string_view s) : s_(s) {}

  std::vector<SNode> read_all() {
    std::vector<SNode> out;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  SNode read() {
    skip();
    SNode n;
    n.line = line_;
    n.col = col_;
    if (pos_ >= s_.size()) throw ParseError(line_, col_, "unexpected end of input");
    if (s_[pos_] == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (s_[pos_] == '(') {
      n.list = true;
      advance();
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw ParseError(n.line, n.col, "unclosed '('");
        if (s_[pos_] == ')') {
          advance();
          return n;
        }
        n.items.push_back(read());
      }
    }
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ';' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      n.atom.push_back(s_[pos_]);
      advance();
    }
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

inline bool is_number(const std::string& t) {
  if (t.empty()) return false;
  std::size_t i = t[0] == '-' ? 1 : 0;
  if (i >= t.size()) return false;
  bool digit = false, slash = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digit = true;
    } else if (t[i] == '/' && !slash && digit) {
      slash = true;
      digit = false;
    } else {
      return false;
    }
  }
  return digit;
}

// Affine expression: coefficients plus constant.
struct Affine {
  std::map<int, Q> coef;
  Q c = 0;
  bool constant() const { return coef.empty(); }
};

class FormulaBuilder {
 public:
  explicit FormulaBuilder(BcliFormula& F) : F_(F) {}

  Affine expr(const SNode& n) {
    if (!n.list) {
      if (is_number(n.atom)) {
        try {
          return {{}, parse_q(n.atom)};
        } catch (const std::exception&) {
          throw ParseError(n.line, n.col, "bad number '" + n.atom + "'");
        }
      }
      int v = F_.index_of(n.atom);
      if (v < 0) throw ParseError(n.line, n.col, "undeclared variable '" + n.atom + "'");
      return {{{v, Q(1)}}, Q(0)};
    }
    if (n.items.empty() || n.items[0].list) throw ParseError(n.line, n.col, "expected an operator");
    const std::string& op = n.items[0].atom;
    std::vector<Affine> args;
    for (std::size_t i = 1; i < n.items.size(); ++i) args.push_back(expr(n.items[i]));
    if (op == "+") {
      Affine r;
      for (auto& a : args) accumulate(r, a, Q(1));
      return r;
    }
    if (op == "-") {
      if (args.empty()) throw ParseError(n.line, n.col, "'-' needs an argument");
      if (args.size() == 1) {
        Affine r;
        accumulate(r, args[0], Q(-1));
        return r;
      }
      Affine r = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) accumulate(r, args[i], Q(-1));
      return r;
    }
    if (op == "*") {
      Affine r{{}, Q(1)};
      for (auto& a : args) {
        if (a.constant()) {
          for (auto& [v, c] : r.coef) c *= a.c;
          r.c *= a.c;
        } else if (r.constant()) {
          Q s = r.c;
          r = a;
          for (auto& [v, c] : r.coef) c *= s;
          r.c *= s;
        } else {
          throw ParseError(n.line, n.col, "nonlinear product");
        }
      }
      prune(r);
      return r;
    }
    throw ParseError(n.items[0].line, n.items[0].col, "unknown operator '" + op + "'");
  }

  Formula formula(const SNode& n) {
    if (!n.list) {
      if (n.atom == "true") return Formula::truth();
      if (n.atom == "false") return Formula::falsity();
      throw ParseError(n.line, n.col, "expected a formula, got '" + n.atom + "'");
    }
    if (n.items.empty() || n.items[0].list) throw ParseError(n.line, n.col, "expected a connective");
    const std::string& op = n.items[0].atom;
    if (op == "and" || op == "or") {
      std::vector<Formula> kids;
      for (std::size_t i = 1; i < n.items.size(); ++i) kids.push_back(formula(n.items[i]));
      return op == "and" ? Formula::all(std::move(kids)) : Formula::any(std::move(kids));
    }
    if (op == "not") {
      if (n.items.size() != 2) throw ParseError(n.line, n.col, "'not' takes one argument");
      return Formula::negation(formula(n.items[1]));
    }
    static const char* rels[] = {"<=", "<", ">=", ">", "="};
    for (const char* r : rels) {
      if (op != r) continue;
      if (n.items.size() != 3) throw ParseError(n.line, n.col, "'" + op + "' takes two arguments");
      Affine l = expr(n.items[1]), rt = expr(n.items[2]);
      // normalise to lhs - rhs rel 0, then to Σ ≤/</= const
      Affine d = l;
      accumulate(d, rt, Q(-1));
      LinAtom a;
      Q sign = (op == ">=" || op == ">") ? Q(-1) : Q(1);
      for (auto& [v, c] : d.coef) a.coef[v] = sign * c;
      a.rhs = -sign * d.c;
      a.rel = (op == "<" || op == ">") ? Rel::LT : (op == "=" ? Rel::EQ : Rel::LE);
      return Formula::of(std::move(a));
    }
    throw ParseError(n.items[0].line, n.items[0].col, "unknown connective '" + op + "'");
  }

 private:
  static void accumulate(Affine& r, const Affine& a, const Q& s) {
    for (const auto& [v, c] : a.coef) r.coef[v] += s * c;
    r.c += s * a.c;
    prune(r);
  }
  static void prune(Affine& r) {
    for (auto it = r.coef.begin(); it != r.coef.end();)
      it = it->second == 0 ? r.coef.erase(it) : std::next(it);
  }

  BcliFormula& F_;
};

}  // namespace detail

// Text of the form (vars (y1 real) (z int)) (formula <formula>).
inline BcliFormula parse_formula(std::string_view text) {
  detail::SReader rd(text);
  auto top = rd.read_all();
  BcliFormula F;
  bool have_vars = false, have_formula = false;
  for (const auto& n : top) {
    if (!n.list || n.items.empty() || n.items[0].list)
      throw ParseError(n.line, n.col, "expected (vars ...) or (formula ...)");
    const std::string& head = n.items[0].atom;
    if (head == "vars") {
      if (have_vars) throw ParseError(n.line, n.col, "duplicate vars block");
      have_vars = true;
      for (std::size_t i = 1; i < n.items.size(); ++i) {
        const auto& d = n.items[i];
        if (!d.list || d.items.size() != 2 || d.items[0].list || d.items[1].list)
          throw ParseError(d.line, d.col, "expected (name real|int)");
        const std::string& name = d.items[0].atom;
        const std::string& sort = d.items[1].atom;
        if (detail::is_number(name)) throw ParseError(d.line, d.col, "bad variable name");
        if (F.index_of(name) >= 0) throw ParseError(d.line, d.col, "duplicate variable '" + name + "'");
        if (sort != "real" && sort != "int") throw ParseError(d.items[1].line, d.items[1].col, "unknown sort '" + sort + "'");
        F.add_var(name, sort == "int" ? Sort::Int : Sort::Real);
      }
    } else if (head == "formula") {
      if (!have_vars) throw ParseError(n.line, n.col, "formula before vars");
      if (have_formula) throw ParseError(n.line, n.col, "duplicate formula block");
      if (n.items.size() != 2) throw ParseError(n.line, n.col, "formula block takes one formula");
      have_formula = true;
      detail::FormulaBuilder B(F);
      F.root = B.formula(n.items[1]);
    } else {
      throw ParseError(n.line, n.col, "unknown block '" + head + "'");
    }
  }
  if (!have_formula) throw ParseError(1, 1, "missing formula block");
  return F;
}

inline std::string to_sexpr(const BcliFormula& F, const LinAtom& a) {
  std::ostringstream os;
  os << "(" << (a.rel == Rel::LE ? "<=" : a.rel == Rel::LT ? "<" : "=") << " (+";
  for (const auto& [v, c] : a.coef) os << " (* " << to_string(c) << " " << F.vars[v].name << ")";
  os << ") " << to_string(a.rhs) << ")";
  return os.str();
}

inline std::string to_sexpr(const BcliFormula& F, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return to_sexpr(F, f.atom);
    case K::Not: return "(not " + to_sexpr(F, f.kids[0]) + ")";
    case K::And:
    case K::Or: {
      std::string s = f.kind == K::And ? "(and" : "(or";
      for (const auto& k : f.kids) s += " " + to_sexpr(F, k);
      return s + ")";
    }
  }
  return "";
}

inline std::string to_sexpr(const BcliFormula& F) {
  std::string s = "(vars";
  for (const auto& v : F.vars) s += " (" + v.name + (v.sort == Sort::Int ? " int)" : " real)");
  return s + ")\n(formula " + to_sexpr(F, F.root) + ")\n";
}

}  // namespace rc
