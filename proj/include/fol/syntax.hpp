// Terms and formulas of a first-order language over a user-declared
// signature, with parsing, canonical printing, variable analysis, and
// capture-checked substitution. All types are immutable values; every
// operation here is a pure function.

#ifndef FOL_SYNTAX_HPP
#define FOL_SYNTAX_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fol {

// Names: nonempty ASCII identifiers [a-zA-Z][a-zA-Z0-9_]*. "forall" is
// reserved. Category (constant/function/relation/variable) comes from the
// signature, not the spelling; undeclared identifiers in term position are
// variables.
bool is_identifier(std::string_view name);

class SignatureError : public std::runtime_error {
public:
  explicit SignatureError(const std::string& what) : std::runtime_error(what) {}
};

// A finite first-order signature. Functions have arity >= 1; relations may
// be 0-ary (propositional atoms). Declaration order is significant: the
// Goedel codec assigns symbol codes by it (constants, then functions, then
// relations).
struct Signature {
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, std::size_t>> functions;
  std::vector<std::pair<std::string, std::size_t>> relations;

  bool is_constant(const std::string& name) const;
  std::optional<std::size_t> function_arity(const std::string& name) const;
  std::optional<std::size_t> relation_arity(const std::string& name) const;
  bool declares(const std::string& name) const;

  // Throws SignatureError on duplicate names, bad identifiers, or 0-ary
  // functions.
  void check() const;

  bool operator==(const Signature&) const = default;
};

class Term;
using TermList = std::vector<Term>;

// Immutable term tree. Copies share structure; structural equality.
class Term {
public:
  enum class Kind { Variable, Constant, Function };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term function(std::string name, TermList args);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const TermList& args() const { return node_->args; }

  std::size_t hash() const { return node_->hash; }
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

private:
  struct Node {
    Kind kind;
    std::string name;
    TermList args;
    std::size_t hash;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Immutable formula tree over the connectives ~, ->, forall.
class Formula {
public:
  enum class Kind { Atom, Not, Implies, ForAll };

  static Formula atom(std::string relation, TermList args = {});
  static Formula negation(Formula body);
  static Formula implies(Formula antecedent, Formula consequent);
  static Formula forall(std::string var, Formula body);

  Kind kind() const { return node_->kind; }

  // Atom accessors.
  const std::string& relation() const { return node_->name; }
  const TermList& args() const { return node_->terms; }
  // Not / ForAll body; ForAll bound variable.
  const Formula& body() const { return node_->subs[0]; }
  const std::string& bound_var() const { return node_->name; }
  // Implies accessors.
  const Formula& antecedent() const { return node_->subs[0]; }
  const Formula& consequent() const { return node_->subs[1]; }

  std::size_t hash() const { return node_->hash; }
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

private:
  struct Node {
    Kind kind;
    std::string name;
    TermList terms;
    std::vector<Formula> subs;
    std::size_t hash;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Ordered (lexicographic), duplicate-free set of variable names.
using VariableSet = std::set<std::string>;

VariableSet term_vars(const Term& t);
VariableSet free_vars(const Formula& f);
bool is_closed(const Formula& f);

// Node counts, used as the size measure for search budgets.
std::size_t node_count(const Term& t);
std::size_t node_count(const Formula& f);

// True iff no free occurrence of `var` in `f` lies within the scope of a
// quantifier binding a variable of `t`.
bool is_free_for(const Term& t, const std::string& var, const Formula& f);

class CaptureError : public std::runtime_error {
public:
  CaptureError(const std::string& var, const std::string& term_text);
  std::string variable;
  std::string term;
};

// Replaces every free occurrence of `var` by `t`. Never renames: throws
// CaptureError unless is_free_for(t, var, f).
Formula substitute(const Formula& f, const std::string& var, const Term& t);
Term substitute(const Term& in, const std::string& var, const Term& t);

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   formula := atom | "~" formula | "(" formula "->" formula ")"
//            | "forall" var "." formula
//   atom    := relname | relname "(" term ("," term)* ")"
//   term    := var | constname | funcname "(" term ("," term)* ")"
//
// Parsing is loose: "->" is right-associative without mandatory parentheses
// and redundant grouping parentheses are accepted. Canonical printing always
// parenthesizes implications and a quantified operand of "~".

struct Token {
  enum class Kind { Not, Implies, ForAll, LParen, RParen, Comma, Dot, Ident, End };
  Kind kind = Kind::End;
  std::string text;  // identifier spelling; empty for punctuation
  int line = 0;
  int col = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, int line, int col, std::string token);
  int line;
  int col;
  std::string token;
};

std::vector<Token> tokenize(std::string_view text);

// Canonical token stream of a formula; print_formula renders exactly this
// stream, and the Goedel codec numbers it.
std::vector<Token> formula_tokens(const Formula& f);
std::string render_tokens(const std::vector<Token>& tokens);

std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

Formula parse_formula(std::string_view text, const Signature& sig);
Formula parse_formula(const std::vector<Token>& tokens, const Signature& sig);
Term parse_term(std::string_view text, const Signature& sig);

// Checks arity and category agreement against `sig`; throws SignatureError.
// Parsed objects are valid by construction; this is for hand-built ASTs and
// decoded input.
void validate(const Term& t, const Signature& sig);
void validate(const Formula& f, const Signature& sig);

}  // namespace fol

#endif  // FOL_SYNTAX_HPP
