#include "fol/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fol {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_string(const std::string& s) {
  return std::hash<std::string>{}(s);
}

}  // namespace

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return name != "forall";
}

// --- Signature ---------------------------------------------------------------

bool Signature::is_constant(const std::string& name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

std::optional<std::size_t> Signature::function_arity(const std::string& name) const {
  for (const auto& [n, a] : functions)
    if (n == name) return a;
  return std::nullopt;
}

std::optional<std::size_t> Signature::relation_arity(const std::string& name) const {
  for (const auto& [n, a] : relations)
    if (n == name) return a;
  return std::nullopt;
}

bool Signature::declares(const std::string& name) const {
  return is_constant(name) || function_arity(name) || relation_arity(name);
}

void Signature::check() const {
  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (!is_identifier(name))
      throw SignatureError("bad symbol name '" + name + "'");
    if (!seen.insert(name).second)
      throw SignatureError("duplicate symbol name '" + name + "'");
  };
  for (const auto& c : constants) claim(c);
  for (const auto& [n, a] : functions) {
    claim(n);
    if (a == 0) throw SignatureError("function '" + n + "' must have arity >= 1");
  }
  for (const auto& [n, a] : relations) claim(n);
}

// --- Term --------------------------------------------------------------------

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->name = std::move(name);
  node->hash = hash_combine(1, hash_string(node->name));
  return Term(std::move(node));
}

Term Term::constant(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->name = std::move(name);
  node->hash = hash_combine(2, hash_string(node->name));
  return Term(std::move(node));
}

Term Term::function(std::string name, TermList args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Function;
  node->name = std::move(name);
  node->args = std::move(args);
  std::size_t h = hash_combine(3, hash_string(node->name));
  for (const auto& a : node->args) h = hash_combine(h, a.hash());
  node->hash = h;
  return Term(std::move(node));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  if (node_->kind != other.node_->kind || node_->name != other.node_->name) return false;
  if (node_->args.size() != other.node_->args.size()) return false;
  for (std::size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == other.node_->args[i])) return false;
  return true;
}

// --- Formula -----------------------------------------------------------------

Formula Formula::atom(std::string relation, TermList args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->name = std::move(relation);
  node->terms = std::move(args);
  std::size_t h = hash_combine(11, hash_string(node->name));
  for (const auto& t : node->terms) h = hash_combine(h, t.hash());
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::negation(Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->hash = hash_combine(12, body.hash());
  node->subs.push_back(std::move(body));
  return Formula(std::move(node));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Implies;
  node->hash = hash_combine(hash_combine(13, antecedent.hash()), consequent.hash());
  node->subs.push_back(std::move(antecedent));
  node->subs.push_back(std::move(consequent));
  return Formula(std::move(node));
}

Formula Formula::forall(std::string var, Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::ForAll;
  node->name = std::move(var);
  node->hash = hash_combine(hash_combine(14, hash_string(node->name)), body.hash());
  node->subs.push_back(std::move(body));
  return Formula(std::move(node));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  if (node_->kind != other.node_->kind || node_->name != other.node_->name) return false;
  if (node_->terms.size() != other.node_->terms.size()) return false;
  for (std::size_t i = 0; i < node_->terms.size(); ++i)
    if (!(node_->terms[i] == other.node_->terms[i])) return false;
  if (node_->subs.size() != other.node_->subs.size()) return false;
  for (std::size_t i = 0; i < node_->subs.size(); ++i)
    if (!(node_->subs[i] == other.node_->subs[i])) return false;
  return true;
}

// --- Variable analysis ---------------------------------------------------------

namespace {

void collect_term_vars(const Term& t, VariableSet& out) {
  if (t.kind() == Term::Kind::Variable) {
    out.insert(t.name());
  } else {
    for (const auto& a : t.args()) collect_term_vars(a, out);
  }
}

void collect_free_vars(const Formula& f, std::set<std::string>& bound, VariableSet& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      VariableSet vs;
      for (const auto& t : f.args()) collect_term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Formula::Kind::Not:
      collect_free_vars(f.body(), bound, out);
      break;
    case Formula::Kind::Implies:
      collect_free_vars(f.antecedent(), bound, out);
      collect_free_vars(f.consequent(), bound, out);
      break;
    case Formula::Kind::ForAll: {
      bool inserted = bound.insert(f.bound_var()).second;
      collect_free_vars(f.body(), bound, out);
      if (inserted) bound.erase(f.bound_var());
      break;
    }
  }
}

}  // namespace

VariableSet term_vars(const Term& t) {
  VariableSet out;
  collect_term_vars(t, out);
  return out;
}

VariableSet free_vars(const Formula& f) {
  VariableSet out;
  std::set<std::string> bound;
  collect_free_vars(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

std::size_t node_count(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += node_count(a);
  return n;
}

std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::size_t n = 1;
      for (const auto& t : f.args()) n += node_count(t);
      return n;
    }
    case Formula::Kind::Not:
    case Formula::Kind::ForAll:
      return 1 + node_count(f.body());
    case Formula::Kind::Implies:
      return 1 + node_count(f.antecedent()) + node_count(f.consequent());
  }
  return 0;
}

// --- Substitution --------------------------------------------------------------

namespace {

bool term_contains_var(const Term& t, const std::string& var) {
  if (t.kind() == Term::Kind::Variable) return t.name() == var;
  for (const auto& a : t.args())
    if (term_contains_var(a, var)) return true;
  return false;
}

// `binders`: quantified variables enclosing the current position.
bool free_for_walk(const Formula& f, const std::string& var, const VariableSet& tvars,
                   std::set<std::string>& binders) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) {
        if (!term_contains_var(t, var)) continue;
        for (const auto& b : binders)
          if (tvars.count(b)) return false;
      }
      return true;
    case Formula::Kind::Not:
      return free_for_walk(f.body(), var, tvars, binders);
    case Formula::Kind::Implies:
      return free_for_walk(f.antecedent(), var, tvars, binders) &&
             free_for_walk(f.consequent(), var, tvars, binders);
    case Formula::Kind::ForAll: {
      if (f.bound_var() == var) return true;  // no free occurrence below
      bool inserted = binders.insert(f.bound_var()).second;
      bool ok = free_for_walk(f.body(), var, tvars, binders);
      if (inserted) binders.erase(f.bound_var());
      return ok;
    }
  }
  return true;
}

Formula substitute_unchecked(const Formula& f, const std::string& var, const Term& t) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      TermList args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(substitute(a, var, t));
      return Formula::atom(f.relation(), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(substitute_unchecked(f.body(), var, t));
    case Formula::Kind::Implies:
      return Formula::implies(substitute_unchecked(f.antecedent(), var, t),
                              substitute_unchecked(f.consequent(), var, t));
    case Formula::Kind::ForAll:
      if (f.bound_var() == var) return f;
      return Formula::forall(f.bound_var(), substitute_unchecked(f.body(), var, t));
  }
  return f;
}

}  // namespace

bool is_free_for(const Term& t, const std::string& var, const Formula& f) {
  VariableSet tvars = term_vars(t);
  std::set<std::string> binders;
  return free_for_walk(f, var, tvars, binders);
}

CaptureError::CaptureError(const std::string& var, const std::string& term_text)
    : std::runtime_error("substituting '" + term_text + "' for '" + var +
                         "' would capture a variable"),
      variable(var),
      term(term_text) {}

Term substitute(const Term& in, const std::string& var, const Term& t) {
  switch (in.kind()) {
    case Term::Kind::Variable:
      return in.name() == var ? t : in;
    case Term::Kind::Constant:
      return in;
    case Term::Kind::Function: {
      TermList args;
      args.reserve(in.args().size());
      for (const auto& a : in.args()) args.push_back(substitute(a, var, t));
      return Term::function(in.name(), std::move(args));
    }
  }
  return in;
}

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
  if (!is_free_for(t, var, f)) throw CaptureError(var, print_term(t));
  return substitute_unchecked(f, var, t);
}

// --- Tokenizer -----------------------------------------------------------------

ParseError::ParseError(std::string message, int line_, int col_, std::string token_)
    : std::runtime_error(message + " at " + std::to_string(line_) + ":" +
                         std::to_string(col_) +
                         (token_.empty() ? "" : " near '" + token_ + "'")),
      line(line_),
      col(col_),
      token(std::move(token_)) {}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string s, int l, int c) {
    out.push_back(Token{k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int tl = line, tc = col;
    switch (c) {
      case '~': push(Token::Kind::Not, "", tl, tc); ++i; ++col; continue;
      case '(': push(Token::Kind::LParen, "", tl, tc); ++i; ++col; continue;
      case ')': push(Token::Kind::RParen, "", tl, tc); ++i; ++col; continue;
      case ',': push(Token::Kind::Comma, "", tl, tc); ++i; ++col; continue;
      case '.': push(Token::Kind::Dot, "", tl, tc); ++i; ++col; continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Token::Kind::Implies, "", tl, tc);
          i += 2;
          col += 2;
          continue;
        }
        throw ParseError("stray '-'", tl, tc, "-");
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      if (word == "forall")
        push(Token::Kind::ForAll, "", tl, tc);
      else
        push(Token::Kind::Ident, std::move(word), tl, tc);
      continue;
    }
    throw ParseError("unexpected character", tl, tc, std::string(1, c));
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

// --- Canonical printing ----------------------------------------------------------

namespace {

void term_tokens(const Term& t, std::vector<Token>& out) {
  out.push_back(Token{Token::Kind::Ident, t.name(), 0, 0});
  if (t.kind() == Term::Kind::Function) {
    out.push_back(Token{Token::Kind::LParen, "", 0, 0});
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out.push_back(Token{Token::Kind::Comma, "", 0, 0});
      term_tokens(t.args()[i], out);
    }
    out.push_back(Token{Token::Kind::RParen, "", 0, 0});
  }
}

void formula_tokens_walk(const Formula& f, std::vector<Token>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.push_back(Token{Token::Kind::Ident, f.relation(), 0, 0});
      if (!f.args().empty()) {
        out.push_back(Token{Token::Kind::LParen, "", 0, 0});
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out.push_back(Token{Token::Kind::Comma, "", 0, 0});
          term_tokens(f.args()[i], out);
        }
        out.push_back(Token{Token::Kind::RParen, "", 0, 0});
      }
      break;
    case Formula::Kind::Not:
      out.push_back(Token{Token::Kind::Not, "", 0, 0});
      if (f.body().kind() == Formula::Kind::ForAll) {
        out.push_back(Token{Token::Kind::LParen, "", 0, 0});
        formula_tokens_walk(f.body(), out);
        out.push_back(Token{Token::Kind::RParen, "", 0, 0});
      } else {
        formula_tokens_walk(f.body(), out);
      }
      break;
    case Formula::Kind::Implies:
      out.push_back(Token{Token::Kind::LParen, "", 0, 0});
      // A bare quantifier in antecedent position would swallow the arrow:
      // its body extends maximally when parsed back.
      if (f.antecedent().kind() == Formula::Kind::ForAll) {
        out.push_back(Token{Token::Kind::LParen, "", 0, 0});
        formula_tokens_walk(f.antecedent(), out);
        out.push_back(Token{Token::Kind::RParen, "", 0, 0});
      } else {
        formula_tokens_walk(f.antecedent(), out);
      }
      out.push_back(Token{Token::Kind::Implies, "", 0, 0});
      formula_tokens_walk(f.consequent(), out);
      out.push_back(Token{Token::Kind::RParen, "", 0, 0});
      break;
    case Formula::Kind::ForAll:
      out.push_back(Token{Token::Kind::ForAll, "", 0, 0});
      out.push_back(Token{Token::Kind::Ident, f.bound_var(), 0, 0});
      out.push_back(Token{Token::Kind::Dot, "", 0, 0});
      formula_tokens_walk(f.body(), out);
      break;
  }
}

std::string token_text(const Token& t) {
  switch (t.kind) {
    case Token::Kind::Not: return "~";
    case Token::Kind::Implies: return "->";
    case Token::Kind::ForAll: return "forall";
    case Token::Kind::LParen: return "(";
    case Token::Kind::RParen: return ")";
    case Token::Kind::Comma: return ",";
    case Token::Kind::Dot: return ".";
    case Token::Kind::Ident: return t.text;
    case Token::Kind::End: return "<end>";
  }
  return "?";
}

}  // namespace

std::vector<Token> formula_tokens(const Formula& f) {
  std::vector<Token> out;
  formula_tokens_walk(f, out);
  return out;
}

std::string render_tokens(const std::vector<Token>& tokens) {
  std::string out;
  Token::Kind prev = Token::Kind::End;
  bool first = true;
  for (const auto& t : tokens) {
    if (t.kind == Token::Kind::End) break;
    bool space = !first && (t.kind == Token::Kind::Implies ||
                            prev == Token::Kind::Implies ||
                            prev == Token::Kind::ForAll ||
                            prev == Token::Kind::Dot || prev == Token::Kind::Comma);
    if (space) out += ' ';
    out += token_text(t);
    prev = t.kind;
    first = false;
  }
  return out;
}

std::string print_formula(const Formula& f) { return render_tokens(formula_tokens(f)); }

std::string print_term(const Term& t) {
  std::vector<Token> toks;
  term_tokens(t, toks);
  return render_tokens(toks);
}

// --- Parser ----------------------------------------------------------------------

namespace {

class Parser {
public:
  Parser(const std::vector<Token>& tokens, const Signature& sig)
      : tokens_(tokens), sig_(sig) {}

  Formula formula() {
    Formula f = parse_formula_level();
    expect(Token::Kind::End, "trailing input after formula");
    return f;
  }

  Term term_only() {
    Term t = parse_term_level();
    expect(Token::Kind::End, "trailing input after term");
    return t;
  }

private:
  const std::vector<Token>& tokens_;
  const Signature& sig_;
  std::size_t pos_ = 0;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.col, token_text(t));
  }

  void expect(Token::Kind k, const std::string& msg) {
    if (peek().kind != k) fail(msg, peek());
    advance();
  }

  // Lowest precedence: right-associative implication chain.
  Formula parse_formula_level() {
    Formula lhs = parse_unary();
    if (peek().kind == Token::Kind::Implies) {
      advance();
      Formula rhs = parse_formula_level();
      return Formula::implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Not:
        advance();
        return Formula::negation(parse_unary());
      case Token::Kind::ForAll: {
        advance();
        const Token& v = peek();
        if (v.kind != Token::Kind::Ident) fail("expected variable after 'forall'", v);
        if (sig_.declares(v.text))
          fail("bound variable '" + v.text + "' collides with a declared symbol", v);
        std::string var = v.text;
        advance();
        expect(Token::Kind::Dot, "expected '.' after quantified variable");
        // Quantifier body extends as far right as possible.
        return Formula::forall(std::move(var), parse_formula_level());
      }
      case Token::Kind::LParen: {
        advance();
        Formula f = parse_formula_level();
        expect(Token::Kind::RParen, "expected ')'");
        return f;
      }
      case Token::Kind::Ident:
        return parse_atom();
      default:
        fail("expected formula", t);
    }
  }

  Formula parse_atom() {
    const Token& head = advance();
    auto arity = sig_.relation_arity(head.text);
    if (!arity) fail("unknown relation symbol '" + head.text + "'", head);
    TermList args;
    if (peek().kind == Token::Kind::LParen) {
      advance();
      args.push_back(parse_term_level());
      while (peek().kind == Token::Kind::Comma) {
        advance();
        args.push_back(parse_term_level());
      }
      expect(Token::Kind::RParen, "expected ')' in argument list");
    }
    if (args.size() != *arity)
      fail("relation '" + head.text + "' expects " + std::to_string(*arity) +
               " argument(s), got " + std::to_string(args.size()),
           head);
    return Formula::atom(head.text, std::move(args));
  }

  Term parse_term_level() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected term", t);
    advance();
    if (auto arity = sig_.function_arity(t.text)) {
      expect(Token::Kind::LParen, "expected '(' after function symbol '" + t.text + "'");
      TermList args;
      args.push_back(parse_term_level());
      while (peek().kind == Token::Kind::Comma) {
        advance();
        args.push_back(parse_term_level());
      }
      expect(Token::Kind::RParen, "expected ')' in argument list");
      if (args.size() != *arity)
        fail("function '" + t.text + "' expects " + std::to_string(*arity) +
                 " argument(s), got " + std::to_string(args.size()),
             t);
      return Term::function(t.text, std::move(args));
    }
    if (sig_.is_constant(t.text)) return Term::constant(t.text);
    if (sig_.relation_arity(t.text))
      fail("relation symbol '" + t.text + "' used as a term", t);
    return Term::variable(t.text);
  }
};

}  // namespace

Formula parse_formula(const std::vector<Token>& tokens, const Signature& sig) {
  return Parser(tokens, sig).formula();
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  return parse_formula(tokenize(text), sig);
}

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(tokenize(text), sig).term_only();
}

// --- Validation --------------------------------------------------------------------

void validate(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!is_identifier(t.name()))
        throw SignatureError("bad variable name '" + t.name() + "'");
      if (sig.declares(t.name()))
        throw SignatureError("variable '" + t.name() + "' collides with a declared symbol");
      return;
    case Term::Kind::Constant:
      if (!sig.is_constant(t.name()))
        throw SignatureError("unknown constant '" + t.name() + "'");
      return;
    case Term::Kind::Function: {
      auto arity = sig.function_arity(t.name());
      if (!arity) throw SignatureError("unknown function '" + t.name() + "'");
      if (t.args().size() != *arity)
        throw SignatureError("function '" + t.name() + "' arity mismatch");
      for (const auto& a : t.args()) validate(a, sig);
      return;
    }
  }
}

void validate(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto arity = sig.relation_arity(f.relation());
      if (!arity) throw SignatureError("unknown relation '" + f.relation() + "'");
      if (f.args().size() != *arity)
        throw SignatureError("relation '" + f.relation() + "' arity mismatch");
      for (const auto& t : f.args()) validate(t, sig);
      return;
    }
    case Formula::Kind::Not:
      validate(f.body(), sig);
      return;
    case Formula::Kind::Implies:
      validate(f.antecedent(), sig);
      validate(f.consequent(), sig);
      return;
    case Formula::Kind::ForAll:
      if (!is_identifier(f.bound_var()))
        throw SignatureError("bad variable name '" + f.bound_var() + "'");
      if (sig.declares(f.bound_var()))
        throw SignatureError("variable '" + f.bound_var() + "' collides with a declared symbol");
      validate(f.body(), sig);
      return;
  }
}

}  // namespace fol
