#include "fol/models.hpp"

#include <gmpxx.h>

namespace fol {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  while (exp--) out *= base;
  return out;
}

std::size_t table_index(const std::vector<std::size_t>& args, std::size_t n) {
  std::size_t index = 0;
  for (std::size_t a : args) index = index * n + a;
  return index;
}

}  // namespace

std::size_t evaluate(const Term& t, const Structure& m, const Assignment& s) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = s.find(t.name());
      if (it == s.end())
        throw ModelError("unassigned free variable '" + t.name() + "'");
      if (it->second >= m.domain_size)
        throw ModelError("assignment for '" + t.name() + "' outside the domain");
      return it->second;
    }
    case Term::Kind::Constant: {
      auto it = m.constants.find(t.name());
      if (it == m.constants.end())
        throw ModelError("no table for constant '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::Function: {
      auto it = m.functions.find(t.name());
      if (it == m.functions.end())
        throw ModelError("no table for function '" + t.name() + "'");
      std::vector<std::size_t> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(evaluate(a, m, s));
      return it->second.at(table_index(args, m.domain_size));
    }
  }
  throw ModelError("unreachable term kind");
}

bool evaluate(const Formula& f, const Structure& m, const Assignment& s) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = m.relations.find(f.relation());
      if (it == m.relations.end())
        throw ModelError("no table for relation '" + f.relation() + "'");
      std::vector<std::size_t> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(evaluate(a, m, s));
      return it->second.at(table_index(args, m.domain_size));
    }
    case Formula::Kind::Not:
      return !evaluate(f.body(), m, s);
    case Formula::Kind::Implies:
      return !evaluate(f.antecedent(), m, s) || evaluate(f.consequent(), m, s);
    case Formula::Kind::ForAll: {
      Assignment inner = s;
      for (std::size_t v = 0; v < m.domain_size; ++v) {
        inner[f.bound_var()] = v;
        if (!evaluate(f.body(), m, inner)) return false;
      }
      return true;
    }
  }
  throw ModelError("unreachable formula kind");
}

bool holds_universally(const Formula& f, const Structure& m) {
  VariableSet fv = free_vars(f);
  std::vector<std::string> vars(fv.begin(), fv.end());
  Assignment s;
  for (const auto& v : vars) s[v] = 0;
  while (true) {
    if (!evaluate(f, m, s)) return false;
    // Odometer over assignments.
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++s[vars[i]] < m.domain_size) break;
      s[vars[i]] = 0;
    }
    if (i == vars.size()) return true;
  }
}

bool satisfies_theory(const Structure& m, const Theory& t) {
  for (const auto& f : t.formulas)
    if (!holds_universally(f, m)) return false;
  return true;
}

// --- Enumeration ---------------------------------------------------------------

StructureEnumerator::StructureEnumerator(Signature sig, EnumerationOptions options)
    : sig_(std::move(sig)), options_(options) {
  sig_.check();
  if (options_.max_domain < 1) throw ModelError("max_domain must be >= 1");
  if (!options_.allow_wide_functions)
    for (const auto& [name, arity] : sig_.functions)
      if (arity >= 2)
        throw ModelError("function '" + name +
                         "' has arity >= 2; enable allow_wide_functions to enumerate");

  // Count all structures first so a blown budget is an error up front.
  mpz_class total = 0;
  mpz_class factor;
  for (std::size_t n = 1; n <= options_.max_domain; ++n) {
    mpz_class count = 1;
    mpz_ui_pow_ui(factor.get_mpz_t(), n, sig_.constants.size());
    count *= factor;
    for (const auto& [name, arity] : sig_.functions) {
      mpz_ui_pow_ui(factor.get_mpz_t(), n, power(n, arity));
      count *= factor;
    }
    for (const auto& [name, arity] : sig_.relations) {
      mpz_ui_pow_ui(factor.get_mpz_t(), 2, power(n, arity));
      count *= factor;
    }
    total += count;
    if (total > mpz_class(static_cast<unsigned long>(options_.budget)))
      throw ModelError("structure enumeration budget exceeded (" +
                       std::to_string(options_.budget) + ")");
  }
  total_ = total.get_ui();
  start_domain();
}

void StructureEnumerator::start_domain() {
  cells_.clear();
  radices_.clear();
  const std::size_t n = domain_;
  for (std::size_t i = 0; i < sig_.constants.size(); ++i) radices_.push_back(n);
  for (const auto& [name, arity] : sig_.functions)
    for (std::size_t i = 0; i < power(n, arity); ++i) radices_.push_back(n);
  for (const auto& [name, arity] : sig_.relations)
    for (std::size_t i = 0; i < power(n, arity); ++i) radices_.push_back(2);
  cells_.assign(radices_.size(), 0);
  fresh_domain_ = true;
}

Structure StructureEnumerator::materialize() const {
  Structure m;
  m.domain_size = domain_;
  std::size_t pos = 0;
  for (const auto& c : sig_.constants) m.constants[c] = cells_[pos++];
  for (const auto& [name, arity] : sig_.functions) {
    std::vector<std::size_t> table(power(domain_, arity));
    for (auto& cell : table) cell = cells_[pos++];
    m.functions[name] = std::move(table);
  }
  for (const auto& [name, arity] : sig_.relations) {
    std::vector<bool> table(power(domain_, arity));
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = cells_[pos++] != 0;
    m.relations[name] = std::move(table);
  }
  return m;
}

bool StructureEnumerator::advance() {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (++cells_[i] < radices_[i]) return true;
    cells_[i] = 0;
  }
  return false;
}

std::optional<Structure> StructureEnumerator::next() {
  while (!exhausted_) {
    if (fresh_domain_) {
      fresh_domain_ = false;
      return materialize();
    }
    if (advance()) return materialize();
    if (++domain_ > options_.max_domain) {
      exhausted_ = true;
      break;
    }
    start_domain();
  }
  return std::nullopt;
}

SoundnessSweep check_soundness(const Deduction& d, const Signature& sig,
                               EnumerationOptions options) {
  SoundnessSweep sweep;
  StructureEnumerator structures(sig, options);
  while (auto m = structures.next()) {
    ++sweep.structures;
    if (!satisfies_theory(*m, d.theory)) continue;
    if (d.hypothesis && !holds_universally(*d.hypothesis, *m)) continue;
    ++sweep.models_of_premises;
    for (std::size_t i = 0; i < d.lines.size(); ++i) {
      if (!holds_universally(d.lines[i].formula, *m)) {
        sweep.counterexample = SoundnessSweep::Counterexample{*m, i};
        return sweep;
      }
    }
  }
  return sweep;
}

}  // namespace fol
