#include "testkit.hpp"

#include <algorithm>
#include <unordered_set>

namespace testkit {

using namespace fol;

Signature base_signature() {
  Signature sig;
  sig.constants = {"c", "d"};
  sig.functions = {{"f", 1}, {"g", 2}};
  sig.relations = {{"P", 0}, {"Q", 0}, {"R", 1}, {"S", 2}};
  return sig;
}

Signature models_signature() {
  Signature sig;
  sig.constants = {"c"};
  sig.functions = {{"f", 1}};
  sig.relations = {{"P", 0}, {"Q", 0}, {"R", 1}};
  return sig;
}

namespace {

std::size_t pick(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

}  // namespace

Term random_term(Rng& rng, const Signature& sig, const std::vector<std::string>& vars,
                 int depth) {
  while (true) {
    switch (pick(rng, 3)) {
      case 0:
        if (!vars.empty()) return Term::variable(vars[pick(rng, vars.size())]);
        break;
      case 1:
        if (!sig.constants.empty())
          return Term::constant(sig.constants[pick(rng, sig.constants.size())]);
        break;
      case 2:
        if (depth > 0 && !sig.functions.empty()) {
          const auto& [name, arity] = sig.functions[pick(rng, sig.functions.size())];
          TermList args;
          for (std::size_t i = 0; i < arity; ++i)
            args.push_back(random_term(rng, sig, vars, depth - 1));
          return Term::function(name, std::move(args));
        }
        break;
    }
  }
}

Formula random_formula(Rng& rng, const Signature& sig, const FormulaGen& gen) {
  auto atom = [&]() {
    const auto& [name, arity] = sig.relations[pick(rng, sig.relations.size())];
    TermList args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, sig, gen.vars, 1));
    return Formula::atom(name, std::move(args));
  };
  if (gen.max_depth <= 0) return atom();
  FormulaGen sub = gen;
  sub.max_depth = gen.max_depth - 1;
  switch (pick(rng, gen.allow_quantifiers ? 10 : 8)) {
    case 0:
    case 1:
    case 2:
      return atom();
    case 3:
    case 4:
      return Formula::negation(random_formula(rng, sig, sub));
    case 5:
    case 6:
    case 7:
      return Formula::implies(random_formula(rng, sig, sub), random_formula(rng, sig, sub));
    default:
      return Formula::forall(gen.vars[pick(rng, gen.vars.size())],
                             random_formula(rng, sig, sub));
  }
}

Formula random_closed_formula(Rng& rng, const Signature& sig, const FormulaGen& gen) {
  Formula f = random_formula(rng, sig, gen);
  for (const auto& v : free_vars(f)) f = Formula::forall(v, f);
  return f;
}

namespace {

Formula random_axiom_instance(Rng& rng, const Signature& sig, const FormulaGen& gen,
                              SchemaId& schema_out) {
  FormulaGen small = gen;
  small.max_depth = std::min(gen.max_depth, 2);
  auto bit = [&]() { return random_formula(rng, sig, small); };
  for (;;) {
    switch (pick(rng, 5)) {
      case 0: {
        Formula b = bit(), c = bit();
        schema_out = SchemaId::A1;
        return Formula::implies(b, Formula::implies(c, b));
      }
      case 1: {
        Formula b = bit(), c = bit(), d = bit();
        schema_out = SchemaId::A2;
        return Formula::implies(
            Formula::implies(b, Formula::implies(c, d)),
            Formula::implies(Formula::implies(b, c), Formula::implies(b, d)));
      }
      case 2: {
        Formula b = bit(), c = bit();
        schema_out = SchemaId::A3;
        return Formula::implies(
            Formula::implies(Formula::negation(c), Formula::negation(b)),
            Formula::implies(Formula::implies(Formula::negation(c), b), c));
      }
      case 3: {
        const std::string& x = gen.vars[pick(rng, gen.vars.size())];
        Formula b = bit();
        Term t = chance(rng, 0.5) ? Term::constant(sig.constants[pick(rng, sig.constants.size())])
                                  : random_term(rng, sig, gen.vars, 1);
        if (!is_free_for(t, x, b)) continue;
        schema_out = SchemaId::A4;
        return Formula::implies(Formula::forall(x, b), substitute(b, x, t));
      }
      default: {
        const std::string& x = gen.vars[pick(rng, gen.vars.size())];
        Formula b = bit();
        if (free_vars(b).count(x)) continue;
        Formula c = bit();
        schema_out = SchemaId::A5;
        return Formula::implies(Formula::forall(x, Formula::implies(b, c)),
                                Formula::implies(b, Formula::forall(x, c)));
      }
    }
  }
}

}  // namespace

Deduction random_verified_deduction(Rng& rng, const Signature& sig,
                                    const DeductionGen& gen) {
  FormulaGen fgen;
  fgen.max_depth = gen.formula_depth;

  Deduction d;
  if (gen.theory) {
    d.theory = *gen.theory;
  } else {
    std::size_t theory_size = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < theory_size; ++i)
      d.theory.formulas.push_back(random_formula(rng, sig, fgen));
  }
  if (gen.hypothesis)
    d.hypothesis = *gen.hypothesis;
  else if (gen.with_hypothesis)
    d.hypothesis = random_closed_formula(rng, sig, fgen);

  std::size_t target_lines = 1 + pick(rng, gen.max_lines);
  while (d.lines.size() < target_lines) {
    std::size_t n = d.lines.size();
    switch (pick(rng, 6)) {
      case 0: {
        if (d.theory.formulas.empty()) break;
        std::size_t k = pick(rng, d.theory.formulas.size());
        d.lines.push_back({d.theory.formulas[k], just::InTheory{k}});
        break;
      }
      case 1:
        if (d.hypothesis) {
          d.lines.push_back({*d.hypothesis, just::Hyp{}});
        }
        break;
      case 2: {
        SchemaId schema;
        Formula inst = random_axiom_instance(rng, sig, fgen, schema);
        d.lines.push_back({std::move(inst), just::Axiom{schema}});
        break;
      }
      case 3: {
        // Make a major premise for an existing line, enabling MP later.
        if (n == 0) break;
        std::size_t e = pick(rng, n);
        Formula c = random_formula(rng, sig, fgen);
        Formula inst = Formula::implies(d.lines[e].formula,
                                        Formula::implies(c, d.lines[e].formula));
        d.lines.push_back({std::move(inst), just::Axiom{SchemaId::A1}});
        break;
      }
      case 4: {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t j = 0; j < n; ++j) {
          const Formula& major = d.lines[j].formula;
          if (major.kind() != Formula::Kind::Implies) continue;
          for (std::size_t i = 0; i < n; ++i)
            if (i != j && d.lines[i].formula == major.antecedent()) pairs.emplace_back(i, j);
        }
        if (pairs.empty()) break;
        auto [i, j] = pairs[pick(rng, pairs.size())];
        d.lines.push_back(
            {d.lines[j].formula.consequent(), just::Mp{i, j}});
        break;
      }
      default: {
        if (n == 0) break;
        std::size_t e = pick(rng, n);
        const std::string& v = fgen.vars[pick(rng, fgen.vars.size())];
        d.lines.push_back({Formula::forall(v, d.lines[e].formula), just::Gen{e, v}});
        break;
      }
    }
  }
  if (d.hypothesis &&
      std::none_of(d.lines.begin(), d.lines.end(), [](const DeductionLine& l) {
        return std::holds_alternative<just::Hyp>(l.just);
      })) {
    d.lines.push_back({*d.hypothesis, just::Hyp{}});
  }
  return d;
}

std::optional<Deduction> random_breaking_mutation(Rng& rng, const Deduction& d) {
  Deduction mutant = d;
  std::size_t i = pick(rng, mutant.lines.size());
  DeductionLine& line = mutant.lines[i];
  switch (pick(rng, 4)) {
    case 0:
      line.formula = Formula::negation(line.formula);
      break;
    case 1:
      if (auto* ax = std::get_if<just::Axiom>(&line.just)) {
        ax->schema = static_cast<SchemaId>((static_cast<int>(ax->schema) + 1 + pick(rng, 4)) % 5);
      } else {
        line.just = just::Axiom{static_cast<SchemaId>(pick(rng, 5))};
      }
      break;
    case 2:
      if (auto* mp = std::get_if<just::Mp>(&line.just); mp && i > 1) {
        std::swap(mp->minor, mp->major);
      } else if (auto* th = std::get_if<just::InTheory>(&line.just);
                 th && mutant.theory.formulas.size() > 1) {
        th->index = (th->index + 1) % mutant.theory.formulas.size();
      } else {
        line.formula = Formula::implies(line.formula, line.formula);
      }
      break;
    default:
      if (auto* gen = std::get_if<just::Gen>(&line.just)) {
        gen->var = gen->var == "w" ? "u" : "w";
      } else {
        line.just = just::Gen{i == 0 ? 0 : i - 1, "x"};
      }
      break;
  }
  if (verify_deduction(mutant).ok) return std::nullopt;
  return mutant;
}

// --- Oracles -------------------------------------------------------------------

namespace {

void naive_scan(const Formula& f, std::vector<std::string>& binders, VariableSet& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args())
        for (const auto& v : term_vars(t))
          if (std::find(binders.begin(), binders.end(), v) == binders.end()) out.insert(v);
      break;
    case Formula::Kind::Not:
      naive_scan(f.body(), binders, out);
      break;
    case Formula::Kind::Implies:
      naive_scan(f.antecedent(), binders, out);
      naive_scan(f.consequent(), binders, out);
      break;
    case Formula::Kind::ForAll:
      binders.push_back(f.bound_var());
      naive_scan(f.body(), binders, out);
      binders.pop_back();
      break;
  }
}

}  // namespace

VariableSet naive_free_vars(const Formula& f) {
  VariableSet out;
  std::vector<std::string> binders;
  naive_scan(f, binders, out);
  return out;
}

namespace {

Term naive_substitute_term(const Term& in, const std::string& var, const Term& t,
                           const std::vector<std::string>& binders) {
  if (in.kind() == Term::Kind::Variable) {
    if (in.name() == var &&
        std::find(binders.begin(), binders.end(), var) == binders.end())
      return t;
    return in;
  }
  if (in.kind() == Term::Kind::Constant) return in;
  TermList args;
  for (const auto& a : in.args())
    args.push_back(naive_substitute_term(a, var, t, binders));
  return Term::function(in.name(), std::move(args));
}

Formula naive_substitute_walk(const Formula& f, const std::string& var, const Term& t,
                              std::vector<std::string>& binders) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      TermList args;
      for (const auto& a : f.args())
        args.push_back(naive_substitute_term(a, var, t, binders));
      return Formula::atom(f.relation(), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(naive_substitute_walk(f.body(), var, t, binders));
    case Formula::Kind::Implies:
      return Formula::implies(naive_substitute_walk(f.antecedent(), var, t, binders),
                              naive_substitute_walk(f.consequent(), var, t, binders));
    case Formula::Kind::ForAll: {
      binders.push_back(f.bound_var());
      Formula body = naive_substitute_walk(f.body(), var, t, binders);
      binders.pop_back();
      return Formula::forall(f.bound_var(), std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula naive_substitute(const Formula& f, const std::string& var, const Term& t) {
  std::vector<std::string> binders;
  return naive_substitute_walk(f, var, t, binders);
}

namespace {

struct OracleLine {
  Formula formula;
  Justification just;
};

void collect_oracle_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args())
        for (const auto& v : term_vars(t)) out.insert(v);
      break;
    case Formula::Kind::Not:
      collect_oracle_vars(f.body(), out);
      break;
    case Formula::Kind::Implies:
      collect_oracle_vars(f.antecedent(), out);
      collect_oracle_vars(f.consequent(), out);
      break;
    case Formula::Kind::ForAll:
      out.insert(f.bound_var());
      collect_oracle_vars(f.body(), out);
      break;
  }
}

void collect_oracle_terms(const Term& t, std::vector<Term>& out) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  for (const auto& a : t.args()) collect_oracle_terms(a, out);
}

struct OracleSearch {
  const Formula& target;
  const Theory& theory;
  const std::optional<Formula>& hypothesis;
  std::size_t max_formula_size;
  std::vector<OracleLine> statics;
  std::vector<std::string> vars;
  std::optional<std::size_t> best;

  std::vector<DeductionLine> lines;

  void try_complete() {
    if (lines.empty() || lines.back().formula != target) return;
    Deduction d;
    d.theory = theory;
    d.hypothesis = hypothesis;
    d.lines = lines;
    if (!verify_deduction(d).ok) return;
    if (!best || lines.size() < *best) best = lines.size();
  }

  void extend(std::size_t max_lines) {
    try_complete();
    if (lines.size() >= max_lines) return;
    if (best && lines.size() + 1 >= *best) return;  // only minimal length matters
    for (const auto& s : statics) {
      lines.push_back({s.formula, s.just});
      extend(max_lines);
      lines.pop_back();
    }
    std::size_t n = lines.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Formula& major = lines[j].formula;
      if (major.kind() == Formula::Kind::Implies) {
        for (std::size_t i = 0; i < n; ++i) {
          if (i == j || lines[i].formula != major.antecedent()) continue;
          lines.push_back({major.consequent(), just::Mp{i, j}});
          extend(max_lines);
          lines.pop_back();
        }
      }
      for (const auto& v : vars) {
        Formula g = Formula::forall(v, lines[j].formula);
        if (node_count(g) > max_formula_size) continue;
        lines.push_back({std::move(g), just::Gen{j, v}});
        extend(max_lines);
        lines.pop_back();
      }
    }
  }
};

}  // namespace

std::optional<std::size_t> oracle_minimal_proof_length(
    const Formula& target, const Theory& theory,
    const std::optional<Formula>& hypothesis, const std::vector<Formula>& pool,
    std::size_t max_lines, std::size_t max_formula_size) {
  OracleSearch search{target, theory, hypothesis, max_formula_size, {}, {}, {}, {}};

  auto add_static = [&](Formula f, Justification just) {
    if (node_count(f) > max_formula_size) return;
    for (const auto& s : search.statics)
      if (s.formula == f && s.just == just) return;
    search.statics.push_back({std::move(f), std::move(just)});
  };

  std::set<std::string> vars;
  collect_oracle_vars(target, vars);
  for (const auto& f : pool) collect_oracle_vars(f, vars);
  for (const auto& f : theory.formulas) collect_oracle_vars(f, vars);
  if (hypothesis) collect_oracle_vars(*hypothesis, vars);
  search.vars.assign(vars.begin(), vars.end());

  std::vector<Term> terms;
  for (const auto& f : pool) {
    std::vector<const Formula*> stack{&f};
    while (!stack.empty()) {
      const Formula* g = stack.back();
      stack.pop_back();
      switch (g->kind()) {
        case Formula::Kind::Atom:
          for (const auto& t : g->args()) collect_oracle_terms(t, terms);
          break;
        case Formula::Kind::Not:
        case Formula::Kind::ForAll:
          stack.push_back(&g->body());
          break;
        case Formula::Kind::Implies:
          stack.push_back(&g->antecedent());
          stack.push_back(&g->consequent());
          break;
      }
    }
  }
  for (const auto& v : search.vars) {
    Term t = Term::variable(v);
    if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
  }

  for (std::size_t k = 0; k < theory.formulas.size(); ++k)
    add_static(theory.formulas[k], just::InTheory{k});
  if (hypothesis) add_static(*hypothesis, just::Hyp{});
  for (const auto& b : pool)
    for (const auto& c : pool) {
      add_static(Formula::implies(b, Formula::implies(c, b)), just::Axiom{SchemaId::A1});
      add_static(Formula::implies(
                     Formula::implies(Formula::negation(c), Formula::negation(b)),
                     Formula::implies(Formula::implies(Formula::negation(c), b), c)),
                 just::Axiom{SchemaId::A3});
      for (const auto& d : pool)
        add_static(Formula::implies(
                       Formula::implies(b, Formula::implies(c, d)),
                       Formula::implies(Formula::implies(b, c), Formula::implies(b, d))),
                   just::Axiom{SchemaId::A2});
    }
  for (const auto& q : pool) {
    if (q.kind() != Formula::Kind::ForAll) continue;
    for (const auto& t : terms) {
      if (!is_free_for(t, q.bound_var(), q.body())) continue;
      add_static(Formula::implies(q, substitute(q.body(), q.bound_var(), t)),
                 just::Axiom{SchemaId::A4});
    }
  }
  for (const auto& v : search.vars)
    for (const auto& b : pool) {
      if (free_vars(b).count(v)) continue;
      for (const auto& c : pool)
        add_static(Formula::implies(Formula::forall(v, Formula::implies(b, c)),
                                    Formula::implies(b, Formula::forall(v, c))),
                   just::Axiom{SchemaId::A5});
    }

  search.extend(max_lines);
  return search.best;
}

}  // namespace testkit
