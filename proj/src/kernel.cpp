#include "fol/kernel.hpp"

#include <map>

namespace fol {

std::string_view to_string(SchemaId id) {
  switch (id) {
    case SchemaId::A1: return "A1";
    case SchemaId::A2: return "A2";
    case SchemaId::A3: return "A3";
    case SchemaId::A4: return "A4";
    case SchemaId::A5: return "A5";
  }
  return "?";
}

std::optional<SchemaId> schema_from_string(std::string_view text) {
  if (text == "A1") return SchemaId::A1;
  if (text == "A2") return SchemaId::A2;
  if (text == "A3") return SchemaId::A3;
  if (text == "A4") return SchemaId::A4;
  if (text == "A5") return SchemaId::A5;
  return std::nullopt;
}

bool Theory::same_formulas(const Theory& other) const {
  if (formulas.size() != other.formulas.size()) return false;
  for (std::size_t i = 0; i < formulas.size(); ++i)
    if (formulas[i] != other.formulas[i]) return false;
  return true;
}

std::vector<std::size_t> Theory::duplicate_indices() const {
  std::vector<std::size_t> dups;
  for (std::size_t i = 0; i < formulas.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (formulas[i] == formulas[j]) {
        dups.push_back(i);
        break;
      }
  return dups;
}

std::string_view to_string(ReasonCode code) {
  switch (code) {
    case ReasonCode::BadAxiom: return "BAD_AXIOM";
    case ReasonCode::BadIndex: return "BAD_INDEX";
    case ReasonCode::HypAbsent: return "HYP_ABSENT";
    case ReasonCode::HypOpen: return "HYP_OPEN";
    case ReasonCode::HypMismatch: return "HYP_MISMATCH";
    case ReasonCode::TheoryMismatch: return "THEORY_MISMATCH";
    case ReasonCode::MpMismatch: return "MP_MISMATCH";
    case ReasonCode::GenMismatch: return "GEN_MISMATCH";
    case ReasonCode::Empty: return "EMPTY";
  }
  return "?";
}

namespace {

bool is_implies(const Formula& f) { return f.kind() == Formula::Kind::Implies; }
bool is_not(const Formula& f) { return f.kind() == Formula::Kind::Not; }
bool is_forall(const Formula& f) { return f.kind() == Formula::Kind::ForAll; }

// A1: B -> (C -> B)
bool match_a1(const Formula& f) {
  if (!is_implies(f) || !is_implies(f.consequent())) return false;
  return f.antecedent() == f.consequent().consequent();
}

// A2: (B -> (C -> D)) -> ((B -> C) -> (B -> D))
bool match_a2(const Formula& f) {
  if (!is_implies(f)) return false;
  const Formula& l = f.antecedent();
  const Formula& r = f.consequent();
  if (!is_implies(l) || !is_implies(l.consequent())) return false;
  if (!is_implies(r) || !is_implies(r.antecedent()) || !is_implies(r.consequent()))
    return false;
  const Formula& b = l.antecedent();
  const Formula& c = l.consequent().antecedent();
  const Formula& d = l.consequent().consequent();
  return r.antecedent().antecedent() == b && r.antecedent().consequent() == c &&
         r.consequent().antecedent() == b && r.consequent().consequent() == d;
}

// A3: (~C -> ~B) -> ((~C -> B) -> C)
bool match_a3(const Formula& f) {
  if (!is_implies(f)) return false;
  const Formula& l = f.antecedent();
  const Formula& r = f.consequent();
  if (!is_implies(l) || !is_not(l.antecedent()) || !is_not(l.consequent())) return false;
  const Formula& c = l.antecedent().body();
  const Formula& b = l.consequent().body();
  if (!is_implies(r) || !is_implies(r.antecedent())) return false;
  const Formula& ra = r.antecedent();
  if (!is_not(ra.antecedent())) return false;
  return ra.antecedent().body() == c && ra.consequent() == b && r.consequent() == c;
}

// Walks `body` and `inst` in parallel. Free occurrences of `var` in `body`
// must align with one common term, collected in `repl`; everything else must
// match exactly. `shadowed` is true under a re-binding of `var`.
bool match_term_subst(const Term& body, const Term& inst, const std::string& var,
                      bool shadowed, std::optional<Term>& repl) {
  if (body.kind() == Term::Kind::Variable && body.name() == var && !shadowed) {
    if (repl) return *repl == inst;
    repl = inst;
    return true;
  }
  if (body.kind() != inst.kind() || body.name() != inst.name()) return false;
  if (body.args().size() != inst.args().size()) return false;
  for (std::size_t i = 0; i < body.args().size(); ++i)
    if (!match_term_subst(body.args()[i], inst.args()[i], var, shadowed, repl))
      return false;
  return true;
}

bool match_formula_subst(const Formula& body, const Formula& inst, const std::string& var,
                         bool shadowed, std::optional<Term>& repl) {
  if (body.kind() != inst.kind()) return false;
  switch (body.kind()) {
    case Formula::Kind::Atom:
      if (body.relation() != inst.relation()) return false;
      if (body.args().size() != inst.args().size()) return false;
      for (std::size_t i = 0; i < body.args().size(); ++i)
        if (!match_term_subst(body.args()[i], inst.args()[i], var, shadowed, repl))
          return false;
      return true;
    case Formula::Kind::Not:
      return match_formula_subst(body.body(), inst.body(), var, shadowed, repl);
    case Formula::Kind::Implies:
      return match_formula_subst(body.antecedent(), inst.antecedent(), var, shadowed, repl) &&
             match_formula_subst(body.consequent(), inst.consequent(), var, shadowed, repl);
    case Formula::Kind::ForAll:
      if (body.bound_var() != inst.bound_var()) return false;
      return match_formula_subst(body.body(), inst.body(), var,
                                 shadowed || body.bound_var() == var, repl);
  }
  return false;
}

// A4: (forall x. B) -> B[x:=t] with t free for x in B.
bool match_a4(const Formula& f) {
  if (!is_implies(f) || !is_forall(f.antecedent())) return false;
  const std::string& x = f.antecedent().bound_var();
  const Formula& body = f.antecedent().body();
  std::optional<Term> repl;
  if (!match_formula_subst(body, f.consequent(), x, false, repl)) return false;
  if (!repl) return true;  // x not free in B; instance is (forall x. B) -> B
  return is_free_for(*repl, x, body);
}

// A5: (forall x. (B -> C)) -> (B -> forall x. C) with x not free in B.
bool match_a5(const Formula& f) {
  if (!is_implies(f) || !is_forall(f.antecedent())) return false;
  const std::string& x = f.antecedent().bound_var();
  const Formula& inner = f.antecedent().body();
  if (!is_implies(inner)) return false;
  const Formula& r = f.consequent();
  if (!is_implies(r) || !is_forall(r.consequent())) return false;
  if (r.consequent().bound_var() != x) return false;
  if (r.antecedent() != inner.antecedent()) return false;
  if (r.consequent().body() != inner.consequent()) return false;
  return !free_vars(inner.antecedent()).count(x);
}

}  // namespace

bool is_axiom_instance(const Formula& f, SchemaId schema) {
  switch (schema) {
    case SchemaId::A1: return match_a1(f);
    case SchemaId::A2: return match_a2(f);
    case SchemaId::A3: return match_a3(f);
    case SchemaId::A4: return match_a4(f);
    case SchemaId::A5: return match_a5(f);
  }
  return false;
}

Formula apply_mp(const Formula& minor, const Formula& major) {
  if (major.kind() != Formula::Kind::Implies)
    throw RuleError("modus ponens: major premise '" + print_formula(major) +
                    "' is not an implication");
  if (major.antecedent() != minor)
    throw RuleError("modus ponens: antecedent of '" + print_formula(major) +
                    "' does not match minor premise '" + print_formula(minor) + "'");
  return major.consequent();
}

Formula apply_gen(const Formula& f, const std::string& var) {
  return Formula::forall(var, f);
}

VerificationReport verify_deduction(const Deduction& d) {
  VerificationReport report;
  auto fail = [&](std::size_t line, ReasonCode reason, std::string message) {
    report.ok = false;
    report.first_failure = VerificationReport::Failure{line, reason, std::move(message)};
    return report;
  };

  if (d.lines.empty()) return fail(0, ReasonCode::Empty, "deduction has no lines");
  if (d.hypothesis && !is_closed(*d.hypothesis))
    return fail(0, ReasonCode::HypOpen,
                "hypothesis '" + print_formula(*d.hypothesis) + "' has free variables");

  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const auto& line = d.lines[i];
    const Formula& f = line.formula;

    if (const auto* ax = std::get_if<just::Axiom>(&line.just)) {
      if (!is_axiom_instance(f, ax->schema))
        return fail(i, ReasonCode::BadAxiom,
                    "'" + print_formula(f) + "' is not an instance of " +
                        std::string(to_string(ax->schema)));
    } else if (const auto* th = std::get_if<just::InTheory>(&line.just)) {
      if (th->index >= d.theory.formulas.size())
        return fail(i, ReasonCode::BadIndex,
                    "theory index " + std::to_string(th->index) + " out of range");
      if (d.theory.formulas[th->index] != f)
        return fail(i, ReasonCode::TheoryMismatch,
                    "line differs from theory formula " + std::to_string(th->index));
    } else if (std::get_if<just::Hyp>(&line.just)) {
      if (!d.hypothesis)
        return fail(i, ReasonCode::HypAbsent, "no hypothesis was supplied");
      if (*d.hypothesis != f)
        return fail(i, ReasonCode::HypMismatch, "line differs from the hypothesis");
    } else if (const auto* mp = std::get_if<just::Mp>(&line.just)) {
      if (mp->minor >= i || mp->major >= i)
        return fail(i, ReasonCode::BadIndex, "mp cites a line not strictly earlier");
      const Formula& major = d.lines[mp->major].formula;
      if (major.kind() != Formula::Kind::Implies ||
          major.antecedent() != d.lines[mp->minor].formula ||
          major.consequent() != f)
        return fail(i, ReasonCode::MpMismatch,
                    "mp " + std::to_string(mp->minor) + " " + std::to_string(mp->major) +
                        " does not yield this line");
    } else if (const auto* gen = std::get_if<just::Gen>(&line.just)) {
      if (gen->premise >= i)
        return fail(i, ReasonCode::BadIndex, "gen cites a line not strictly earlier");
      if (f.kind() != Formula::Kind::ForAll || f.bound_var() != gen->var ||
          f.body() != d.lines[gen->premise].formula)
        return fail(i, ReasonCode::GenMismatch,
                    "gen " + std::to_string(gen->premise) + " " + gen->var +
                        " does not yield this line");
    }
  }

  report.ok = true;
  report.conclusion = d.conclusion();
  return report;
}

}  // namespace fol
