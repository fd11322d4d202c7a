#include "fol/transform.hpp"

namespace fol {

std::string_view to_string(TransformCase c) {
  switch (c) {
    case TransformCase::AxiomLine: return "i-axiom";
    case TransformCase::TheoryLine: return "i-theory";
    case TransformCase::HypothesisLine: return "ii-hypothesis";
    case TransformCase::MpLine: return "iii-mp";
    case TransformCase::GenLine: return "iv-gen";
  }
  return "?";
}

Deduction prove_self_implication(const Formula& a) {
  Formula a_a = Formula::implies(a, a);
  Formula l0 = Formula::implies(a, Formula::implies(a_a, a));
  Formula l2 = Formula::implies(Formula::implies(a, a_a), a_a);
  Formula l1 = Formula::implies(l0, l2);
  Formula l3 = Formula::implies(a, a_a);

  Deduction d;
  d.lines = {
      {l0, just::Axiom{SchemaId::A1}},
      {l1, just::Axiom{SchemaId::A2}},
      {l2, just::Mp{0, 1}},
      {l3, just::Axiom{SchemaId::A1}},
      {a_a, just::Mp{3, 2}},
  };
  return d;
}

namespace {

[[noreturn]] void throw_verification_failure(const VerificationReport& report,
                                             const char* what) {
  const auto& f = *report.first_failure;
  throw TransformError(f.reason, std::string(what) + ": line " + std::to_string(f.line) +
                                     " [" + std::string(to_string(f.reason)) + "] " +
                                     f.message);
}

}  // namespace

EliminationResult eliminate_hypothesis(const Deduction& d) {
  if (!d.hypothesis)
    throw TransformError(ReasonCode::HypAbsent, "deduction carries no hypothesis");
  VerificationReport report = verify_deduction(d);
  if (!report.ok) throw_verification_failure(report, "input does not verify");

  const Formula& a = *d.hypothesis;
  Deduction out;
  out.theory = d.theory;
  TransformTrace trace;

  // For each input line i, the index of the output line concluding a -> Bi.
  std::vector<std::size_t> result_line(d.lines.size());

  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const Formula& bi = d.lines[i].formula;
    Formula a_bi = Formula::implies(a, bi);
    std::size_t begin = out.lines.size();
    TransformCase line_case;

    if (const auto* ax = std::get_if<just::Axiom>(&d.lines[i].just)) {
      line_case = TransformCase::AxiomLine;
      out.lines.push_back({bi, just::Axiom{ax->schema}});
      out.lines.push_back({Formula::implies(bi, a_bi), just::Axiom{SchemaId::A1}});
      out.lines.push_back({a_bi, just::Mp{begin, begin + 1}});
    } else if (const auto* th = std::get_if<just::InTheory>(&d.lines[i].just)) {
      line_case = TransformCase::TheoryLine;
      out.lines.push_back({bi, just::InTheory{th->index}});
      out.lines.push_back({Formula::implies(bi, a_bi), just::Axiom{SchemaId::A1}});
      out.lines.push_back({a_bi, just::Mp{begin, begin + 1}});
    } else if (std::get_if<just::Hyp>(&d.lines[i].just)) {
      line_case = TransformCase::HypothesisLine;
      Deduction self = prove_self_implication(a);
      for (auto& line : self.lines) {
        if (auto* mp = std::get_if<just::Mp>(&line.just)) {
          mp->minor += begin;
          mp->major += begin;
        }
        out.lines.push_back(std::move(line));
      }
    } else if (const auto* mp = std::get_if<just::Mp>(&d.lines[i].just)) {
      line_case = TransformCase::MpLine;
      const Formula& bj = d.lines[mp->minor].formula;
      // a -> Bj and a -> (Bj -> Bi) are already proved.
      std::size_t have_minor = result_line[mp->minor];
      std::size_t have_major = result_line[mp->major];
      Formula a_bj = Formula::implies(a, bj);
      Formula a_bj_bi = Formula::implies(a, Formula::implies(bj, bi));
      Formula step = Formula::implies(a_bj, a_bi);
      out.lines.push_back({Formula::implies(a_bj_bi, step), just::Axiom{SchemaId::A2}});
      out.lines.push_back({step, just::Mp{have_major, begin}});
      out.lines.push_back({a_bi, just::Mp{have_minor, begin + 1}});
    } else {
      const auto& gen = std::get<just::Gen>(d.lines[i].just);
      line_case = TransformCase::GenLine;
      const Formula& bj = d.lines[gen.premise].formula;
      std::size_t have = result_line[gen.premise];
      Formula a_bj = Formula::implies(a, bj);
      Formula all_a_bj = Formula::forall(gen.var, a_bj);
      // Side condition of A5 holds because a is closed.
      out.lines.push_back({all_a_bj, just::Gen{have, gen.var}});
      out.lines.push_back({Formula::implies(all_a_bj, a_bi), just::Axiom{SchemaId::A5}});
      out.lines.push_back({a_bi, just::Mp{begin, begin + 1}});
    }

    result_line[i] = out.lines.size() - 1;
    trace.entries.push_back({i, line_case, begin, out.lines.size()});
  }

  return {std::move(out), std::move(trace)};
}

Deduction concat_deductions(const Deduction& da, const Deduction& db) {
  if (da.hypothesis)
    throw TransformError(ReasonCode::HypMismatch, "first deduction must be hypothesis-free");
  if (!db.hypothesis)
    throw TransformError(ReasonCode::HypAbsent, "second deduction carries no hypothesis");
  if (!da.theory.same_formulas(db.theory))
    throw TransformError(ReasonCode::TheoryMismatch,
                         "deductions are over different theories");
  VerificationReport ra = verify_deduction(da);
  if (!ra.ok) throw_verification_failure(ra, "first deduction does not verify");
  VerificationReport rb = verify_deduction(db);
  if (!rb.ok) throw_verification_failure(rb, "second deduction does not verify");
  if (*db.hypothesis != da.conclusion())
    throw TransformError(ReasonCode::HypMismatch,
                         "hypothesis of second deduction is not the first's conclusion");

  const std::size_t m = da.lines.size();
  Deduction out;
  out.theory = da.theory;
  out.lines = da.lines;

  std::vector<std::size_t> remap(db.lines.size());
  for (std::size_t i = 0; i < db.lines.size(); ++i) {
    if (std::get_if<just::Hyp>(&db.lines[i].just)) {
      remap[i] = m - 1;  // the duplicate line is dropped; cite da's conclusion
      continue;
    }
    DeductionLine line = db.lines[i];
    if (auto* mp = std::get_if<just::Mp>(&line.just)) {
      mp->minor = remap[mp->minor];
      mp->major = remap[mp->major];
    } else if (auto* gen = std::get_if<just::Gen>(&line.just)) {
      gen->premise = remap[gen->premise];
    }
    remap[i] = out.lines.size();
    out.lines.push_back(std::move(line));
  }
  // If db ends on a hypothesis line its image is da's conclusion, which must
  // also be the output's last line; citations only point backward, so
  // trailing lines can go.
  out.lines.erase(out.lines.begin() + static_cast<std::ptrdiff_t>(remap.back()) + 1,
                  out.lines.end());
  return out;
}

Deduction weaken(const Deduction& d, const Formula& a) {
  if (d.hypothesis)
    throw TransformError(ReasonCode::HypMismatch, "deduction already has a hypothesis");
  if (!is_closed(a))
    throw TransformError(ReasonCode::HypOpen,
                         "hypothesis '" + print_formula(a) + "' has free variables");
  VerificationReport r = verify_deduction(d);
  if (!r.ok) throw_verification_failure(r, "input does not verify");
  Deduction out = d;
  out.hypothesis = a;
  return out;
}

}  // namespace fol
