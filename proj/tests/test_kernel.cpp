#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fol/kernel.hpp"
#include "testkit.hpp"

using namespace fol;

namespace {

const Signature& sig() {
  static Signature s = testkit::base_signature();
  return s;
}

Formula parse(const std::string& text) { return parse_formula(text, sig()); }

}  // namespace

TEST_CASE("A1 instances") {
  CHECK(is_axiom_instance(parse("(P -> (Q -> P))"), SchemaId::A1));
  CHECK(is_axiom_instance(parse("(R(x) -> (P -> R(x)))"), SchemaId::A1));
  CHECK(!is_axiom_instance(parse("(P -> (Q -> Q))"), SchemaId::A1));
  CHECK(!is_axiom_instance(parse("P"), SchemaId::A1));
}

TEST_CASE("A2 instances") {
  CHECK(is_axiom_instance(
      parse("((P -> (Q -> R(c))) -> ((P -> Q) -> (P -> R(c))))"), SchemaId::A2));
  CHECK(!is_axiom_instance(
      parse("((P -> (Q -> R(c))) -> ((P -> Q) -> (Q -> R(c))))"), SchemaId::A2));
}

TEST_CASE("A3 instances") {
  CHECK(is_axiom_instance(parse("((~Q -> ~P) -> ((~Q -> P) -> Q))"), SchemaId::A3));
  CHECK(!is_axiom_instance(parse("((~Q -> ~P) -> ((~Q -> P) -> P))"), SchemaId::A3));
}

TEST_CASE("A4 instances and the free-for side condition") {
  CHECK(is_axiom_instance(parse("((forall x. R(x)) -> R(c))"), SchemaId::A4));
  CHECK(is_axiom_instance(parse("((forall x. R(x)) -> R(x))"), SchemaId::A4));
  CHECK(is_axiom_instance(parse("((forall x. R(x)) -> R(f(y)))"), SchemaId::A4));
  // Vacuous quantification: the consequent must equal the body.
  CHECK(is_axiom_instance(parse("((forall x. P) -> P)"), SchemaId::A4));
  CHECK(!is_axiom_instance(parse("((forall x. P) -> Q)"), SchemaId::A4));
  // Replacement term captured by the inner quantifier: side condition fails.
  CHECK(!is_axiom_instance(
      parse("((forall x. forall y. S(x, y)) -> (forall y. S(y, y)))"), SchemaId::A4));
  // Occurrences of x under a re-binding of x stay untouched.
  CHECK(is_axiom_instance(
      parse("((forall x. (R(x) -> forall x. R(x))) -> (R(c) -> forall x. R(x)))"),
      SchemaId::A4));
  CHECK(!is_axiom_instance(
      parse("((forall x. (R(x) -> forall x. R(x))) -> (R(c) -> forall x. R(c)))"),
      SchemaId::A4));
  // All free occurrences must map to one common term.
  CHECK(!is_axiom_instance(parse("((forall x. S(x, x)) -> S(c, d))"), SchemaId::A4));
  CHECK(is_axiom_instance(parse("((forall x. S(x, x)) -> S(d, d))"), SchemaId::A4));
}

TEST_CASE("A5 instances and the not-free side condition") {
  CHECK(is_axiom_instance(parse("((forall x. (P -> R(x))) -> (P -> forall x. R(x)))"),
                          SchemaId::A5));
  // x free in the B position: rejected.
  CHECK(!is_axiom_instance(parse("((forall x. (R(x) -> P)) -> (R(x) -> forall x. P))"),
                           SchemaId::A5));
  // Bound variables must agree on both sides.
  CHECK(!is_axiom_instance(parse("((forall x. (P -> R(x))) -> (P -> forall y. R(x)))"),
                           SchemaId::A5));
}

TEST_CASE("verification checks only the declared schema") {
  Formula a1 = parse("(P -> (Q -> P))");
  Deduction d;
  d.lines = {{a1, just::Axiom{SchemaId::A2}}};
  VerificationReport report = verify_deduction(d);
  CHECK(!report.ok);
  CHECK(report.first_failure->reason == ReasonCode::BadAxiom);
}

TEST_CASE("modus ponens") {
  CHECK(apply_mp(parse("P"), parse("(P -> Q)")) == parse("Q"));
  CHECK_THROWS_AS(apply_mp(parse("P"), parse("(Q -> R(c))")), RuleError);
  CHECK_THROWS_AS(apply_mp(parse("P"), parse("Q")), RuleError);
  CHECK(apply_mp(parse("forall x. R(x)"),
                 parse("((forall x. R(x)) -> ~(forall x. R(x)))")) ==
        parse("~(forall x. R(x))"));
}

TEST_CASE("generalization, vacuous quantification included") {
  CHECK(apply_gen(parse("R(x)"), "x") == parse("forall x. R(x)"));
  CHECK(apply_gen(parse("(P -> R(x))"), "x") == parse("forall x. (P -> R(x))"));
  CHECK(apply_gen(parse("P"), "y") == parse("forall y. P"));
}

TEST_CASE("one-line deductions") {
  Formula a = parse("forall x. R(x)");
  Deduction d;
  d.hypothesis = a;
  d.lines = {{a, just::Hyp{}}};
  VerificationReport report = verify_deduction(d);
  CHECK(report.ok);
  CHECK(*report.conclusion == a);
}

TEST_CASE("open hypotheses are rejected") {
  Formula open = parse("R(x)");
  Deduction d;
  d.hypothesis = open;
  d.lines = {{open, just::Hyp{}}};
  VerificationReport report = verify_deduction(d);
  CHECK(!report.ok);
  CHECK(report.first_failure->reason == ReasonCode::HypOpen);

  // Closedness is a property of the deduction, not of hypothesis use.
  Deduction unused;
  unused.theory.formulas = {parse("P")};
  unused.hypothesis = open;
  unused.lines = {{parse("P"), just::InTheory{0}}};
  CHECK(verify_deduction(unused).first_failure->reason == ReasonCode::HypOpen);
}

TEST_CASE("a theory-plus-mp deduction verifies with conclusion Q") {
  Deduction d;
  d.theory.formulas = {parse("P"), parse("(P -> Q)")};
  d.lines = {
      {parse("P"), just::InTheory{0}},
      {parse("(P -> Q)"), just::InTheory{1}},
      {parse("Q"), just::Mp{0, 1}},
  };
  VerificationReport report = verify_deduction(d);
  CHECK(report.ok);
  CHECK(*report.conclusion == parse("Q"));
}

TEST_CASE("failure reason codes") {
  Formula p = parse("P");
  Formula q = parse("Q");

  SUBCASE("empty") {
    Deduction d;
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::Empty);
  }
  SUBCASE("hypothesis absent") {
    Deduction d;
    d.lines = {{p, just::Hyp{}}};
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::HypAbsent);
  }
  SUBCASE("hypothesis mismatch") {
    Deduction d;
    d.hypothesis = q;
    d.lines = {{p, just::Hyp{}}};
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::HypMismatch);
  }
  SUBCASE("theory index out of range") {
    Deduction d;
    d.lines = {{p, just::InTheory{0}}};
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::BadIndex);
  }
  SUBCASE("theory formula mismatch") {
    Deduction d;
    d.theory.formulas = {q};
    d.lines = {{p, just::InTheory{0}}};
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::TheoryMismatch);
  }
  SUBCASE("mp cites a line not strictly earlier") {
    Deduction d;
    d.theory.formulas = {p};
    d.lines = {{p, just::Mp{0, 1}}};
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::BadIndex);
  }
  SUBCASE("mp shape mismatch") {
    Deduction d;
    d.theory.formulas = {p, q};
    d.lines = {
        {p, just::InTheory{0}},
        {q, just::InTheory{1}},
        {q, just::Mp{0, 1}},
    };
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::MpMismatch);
    CHECK(verify_deduction(d).first_failure->line == 2);
  }
  SUBCASE("gen mismatch") {
    Deduction d;
    d.theory.formulas = {p};
    d.lines = {
        {p, just::InTheory{0}},
        {Formula::forall("x", q), just::Gen{0, "x"}},
    };
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::GenMismatch);
  }
  SUBCASE("gen variable mismatch") {
    Deduction d;
    d.theory.formulas = {p};
    d.lines = {
        {p, just::InTheory{0}},
        {Formula::forall("x", p), just::Gen{0, "y"}},
    };
    CHECK(verify_deduction(d).first_failure->reason == ReasonCode::GenMismatch);
  }
}

TEST_CASE("theory duplicates are flagged, not fatal") {
  Theory t;
  t.formulas = {parse("P"), parse("Q"), parse("P")};
  CHECK(t.duplicate_indices() == std::vector<std::size_t>{2});
}

TEST_CASE("prefix closure: every prefix of a verified deduction verifies") {
  testkit::Rng rng(11);
  testkit::DeductionGen gen;
  gen.with_hypothesis = true;
  for (int i = 0; i < 100; ++i) {
    Deduction d = testkit::random_verified_deduction(rng, sig(), gen);
    REQUIRE(verify_deduction(d).ok);
    Deduction prefix = d;
    while (prefix.lines.size() > 1) {
      prefix.lines.pop_back();
      CHECK(verify_deduction(prefix).ok);
    }
  }
}

TEST_CASE("verification is deterministic") {
  testkit::Rng rng(12);
  testkit::DeductionGen gen;
  for (int i = 0; i < 20; ++i) {
    Deduction d = testkit::random_verified_deduction(rng, sig(), gen);
    VerificationReport a = verify_deduction(d);
    VerificationReport b = verify_deduction(d);
    CHECK(a.ok == b.ok);
    CHECK(*a.conclusion == *b.conclusion);
  }
}

TEST_CASE("generated axiom instances match their declared schema") {
  testkit::Rng rng(13);
  testkit::DeductionGen gen;
  for (int i = 0; i < 200; ++i) {
    Deduction d = testkit::random_verified_deduction(rng, sig(), gen);
    for (const auto& line : d.lines)
      if (const auto* ax = std::get_if<just::Axiom>(&line.just))
        CHECK(is_axiom_instance(line.formula, ax->schema));
  }
}
