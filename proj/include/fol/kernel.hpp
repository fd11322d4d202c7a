// The trusted proof checker for a Hilbert-style calculus: axiom schemas
// A1-A5 with their side conditions, the rules MP and Gen, and verification
// of annotated deduction sequences from a theory plus an optional closed
// hypothesis. Justifications are explicit; the verifier never searches.

#ifndef FOL_KERNEL_HPP
#define FOL_KERNEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fol/syntax.hpp"

namespace fol {

// Schemas (B, C, D arbitrary formulas; x a variable; t a term):
//   A1: B -> (C -> B)
//   A2: (B -> (C -> D)) -> ((B -> C) -> (B -> D))
//   A3: (~C -> ~B) -> ((~C -> B) -> C)
//   A4: (forall x. B) -> B[x:=t],  t free for x in B
//   A5: (forall x. (B -> C)) -> (B -> forall x. C),  x not free in B
enum class SchemaId { A1, A2, A3, A4, A5 };

std::string_view to_string(SchemaId id);
std::optional<SchemaId> schema_from_string(std::string_view text);

// A finite ordered list of formulas. Order matters for file round-tripping
// and for the codec; duplicates are legal but reported by duplicate_indices.
struct Theory {
  std::vector<Formula> formulas;
  std::string name;

  bool same_formulas(const Theory& other) const;
  std::vector<std::size_t> duplicate_indices() const;
};

namespace just {
struct Axiom {
  SchemaId schema;
  bool operator==(const Axiom&) const = default;
};
struct InTheory {
  std::size_t index;
  bool operator==(const InTheory&) const = default;
};
struct Hyp {
  bool operator==(const Hyp&) const = default;
};
struct Mp {
  std::size_t minor;  // line holding B
  std::size_t major;  // line holding B -> C
  bool operator==(const Mp&) const = default;
};
struct Gen {
  std::size_t premise;
  std::string var;
  bool operator==(const Gen&) const = default;
};
}  // namespace just

using Justification =
    std::variant<just::Axiom, just::InTheory, just::Hyp, just::Mp, just::Gen>;

struct DeductionLine {
  Formula formula;
  Justification just;
};

// A justified sequence <B1,...,Bn> over a theory, optionally under one
// closed hypothesis. The last line is the conclusion.
struct Deduction {
  Theory theory;
  std::optional<Formula> hypothesis;
  std::vector<DeductionLine> lines;

  const Formula& conclusion() const { return lines.back().formula; }
};

enum class ReasonCode {
  BadAxiom,        // BAD_AXIOM
  BadIndex,        // BAD_INDEX
  HypAbsent,       // HYP_ABSENT
  HypOpen,         // HYP_OPEN
  HypMismatch,     // HYP_MISMATCH
  TheoryMismatch,  // THEORY_MISMATCH
  MpMismatch,      // MP_MISMATCH
  GenMismatch,     // GEN_MISMATCH
  Empty,           // EMPTY
};

std::string_view to_string(ReasonCode code);

struct VerificationReport {
  struct Failure {
    std::size_t line = 0;
    ReasonCode reason = ReasonCode::Empty;
    std::string message;
  };
  bool ok = false;
  std::optional<Failure> first_failure;
  std::optional<Formula> conclusion;  // set when ok
};

// Total predicate: true iff f matches `schema`, side conditions included.
bool is_axiom_instance(const Formula& f, SchemaId schema);

class RuleError : public std::runtime_error {
public:
  explicit RuleError(const std::string& what) : std::runtime_error(what) {}
};

// Detaches the consequent; throws RuleError unless major == (minor -> C).
Formula apply_mp(const Formula& minor, const Formula& major);

// Gen is unrestricted at the object level (vacuous quantification allowed).
Formula apply_gen(const Formula& f, const std::string& var);

VerificationReport verify_deduction(const Deduction& d);

}  // namespace fol

#endif  // FOL_KERNEL_HPP
