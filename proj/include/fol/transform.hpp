// Proof transformations: hypothesis elimination (the deduction theorem as an
// algorithm), concatenation of a proof of the hypothesis with a deduction
// from it, and weakening. Each output re-verifies under the kernel.

#ifndef FOL_TRANSFORM_HPP
#define FOL_TRANSFORM_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "fol/kernel.hpp"

namespace fol {

// Case analysis tags for hypothesis elimination, one per input line:
//   i-axiom / i-theory : line was an axiom instance or a theory member
//   ii-hypothesis      : line was the hypothesis itself
//   iii-mp             : line came by modus ponens
//   iv-gen             : line came by generalization
enum class TransformCase { AxiomLine, TheoryLine, HypothesisLine, MpLine, GenLine };

std::string_view to_string(TransformCase c);

struct TransformTrace {
  struct Entry {
    std::size_t input_line = 0;
    TransformCase line_case = TransformCase::AxiomLine;
    std::size_t out_begin = 0;  // half-open range of emitted output lines
    std::size_t out_end = 0;
  };
  std::vector<Entry> entries;
};

class TransformError : public std::runtime_error {
public:
  TransformError(ReasonCode reason, const std::string& what)
      : std::runtime_error(what), reason(reason) {}
  ReasonCode reason;
};

// The fixed 5-line, hypothesis-free deduction of a -> a from the empty
// theory: A1, A2, MP 0 1, A1, MP 3 2.
Deduction prove_self_implication(const Formula& a);

struct EliminationResult {
  Deduction deduction;
  TransformTrace trace;
};

// Turns a verifying deduction of b from (T, a) into one of a -> b from T.
// Emits 3 output lines per input line (5 for hypothesis lines). Throws
// TransformError if d lacks a hypothesis or fails verification.
EliminationResult eliminate_hypothesis(const Deduction& d);

// Joins a hypothesis-free proof of a from T with a deduction of b from
// (T, a) into a hypothesis-free deduction of b from T. Hypothesis lines of
// db are dropped and citations of them are remapped to da's conclusion
// line, so the output has len(da) + len(db) - #hypothesis-lines lines.
Deduction concat_deductions(const Deduction& da, const Deduction& db);

// Re-reads a hypothesis-free deduction as one from (T, a); a must be closed.
Deduction weaken(const Deduction& d, const Formula& a);

}  // namespace fol

#endif  // FOL_TRANSFORM_HPP
