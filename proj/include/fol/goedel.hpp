// Arithmetization: injective numberings of formulas and deductions, the
// decidable proof-check predicate over them, length-bounded proof search,
// and constructive witness transport between arithmetized statements.
//
// Two codecs share one symbol table:
//   logical symbols  ~ -> forall ( ) , .   =  1 2 3 4 5 6 7
//   variables        code 2k+8 (even), k = shortlex rank of the identifier
//   signature symbols odd codes 9, 11, ... in declaration order
//     (constants, then functions, then relations)
//
// A formula is numbered through its canonical token stream:
//   prime-power: N = prod p_i^(c_i), p_1 = 2, c_i the i-th token code.
//   compact:     the length-prefixed stream [n, c_1..c_n] becomes base-B
//                digits of D with B = max element + 1, and N = pair(B, D)
//                (Cantor pairing), so B is recoverable and N is injective.
//
// A deduction flattens to one value stream and reuses the same two
// packings (a literal nested prime-power number, with whole formula numbers
// as exponents, would be astronomically infeasible for any nonempty
// deduction):
//   [#lines, { #tokens, token codes..., tag, args... }]
// with justification tags axiom=1 (schema 1..5), theory=2 (index), hyp=3,
// mp=4 (minor, major), gen=5 (premise, variable code). The prime-power
// packing of such a stream spells each value as byte-count plus big-endian
// base-256 digits and exponentiates digit+1; the compact packing is the
// same pair(B, digits) scheme as for formulas.

#ifndef FOL_GOEDEL_HPP
#define FOL_GOEDEL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fol/kernel.hpp"
#include "fol/syntax.hpp"

namespace fol {

// Arbitrary-precision natural number; valid encodings are >= 1.
using GoedelNumber = mpz_class;

enum class CodecKind { PrimePower, Compact };

std::string_view to_string(CodecKind kind);
std::optional<CodecKind> codec_kind_from_string(std::string_view text);

class CodecError : public std::runtime_error {
public:
  explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

class Codec {
public:
  Codec(CodecKind kind, Signature sig);

  CodecKind kind() const { return kind_; }
  const Signature& signature() const { return sig_; }

  // Token <-> code. Undeclared identifiers are variables. token_code throws
  // CodecError for tokens that cannot be numbered; token_for_code returns
  // nullopt for codes outside the table.
  GoedelNumber token_code(const Token& token) const;
  std::optional<Token> token_for_code(const GoedelNumber& code) const;

  // Shortlex bijection between identifiers and k in code 2k+8. Decoded
  // names are capped at 64 characters.
  static GoedelNumber variable_rank(const std::string& name);
  static std::optional<std::string> variable_name_for_rank(const GoedelNumber& rank);

private:
  CodecKind kind_;
  Signature sig_;
  std::vector<std::pair<std::string, unsigned long>> symbol_codes_;  // declaration order
};

GoedelNumber encode_formula(const Formula& f, const Codec& codec);
std::optional<Formula> decode_formula(const GoedelNumber& n, const Codec& codec);

// Numbers the justified line sequence only; theory and hypothesis are
// context, supplied again at decode time. Throws TransformError when d does
// not verify.
GoedelNumber encode_deduction(const Deduction& d, const Codec& codec);

// Same numbering without the verification precondition, for posing
// predicate queries about candidates that may not be deductions at all.
GoedelNumber encode_deduction_unchecked(const Deduction& d, const Codec& codec);
std::optional<Deduction> decode_deduction(const GoedelNumber& n, const Codec& codec,
                                          const Theory& theory,
                                          const std::optional<Formula>& hypothesis);

// The relation "x numbers a deduction from (theory, hypothesis) whose
// conclusion is numbered by y". Total: malformed x yields false.
struct ProofPredicateInstance {
  GoedelNumber x;
  GoedelNumber y;
  Theory theory;
  std::optional<Formula> hypothesis;
  const Codec* codec = nullptr;
};

bool proof_check_predicate(const ProofPredicateInstance& inst);

// Witness transport. transport_1_1 maps a witness of b from (T, a) to one
// of a -> b from T; transport_2_2 maps a witness of b from T plus a closed
// a to a witness of a -> b from T.
Deduction transport_1_1(const Deduction& witness);
Deduction transport_2_2(const Deduction& u_witness, const Formula& a);

// --- Bounded proof search ---------------------------------------------------

// Candidate lines are theory members, the hypothesis, and axiom instances
// whose schema parameters range over the pool (terms: subterms of the
// inputs plus pool variables), closed under MP and Gen. The search returns
// the first verifying sequence concluding the target in canonical order:
// shorter first, then lexicographic by per-line encoded number.
enum class PoolPolicy {
  ClosedSubformulas,  // subformulas of target/theory/hypothesis, one level
                      // of ->-composition, one Gen per pool variable
  BareSubformulas,    // subformulas only
  ExplicitPool,       // caller-provided
};

struct SearchBudget {
  std::size_t max_lines = 0;         // L, required > 0
  std::size_t max_formula_size = 0;  // S (node count), required > 0
  PoolPolicy pool_policy = PoolPolicy::ClosedSubformulas;
  std::vector<Formula> pool;  // used when pool_policy == ExplicitPool
};

struct SearchStats {
  unsigned long long nodes_visited = 0;
  std::size_t pool_size = 0;
  std::size_t static_candidates = 0;
};

struct SearchResult {
  std::optional<Deduction> deduction;
  std::optional<std::size_t> proof_length;
  bool bounds_exhausted = false;
  SearchStats stats;
};

std::vector<Formula> build_search_pool(const Formula& target, const Theory& theory,
                                       const std::optional<Formula>& hypothesis,
                                       const SearchBudget& budget);

SearchResult bounded_proof_search(const Formula& target, const Theory& theory,
                                  const std::optional<Formula>& hypothesis,
                                  const SearchBudget& budget, const Codec& codec);

// The literal decision procedure at micro scale: test x = 1..x_cap against
// the predicate and decode the first hit.
SearchResult raw_number_scan(const Formula& target, const Theory& theory,
                             const std::optional<Formula>& hypothesis,
                             unsigned long long x_cap, const Codec& codec);

// --- Packing internals, exposed for tests -----------------------------------

namespace packing {

// Cantor pairing and its inverse.
GoedelNumber pair(const GoedelNumber& a, const GoedelNumber& b);
std::pair<GoedelNumber, GoedelNumber> unpair(const GoedelNumber& z);

// prod p_i^(codes_i); every code must be >= 1.
GoedelNumber pack_prime_codes(const std::vector<GoedelNumber>& codes);
std::optional<std::vector<GoedelNumber>> unpack_prime_codes(const GoedelNumber& n);

// Length-prefixed byte-flattened prime-power stream for large values.
GoedelNumber pack_prime_values(const std::vector<GoedelNumber>& values);
std::optional<std::vector<GoedelNumber>> unpack_prime_values(const GoedelNumber& n);

// Length-prefixed base-B packing, pair(B, digits).
GoedelNumber pack_compact(const std::vector<GoedelNumber>& values);
std::optional<std::vector<GoedelNumber>> unpack_compact(const GoedelNumber& n);

// The i-th prime, 0-based (prime(0) = 2).
unsigned long prime(std::size_t index);

}  // namespace packing

}  // namespace fol

#endif  // FOL_GOEDEL_HPP
