// Finite Tarskian semantics, used as an independent soundness oracle for
// the kernel and the transformers: exhaustive enumeration of structures up
// to a domain-size cap and truth evaluation under assignments. A theory is
// satisfied when each formula is true under every assignment to its free
// variables (universal-closure convention).

#ifndef FOL_MODELS_HPP
#define FOL_MODELS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fol/kernel.hpp"
#include "fol/syntax.hpp"

namespace fol {

class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// A finite interpretation: domain {0..n-1} with total tables. Function and
// relation tables are row-major over argument tuples (last argument varies
// fastest); a 0-ary relation table has one entry.
struct Structure {
  std::size_t domain_size = 1;
  std::map<std::string, std::size_t> constants;
  std::map<std::string, std::vector<std::size_t>> functions;
  std::map<std::string, std::vector<bool>> relations;
};

using Assignment = std::map<std::string, std::size_t>;

std::size_t evaluate(const Term& t, const Structure& m, const Assignment& s);
bool evaluate(const Formula& f, const Structure& m, const Assignment& s);

// True under every assignment to the formula's free variables.
bool holds_universally(const Formula& f, const Structure& m);

bool satisfies_theory(const Structure& m, const Theory& t);

struct EnumerationOptions {
  std::size_t max_domain = 4;
  // Hard cap on the number of structures; exceeding it is an error, never a
  // silent truncation.
  unsigned long long budget = 10'000'000;
  // Function symbols of arity >= 2 blow the table count up; enumeration
  // rejects them unless explicitly allowed.
  bool allow_wide_functions = false;
};

// Streams every structure for `sig` with domain size 1..max_domain, each
// exactly once, in a fixed deterministic order.
class StructureEnumerator {
public:
  StructureEnumerator(Signature sig, EnumerationOptions options);

  std::optional<Structure> next();
  unsigned long long total_count() const { return total_; }

private:
  Signature sig_;
  EnumerationOptions options_;
  unsigned long long total_ = 0;
  std::size_t domain_ = 1;
  bool exhausted_ = false;
  bool fresh_domain_ = true;
  // Odometer over all table cells for the current domain size.
  std::vector<std::size_t> cells_;
  std::vector<std::size_t> radices_;

  void start_domain();
  Structure materialize() const;
  bool advance();
};

// Line-wise truth sweep: for every enumerated structure that satisfies the
// theory (and the hypothesis, when present), every line of a verified
// deduction must hold universally.
struct SoundnessSweep {
  unsigned long long structures = 0;
  unsigned long long models_of_premises = 0;
  struct Counterexample {
    Structure structure;
    std::size_t line;
  };
  std::optional<Counterexample> counterexample;
};

SoundnessSweep check_soundness(const Deduction& d, const Signature& sig,
                               EnumerationOptions options);

}  // namespace fol

#endif  // FOL_MODELS_HPP
