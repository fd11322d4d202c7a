// Proof-script interchange format, the single on-disk format every command
// reads and writes, plus JSON mirrors of scripts, reports, traces, and
// structures.
//
//   # comment
//   const: c
//   func: f 1
//   rel: P 0
//   theory: (P -> Q)
//   hypothesis: P
//   0. P [hyp]
//   1. (P -> Q) [theory 0]
//   2. Q [mp 0 1]
//
// Signature headers come first (declaration order is preserved; it feeds
// the codec), then theory/hypothesis headers, then numbered lines counting
// strictly up from 0. Justifications: axiom A1..A5 | theory <k> | hyp |
// mp <i> <j> | gen <i> <var>. A file without numbered lines is a theory
// file. JSON input is recognized by a leading '{'.

#ifndef FOL_SCRIPT_HPP
#define FOL_SCRIPT_HPP

#include <string>
#include <string_view>

#include "json.hpp"

#include "fol/kernel.hpp"
#include "fol/models.hpp"
#include "fol/transform.hpp"

namespace fol {

struct ProofScript {
  Signature signature;
  Deduction deduction;
};

ProofScript parse_script(std::string_view text);
std::string emit_script(const ProofScript& script);

nlohmann::json script_to_json(const ProofScript& script);
ProofScript script_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json trace_to_json(const TransformTrace& trace);

nlohmann::json structure_to_json(const Structure& m);
Structure structure_from_json(const nlohmann::json& j);

}  // namespace fol

#endif  // FOL_SCRIPT_HPP
