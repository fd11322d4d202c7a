// folkit: verify, transform, number, and search Hilbert-style proofs.
//
// Exit codes: 0 success, 1 check failed (verification/predicate/search/
// soundness), 2 usage or parse error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fol/goedel.hpp"
#include "fol/models.hpp"
#include "fol/script.hpp"
#include "fol/transform.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct Options {
  bool json_output = false;
  std::string codec_name = "compact";
};

fol::Codec make_codec(const Options& opts, const fol::Signature& sig) {
  auto kind = fol::codec_kind_from_string(opts.codec_name);
  if (!kind)
    throw CLI::ValidationError("--codec", "unknown codec '" + opts.codec_name + "'");
  return fol::Codec(*kind, sig);
}

void emit(const Options& opts, const json& j, const std::string& text) {
  if (opts.json_output)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_verify(const Options& opts, const std::string& path) {
  fol::ProofScript script = fol::parse_script(read_file(path));
  fol::VerificationReport report = fol::verify_deduction(script.deduction);
  json j = fol::report_to_json(report);
  auto dups = script.deduction.theory.duplicate_indices();
  if (!dups.empty()) j["duplicate_theory_indices"] = dups;

  std::ostringstream text;
  if (report.ok) {
    text << "ok: " << script.deduction.lines.size() << " line(s), conclusion "
         << fol::print_formula(*report.conclusion) << "\n";
  } else {
    const auto& f = *report.first_failure;
    text << "failed: line " << f.line << " [" << fol::to_string(f.reason) << "] "
         << f.message << "\n";
  }
  for (auto i : dups) text << "warning: theory formula " << i << " is a duplicate\n";
  emit(opts, j, text.str());
  return report.ok ? kExitOk : kExitCheckFailed;
}

int cmd_dt(const Options& opts, const std::string& path, const std::string& out_path,
           const std::string& trace_path) {
  fol::ProofScript script = fol::parse_script(read_file(path));
  fol::EliminationResult result = fol::eliminate_hypothesis(script.deduction);
  fol::ProofScript out{script.signature, result.deduction};
  std::string emitted = fol::emit_script(out);
  json trace = fol::trace_to_json(result.trace);

  if (!out_path.empty()) write_file(out_path, emitted);
  if (!trace_path.empty()) write_file(trace_path, trace.dump(2) + "\n");

  json j;
  j["schema"] = 1;
  j["script"] = fol::script_to_json(out);
  j["trace"] = trace;
  emit(opts, j, out_path.empty() ? emitted : "wrote " + out_path + "\n");
  return kExitOk;
}

int cmd_concat(const Options& opts, const std::string& path_a, const std::string& path_b,
               const std::string& out_path) {
  fol::ProofScript a = fol::parse_script(read_file(path_a));
  fol::ProofScript b = fol::parse_script(read_file(path_b));
  fol::Deduction joined = fol::concat_deductions(a.deduction, b.deduction);
  fol::ProofScript out{a.signature, joined};
  std::string emitted = fol::emit_script(out);
  if (!out_path.empty()) write_file(out_path, emitted);
  json j;
  j["schema"] = 1;
  j["script"] = fol::script_to_json(out);
  emit(opts, j, out_path.empty() ? emitted : "wrote " + out_path + "\n");
  return kExitOk;
}

int cmd_weaken(const Options& opts, const std::string& path, const std::string& hyp_text,
               const std::string& out_path) {
  fol::ProofScript script = fol::parse_script(read_file(path));
  fol::Formula hyp = fol::parse_formula(hyp_text, script.signature);
  fol::Deduction weakened = fol::weaken(script.deduction, hyp);
  fol::ProofScript out{script.signature, weakened};
  std::string emitted = fol::emit_script(out);
  if (!out_path.empty()) write_file(out_path, emitted);
  json j;
  j["schema"] = 1;
  j["script"] = fol::script_to_json(out);
  emit(opts, j, out_path.empty() ? emitted : "wrote " + out_path + "\n");
  return kExitOk;
}

int cmd_goedelize(const Options& opts, const std::string& path,
                  const std::string& formula_text) {
  json j;
  j["schema"] = 1;
  j["codec"] = opts.codec_name;
  std::ostringstream text;
  if (!formula_text.empty()) {
    // Formula over the signature carried by the given script file.
    fol::ProofScript script = fol::parse_script(read_file(path));
    fol::Codec codec = make_codec(opts, script.signature);
    fol::Formula f = fol::parse_formula(formula_text, script.signature);
    fol::GoedelNumber n = fol::encode_formula(f, codec);
    j["kind"] = "formula";
    j["number"] = n.get_str();
    text << n.get_str() << "\n";
  } else {
    fol::ProofScript script = fol::parse_script(read_file(path));
    fol::Codec codec = make_codec(opts, script.signature);
    fol::GoedelNumber n = fol::encode_deduction(script.deduction, codec);
    j["kind"] = "deduction";
    j["number"] = n.get_str();
    j["conclusion_number"] =
        fol::encode_formula(script.deduction.conclusion(), codec).get_str();
    text << n.get_str() << "\n";
  }
  emit(opts, j, text.str());
  return kExitOk;
}

int cmd_check_b(const Options& opts, const std::string& x_text, const std::string& y_text,
                const std::string& theory_path, const std::string& hyp_text) {
  fol::ProofScript theory_script = fol::parse_script(read_file(theory_path));
  fol::Codec codec = make_codec(opts, theory_script.signature);

  fol::ProofPredicateInstance inst;
  inst.x = fol::GoedelNumber(x_text);
  inst.y = fol::GoedelNumber(y_text);
  inst.theory = theory_script.deduction.theory;
  inst.hypothesis = theory_script.deduction.hypothesis;
  if (!hyp_text.empty())
    inst.hypothesis = fol::parse_formula(hyp_text, theory_script.signature);
  inst.codec = &codec;

  bool holds = fol::proof_check_predicate(inst);
  std::string reason;
  if (!holds) {
    auto d = fol::decode_deduction(inst.x, codec, inst.theory, inst.hypothesis);
    if (!d)
      reason = "NOT_A_DEDUCTION";
    else if (auto report = fol::verify_deduction(*d); !report.ok)
      reason = std::string(fol::to_string(report.first_failure->reason));
    else
      reason = "CONCLUSION_MISMATCH";
  }

  json j;
  j["schema"] = 1;
  j["holds"] = holds;
  if (!reason.empty()) j["reason"] = reason;
  std::ostringstream text;
  text << (holds ? "holds" : "does not hold: " + reason) << "\n";
  emit(opts, j, text.str());
  return holds ? kExitOk : kExitCheckFailed;
}

int cmd_search(const Options& opts, const std::string& formula_text,
               const std::string& theory_path, std::size_t max_len, std::size_t max_size,
               const std::string& pool_policy, unsigned long long raw_scan,
               const std::string& out_path) {
  fol::ProofScript theory_script = fol::parse_script(read_file(theory_path));
  fol::Codec codec = make_codec(opts, theory_script.signature);
  fol::Formula target = fol::parse_formula(formula_text, theory_script.signature);
  const auto& theory = theory_script.deduction.theory;
  const auto& hypothesis = theory_script.deduction.hypothesis;

  fol::SearchResult result;
  auto started = std::chrono::steady_clock::now();
  if (raw_scan > 0) {
    result = fol::raw_number_scan(target, theory, hypothesis, raw_scan, codec);
  } else {
    fol::SearchBudget budget;
    budget.max_lines = max_len;
    budget.max_formula_size = max_size;
    if (pool_policy == "bare")
      budget.pool_policy = fol::PoolPolicy::BareSubformulas;
    else if (pool_policy == "closed")
      budget.pool_policy = fol::PoolPolicy::ClosedSubformulas;
    else
      throw CLI::ValidationError("--pool", "unknown pool policy '" + pool_policy + "'");
    result = fol::bounded_proof_search(target, theory, hypothesis, budget, codec);
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);

  json j;
  j["schema"] = 1;
  j["found"] = result.deduction.has_value();
  j["nodes_visited"] = result.stats.nodes_visited;
  j["elapsed_seconds"] = elapsed.count();
  std::ostringstream text;
  if (result.deduction) {
    fol::ProofScript out{theory_script.signature, *result.deduction};
    j["length"] = *result.proof_length;
    j["script"] = fol::script_to_json(out);
    std::string emitted = fol::emit_script(out);
    if (!out_path.empty()) write_file(out_path, emitted);
    text << "found " << *result.proof_length << "-line proof\n" << emitted;
  } else {
    j["bounds_exhausted"] = result.bounds_exhausted;
    text << "absent: bounds exhausted\n";
  }
  emit(opts, j, text.str());
  return result.deduction ? kExitOk : kExitCheckFailed;
}

int cmd_models_check(const Options& opts, const std::string& path, std::size_t max_domain,
                     unsigned long long budget) {
  fol::ProofScript script = fol::parse_script(read_file(path));
  fol::VerificationReport report = fol::verify_deduction(script.deduction);
  if (!report.ok) {
    json j = fol::report_to_json(report);
    emit(opts, j, "failed: deduction does not verify\n");
    return kExitCheckFailed;
  }
  fol::EnumerationOptions options;
  options.max_domain = max_domain;
  options.budget = budget;
  fol::SoundnessSweep sweep = fol::check_soundness(script.deduction, script.signature, options);

  json j;
  j["schema"] = 1;
  j["structures"] = sweep.structures;
  j["models_of_premises"] = sweep.models_of_premises;
  j["sound"] = !sweep.counterexample.has_value();
  std::ostringstream text;
  if (sweep.counterexample) {
    j["counterexample"] = {{"line", sweep.counterexample->line},
                           {"structure", fol::structure_to_json(sweep.counterexample->structure)}};
    text << "counterexample: line " << sweep.counterexample->line << " fails\n";
  } else {
    text << "sound across " << sweep.structures << " structure(s), "
         << sweep.models_of_premises << " model(s) of the premises\n";
  }
  emit(opts, j, text.str());
  return sweep.counterexample ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order proof kernel and proof-transformation toolkit"};
  app.require_subcommand(1);

  Options opts;
  app.add_flag("--json", opts.json_output, "machine-readable JSON output");
  app.add_option("--codec", opts.codec_name, "goedel codec: compact | prime-power")
      ->envname("GOEDEL_CODEC")
      ->capture_default_str();

  std::string path, path_b, out_path, trace_path, formula_text, hyp_text;
  std::string x_text, y_text, pool_policy = "closed";
  std::size_t max_len = 8, max_size = 48, max_domain = 3;
  unsigned long long raw_scan = 0, budget = 10'000'000;

  auto* verify = app.add_subcommand("verify", "check a proof script");
  verify->add_option("proof", path, "proof script")->required();

  auto* dt = app.add_subcommand("dt", "eliminate the hypothesis of a proof");
  dt->add_option("proof", path, "proof script with hypothesis")->required();
  dt->add_option("-o,--out", out_path, "write transformed script here");
  dt->add_option("--trace", trace_path, "write the per-line trace (JSON) here");

  auto* concat = app.add_subcommand("concat", "join a proof of a with a deduction from a");
  concat->add_option("proofA", path, "hypothesis-free proof of a")->required();
  concat->add_option("proofB", path_b, "deduction under hypothesis a")->required();
  concat->add_option("-o,--out", out_path, "write joined script here");

  auto* weaken = app.add_subcommand("weaken", "add an unused closed hypothesis");
  weaken->add_option("proof", path, "hypothesis-free proof script")->required();
  weaken->add_option("--hyp", hyp_text, "closed hypothesis formula")->required();
  weaken->add_option("-o,--out", out_path, "write weakened script here");

  auto* goedelize = app.add_subcommand("goedelize", "number a proof script or formula");
  goedelize->add_option("proof", path, "proof script (also supplies the signature)")
      ->required();
  goedelize->add_option("--formula", formula_text,
                        "number this formula instead of the script's deduction");

  auto* check_b = app.add_subcommand("check-b", "decide the proof predicate x B y");
  check_b->add_option("x", x_text, "candidate deduction number (decimal)")->required();
  check_b->add_option("y", y_text, "conclusion formula number (decimal)")->required();
  check_b->add_option("--theory", path, "theory file (signature + theory headers)")
      ->required();
  check_b->add_option("--hyp", hyp_text, "hypothesis formula (overrides theory file)");

  auto* search = app.add_subcommand("search", "bounded proof search");
  search->add_option("formula", formula_text, "target formula")->required();
  search->add_option("--theory", path, "theory file")->required();
  search->add_option("--max-len", max_len, "maximum number of lines")
      ->capture_default_str();
  search->add_option("--max-size", max_size, "maximum formula size (nodes)")
      ->capture_default_str();
  search->add_option("--pool", pool_policy, "formula pool policy: closed | bare")
      ->capture_default_str();
  search->add_option("--raw-scan", raw_scan,
                     "literal mode: test x = 1..CAP against the predicate");
  search->add_option("-o,--out", out_path, "write found script here");

  auto* models_check = app.add_subcommand("models-check", "finite-model soundness sweep");
  models_check->add_option("proof", path, "proof script")->required();
  models_check->add_option("--max-domain", max_domain, "domain size cap")
      ->capture_default_str();
  models_check->add_option("--budget", budget, "structure count budget")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (verify->parsed()) return cmd_verify(opts, path);
    if (dt->parsed()) return cmd_dt(opts, path, out_path, trace_path);
    if (concat->parsed()) return cmd_concat(opts, path, path_b, out_path);
    if (weaken->parsed()) return cmd_weaken(opts, path, hyp_text, out_path);
    if (goedelize->parsed()) return cmd_goedelize(opts, path, formula_text);
    if (check_b->parsed()) return cmd_check_b(opts, x_text, y_text, path, hyp_text);
    if (search->parsed())
      return cmd_search(opts, formula_text, path, max_len, max_size, pool_policy,
                        raw_scan, out_path);
    if (models_check->parsed()) return cmd_models_check(opts, path, max_domain, budget);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const fol::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fol::SignatureError& e) {
    std::cerr << "signature error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fol::TransformError& e) {
    std::cerr << "transform error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
