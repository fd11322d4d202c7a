#include "fol/script.hpp"

#include <cctype>
#include <sstream>

namespace fol {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix, std::string_view& rest) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  rest = trim(s.substr(prefix.size()));
  return true;
}

[[noreturn]] void fail(int line_no, const std::string& message) {
  throw ParseError(message, line_no, 1, "");
}

Justification parse_justification(std::string_view text, int line_no) {
  std::istringstream in{std::string(text)};
  std::string kind;
  in >> kind;
  auto need_index = [&](const char* what) -> std::size_t {
    long long v = -1;
    if (!(in >> v) || v < 0) fail(line_no, std::string("expected index after '") + what + "'");
    return static_cast<std::size_t>(v);
  };
  Justification just;
  if (kind == "axiom") {
    std::string id;
    if (!(in >> id)) fail(line_no, "expected schema id after 'axiom'");
    auto schema = schema_from_string(id);
    if (!schema) fail(line_no, "unknown schema id '" + id + "'");
    just = just::Axiom{*schema};
  } else if (kind == "theory") {
    just = just::InTheory{need_index("theory")};
  } else if (kind == "hyp") {
    just = just::Hyp{};
  } else if (kind == "mp") {
    std::size_t i = need_index("mp");
    std::size_t j = need_index("mp");
    just = just::Mp{i, j};
  } else if (kind == "gen") {
    std::size_t i = need_index("gen");
    std::string var;
    if (!(in >> var) || !is_identifier(var))
      fail(line_no, "expected variable after 'gen <i>'");
    just = just::Gen{i, var};
  } else {
    fail(line_no, "unknown justification '" + kind + "'");
  }
  std::string extra;
  if (in >> extra) fail(line_no, "trailing text in justification: '" + extra + "'");
  return just;
}

std::string justification_text(const Justification& just) {
  if (const auto* ax = std::get_if<just::Axiom>(&just))
    return "axiom " + std::string(to_string(ax->schema));
  if (const auto* th = std::get_if<just::InTheory>(&just))
    return "theory " + std::to_string(th->index);
  if (std::get_if<just::Hyp>(&just)) return "hyp";
  if (const auto* mp = std::get_if<just::Mp>(&just))
    return "mp " + std::to_string(mp->minor) + " " + std::to_string(mp->major);
  const auto& gen = std::get<just::Gen>(just);
  return "gen " + std::to_string(gen.premise) + " " + gen.var;
}

ProofScript parse_script_text(std::string_view text) {
  ProofScript script;
  std::size_t expected_index = 0;
  bool saw_lines = false;

  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string_view rest;
    if (starts_with(line, "const:", rest)) {
      script.signature.constants.emplace_back(rest);
      continue;
    }
    if (starts_with(line, "func:", rest) || starts_with(line, "rel:", rest)) {
      std::istringstream decl{std::string(rest)};
      std::string name;
      long long arity = -1;
      if (!(decl >> name >> arity) || arity < 0)
        fail(line_no, "expected '<name> <arity>'");
      if (line.substr(0, 4) == "func")
        script.signature.functions.emplace_back(name, static_cast<std::size_t>(arity));
      else
        script.signature.relations.emplace_back(name, static_cast<std::size_t>(arity));
      continue;
    }
    if (starts_with(line, "theory:", rest)) {
      if (saw_lines) fail(line_no, "theory header after numbered lines");
      script.deduction.theory.formulas.push_back(
          parse_formula(rest, script.signature));
      continue;
    }
    if (starts_with(line, "hypothesis:", rest)) {
      if (script.deduction.hypothesis) fail(line_no, "duplicate hypothesis header");
      script.deduction.hypothesis = parse_formula(rest, script.signature);
      continue;
    }

    // Numbered line: "<n>. <formula> [<justification>]".
    std::size_t dot = line.find('.');
    if (dot == std::string_view::npos) fail(line_no, "expected '<n>.' line number");
    std::size_t n = 0;
    {
      std::istringstream num{std::string(line.substr(0, dot))};
      long long v = -1;
      std::string extra;
      if (!(num >> v) || v < 0 || (num >> extra))
        fail(line_no, "bad line number '" + std::string(line.substr(0, dot)) + "'");
      n = static_cast<std::size_t>(v);
    }
    if (n != expected_index)
      fail(line_no, "line numbered " + std::to_string(n) + ", expected " +
                        std::to_string(expected_index));
    std::size_t open = line.rfind('[');
    std::size_t close = line.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      fail(line_no, "expected '[<justification>]'");
    Formula f = parse_formula(trim(line.substr(dot + 1, open - dot - 1)), script.signature);
    Justification just =
        parse_justification(trim(line.substr(open + 1, close - open - 1)), line_no);
    script.deduction.lines.push_back({std::move(f), std::move(just)});
    saw_lines = true;
    ++expected_index;
  }

  script.signature.check();
  return script;
}

}  // namespace

ProofScript parse_script(std::string_view text) {
  std::string_view probe = trim(text);
  if (!probe.empty() && probe.front() == '{')
    return script_from_json(json::parse(std::string(text)));
  return parse_script_text(text);
}

std::string emit_script(const ProofScript& script) {
  std::ostringstream out;
  for (const auto& c : script.signature.constants) out << "const: " << c << "\n";
  for (const auto& [f, a] : script.signature.functions)
    out << "func: " << f << " " << a << "\n";
  for (const auto& [r, a] : script.signature.relations)
    out << "rel: " << r << " " << a << "\n";
  for (const auto& f : script.deduction.theory.formulas)
    out << "theory: " << print_formula(f) << "\n";
  if (script.deduction.hypothesis)
    out << "hypothesis: " << print_formula(*script.deduction.hypothesis) << "\n";
  for (std::size_t i = 0; i < script.deduction.lines.size(); ++i) {
    const auto& line = script.deduction.lines[i];
    out << i << ". " << print_formula(line.formula) << " ["
        << justification_text(line.just) << "]\n";
  }
  return out.str();
}

nlohmann::json script_to_json(const ProofScript& script) {
  json j;
  j["schema"] = 1;
  json sig;
  sig["constants"] = script.signature.constants;
  sig["functions"] = json::array();
  for (const auto& [f, a] : script.signature.functions)
    sig["functions"].push_back({{"name", f}, {"arity", a}});
  sig["relations"] = json::array();
  for (const auto& [r, a] : script.signature.relations)
    sig["relations"].push_back({{"name", r}, {"arity", a}});
  j["signature"] = sig;
  j["theory"] = json::array();
  for (const auto& f : script.deduction.theory.formulas)
    j["theory"].push_back(print_formula(f));
  if (script.deduction.hypothesis)
    j["hypothesis"] = print_formula(*script.deduction.hypothesis);
  j["lines"] = json::array();
  for (const auto& line : script.deduction.lines) {
    json l;
    l["formula"] = print_formula(line.formula);
    l["justification"] = justification_text(line.just);
    j["lines"].push_back(l);
  }
  return j;
}

ProofScript script_from_json(const nlohmann::json& j) {
  ProofScript script;
  const auto& sig = j.at("signature");
  for (const auto& c : sig.at("constants"))
    script.signature.constants.push_back(c.get<std::string>());
  for (const auto& f : sig.at("functions"))
    script.signature.functions.emplace_back(f.at("name").get<std::string>(),
                                            f.at("arity").get<std::size_t>());
  for (const auto& r : sig.at("relations"))
    script.signature.relations.emplace_back(r.at("name").get<std::string>(),
                                            r.at("arity").get<std::size_t>());
  script.signature.check();
  for (const auto& f : j.at("theory"))
    script.deduction.theory.formulas.push_back(
        parse_formula(f.get<std::string>(), script.signature));
  if (j.contains("hypothesis"))
    script.deduction.hypothesis =
        parse_formula(j.at("hypothesis").get<std::string>(), script.signature);
  for (const auto& l : j.at("lines")) {
    Formula f = parse_formula(l.at("formula").get<std::string>(), script.signature);
    Justification just =
        parse_justification(l.at("justification").get<std::string>(), 0);
    script.deduction.lines.push_back({std::move(f), std::move(just)});
  }
  return script;
}

nlohmann::json report_to_json(const VerificationReport& report) {
  json j;
  j["schema"] = 1;
  j["ok"] = report.ok;
  if (report.first_failure) {
    j["failure"] = {{"line", report.first_failure->line},
                    {"reason", std::string(to_string(report.first_failure->reason))},
                    {"message", report.first_failure->message}};
  }
  if (report.conclusion) j["conclusion"] = print_formula(*report.conclusion);
  return j;
}

nlohmann::json trace_to_json(const TransformTrace& trace) {
  json entries = json::array();
  for (const auto& e : trace.entries) {
    entries.push_back({{"input_line", e.input_line},
                       {"case", std::string(to_string(e.line_case))},
                       {"out_begin", e.out_begin},
                       {"out_end", e.out_end}});
  }
  return json{{"schema", 1}, {"entries", entries}};
}

nlohmann::json structure_to_json(const Structure& m) {
  json j;
  j["schema"] = 1;
  j["domain_size"] = m.domain_size;
  j["constants"] = m.constants;
  j["functions"] = m.functions;
  json rels = json::object();
  for (const auto& [name, table] : m.relations) {
    std::vector<int> bits(table.begin(), table.end());
    rels[name] = bits;
  }
  j["relations"] = rels;
  return j;
}

Structure structure_from_json(const nlohmann::json& j) {
  Structure m;
  m.domain_size = j.at("domain_size").get<std::size_t>();
  if (m.domain_size < 1) throw ModelError("domain_size must be >= 1");
  for (const auto& [name, v] : j.at("constants").items())
    m.constants[name] = v.get<std::size_t>();
  for (const auto& [name, v] : j.at("functions").items())
    m.functions[name] = v.get<std::vector<std::size_t>>();
  for (const auto& [name, v] : j.at("relations").items()) {
    std::vector<int> bits = v.get<std::vector<int>>();
    m.relations[name] = std::vector<bool>(bits.begin(), bits.end());
  }
  return m;
}

}  // namespace fol
