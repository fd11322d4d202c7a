#include "fol/goedel.hpp"

#include <algorithm>
#include <mutex>

#include "fol/transform.hpp"

namespace fol {

std::string_view to_string(CodecKind kind) {
  return kind == CodecKind::PrimePower ? "prime-power" : "compact";
}

std::optional<CodecKind> codec_kind_from_string(std::string_view text) {
  if (text == "prime-power") return CodecKind::PrimePower;
  if (text == "compact") return CodecKind::Compact;
  return std::nullopt;
}

namespace packing {

unsigned long prime(std::size_t index) {
  static std::vector<unsigned long> cache = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= index) {
    unsigned long candidate = cache.back() + 2;
    for (;; candidate += 2) {
      bool composite = false;
      for (unsigned long p : cache) {
        if (p * p > candidate) break;
        if (candidate % p == 0) {
          composite = true;
          break;
        }
      }
      if (!composite) break;
    }
    cache.push_back(candidate);
  }
  return cache[index];
}

GoedelNumber pair(const GoedelNumber& a, const GoedelNumber& b) {
  GoedelNumber s = a + b;
  GoedelNumber t = s * (s + 1) / 2;
  return t + b;
}

std::pair<GoedelNumber, GoedelNumber> unpair(const GoedelNumber& z) {
  GoedelNumber r;
  mpz_sqrt(r.get_mpz_t(), GoedelNumber(8 * z + 1).get_mpz_t());
  GoedelNumber w = (r - 1) / 2;
  GoedelNumber t = w * (w + 1) / 2;
  GoedelNumber b = z - t;
  GoedelNumber a = w - b;
  return {a, b};
}

namespace {

// Exponents in prime-power numbers must stay small enough to materialize.
constexpr unsigned long kMaxExponent = 1ul << 24;

bool fits_index(const GoedelNumber& v) { return mpz_fits_ulong_p(v.get_mpz_t()) != 0; }

std::vector<unsigned char> to_bytes(const GoedelNumber& v) {
  std::vector<unsigned char> out;
  if (v == 0) return out;
  std::size_t count = 0;
  out.resize((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  mpz_export(out.data(), &count, 1, 1, 0, 0, v.get_mpz_t());
  out.resize(count);
  return out;
}

GoedelNumber from_bytes(const std::vector<unsigned char>& bytes) {
  GoedelNumber v = 0;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
  return v;
}

// Extracts the exponent stream of n = prod p_i^(e_i): all e_i >= 1 and the
// remainder is exactly 1, else nullopt.
std::optional<std::vector<unsigned long>> exponent_stream(const GoedelNumber& n) {
  if (n < 2) return std::nullopt;
  std::vector<unsigned long> exps;
  GoedelNumber remaining = n;
  for (std::size_t i = 0; remaining != 1; ++i) {
    GoedelNumber p = prime(i);
    mp_bitcnt_t e = mpz_remove(remaining.get_mpz_t(), remaining.get_mpz_t(), p.get_mpz_t());
    if (e == 0 || e > kMaxExponent) return std::nullopt;
    exps.push_back(static_cast<unsigned long>(e));
  }
  return exps;
}

}  // namespace

namespace {

// Balanced product keeps the repeated multiplications near-linear.
GoedelNumber product_tree(std::vector<GoedelNumber>& factors) {
  if (factors.empty()) return 1;
  while (factors.size() > 1) {
    std::size_t half = (factors.size() + 1) / 2;
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2)
      factors[i / 2] = factors[i] * factors[i + 1];
    if (factors.size() % 2) factors[half - 1] = factors.back();
    factors.resize(half);
  }
  return factors[0];
}

}  // namespace

GoedelNumber pack_prime_codes(const std::vector<GoedelNumber>& codes) {
  if (codes.empty()) throw CodecError("cannot pack an empty code sequence");
  std::vector<GoedelNumber> factors(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] < 1 || !fits_index(codes[i]) || codes[i].get_ui() > kMaxExponent)
      throw CodecError("symbol code out of prime-power range");
    mpz_ui_pow_ui(factors[i].get_mpz_t(), prime(i), codes[i].get_ui());
  }
  return product_tree(factors);
}

std::optional<std::vector<GoedelNumber>> unpack_prime_codes(const GoedelNumber& n) {
  auto exps = exponent_stream(n);
  if (!exps) return std::nullopt;
  std::vector<GoedelNumber> codes;
  codes.reserve(exps->size());
  for (unsigned long e : *exps) codes.emplace_back(e);
  return codes;
}

GoedelNumber pack_prime_values(const std::vector<GoedelNumber>& values) {
  if (values.empty()) throw CodecError("cannot pack an empty value sequence");
  if (values.size() > 65535) throw CodecError("value sequence too long");
  std::vector<unsigned long> flat;
  flat.push_back(values.size());
  for (const auto& v : values) {
    if (v < 0) throw CodecError("negative value in sequence");
    auto bytes = to_bytes(v);
    if (bytes.size() > 65535) throw CodecError("value too large to flatten");
    flat.push_back(bytes.size());
    for (unsigned char b : bytes) flat.push_back(b);
  }
  std::vector<GoedelNumber> factors(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i)
    mpz_ui_pow_ui(factors[i].get_mpz_t(), prime(i), flat[i] + 1);
  return product_tree(factors);
}

std::optional<std::vector<GoedelNumber>> unpack_prime_values(const GoedelNumber& n) {
  auto exps = exponent_stream(n);
  if (!exps) return std::nullopt;
  const auto& flat = *exps;  // each element is value + 1
  std::size_t pos = 0;
  auto take = [&]() -> std::optional<unsigned long> {
    if (pos >= flat.size()) return std::nullopt;
    return flat[pos++] - 1;
  };
  auto count = take();
  if (!count) return std::nullopt;
  std::vector<GoedelNumber> values;
  for (unsigned long i = 0; i < *count; ++i) {
    auto len = take();
    if (!len) return std::nullopt;
    std::vector<unsigned char> bytes;
    bytes.reserve(*len);
    for (unsigned long j = 0; j < *len; ++j) {
      auto b = take();
      if (!b || *b > 255) return std::nullopt;
      bytes.push_back(static_cast<unsigned char>(*b));
    }
    if (!bytes.empty() && bytes[0] == 0) return std::nullopt;  // non-minimal
    values.push_back(from_bytes(bytes));
  }
  if (pos != flat.size()) return std::nullopt;
  return values;
}

GoedelNumber pack_compact(const std::vector<GoedelNumber>& values) {
  if (values.empty()) throw CodecError("cannot pack an empty value sequence");
  std::vector<GoedelNumber> stream;
  stream.reserve(values.size() + 1);
  stream.emplace_back(values.size());
  for (const auto& v : values) {
    if (v < 0) throw CodecError("negative value in sequence");
    stream.push_back(v);
  }
  GoedelNumber base = *std::max_element(stream.begin(), stream.end()) + 1;
  if (base < 2) base = 2;
  GoedelNumber digits = 0;
  for (const auto& v : stream) digits = digits * base + v;
  return pair(base, digits);
}

std::optional<std::vector<GoedelNumber>> unpack_compact(const GoedelNumber& n) {
  if (n < 0) return std::nullopt;
  auto [base, digits] = unpair(n);
  if (base < 2 || digits < 1) return std::nullopt;
  std::vector<GoedelNumber> stream;
  GoedelNumber rest = digits;
  while (rest > 0) {
    GoedelNumber q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
    stream.push_back(r);
    rest = q;
  }
  std::reverse(stream.begin(), stream.end());
  // Strict canonicity: declared length and minimal base must both match.
  if (stream.empty() || !fits_index(stream[0])) return std::nullopt;
  if (stream[0].get_ui() != stream.size() - 1) return std::nullopt;
  if (*std::max_element(stream.begin(), stream.end()) + 1 != base) return std::nullopt;
  return std::vector<GoedelNumber>(stream.begin() + 1, stream.end());
}

}  // namespace packing

// --- Codec -------------------------------------------------------------------

namespace {

const std::string kFirstAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";  // 52
const std::string kRestAlphabet =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ_abcdefghijklmnopqrstuvwxyz";  // 63
constexpr std::size_t kMaxDecodedNameLength = 64;

}  // namespace

Codec::Codec(CodecKind kind, Signature sig) : kind_(kind), sig_(std::move(sig)) {
  sig_.check();
  unsigned long next = 9;
  auto add = [&](const std::string& name) {
    symbol_codes_.emplace_back(name, next);
    next += 2;
  };
  for (const auto& c : sig_.constants) add(c);
  for (const auto& [f, a] : sig_.functions) add(f);
  for (const auto& [r, a] : sig_.relations) add(r);
}

GoedelNumber Codec::variable_rank(const std::string& name) {
  if (!is_identifier(name)) throw CodecError("bad variable name '" + name + "'");
  GoedelNumber rank = 0;
  GoedelNumber block = 52;
  for (std::size_t len = 1; len < name.size(); ++len) {
    rank += block;
    block *= 63;
  }
  GoedelNumber index = kFirstAlphabet.find(name[0]);
  for (std::size_t i = 1; i < name.size(); ++i)
    index = index * 63 + GoedelNumber(kRestAlphabet.find(name[i]));
  return rank + index;
}

std::optional<std::string> Codec::variable_name_for_rank(const GoedelNumber& rank) {
  if (rank < 0) return std::nullopt;
  GoedelNumber rest = rank;
  GoedelNumber block = 52;
  std::size_t len = 1;
  while (rest >= block) {
    rest -= block;
    block *= 63;
    if (++len > kMaxDecodedNameLength) return std::nullopt;
  }
  std::string name(len, '?');
  for (std::size_t i = len; i-- > 1;) {
    GoedelNumber q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), GoedelNumber(63).get_mpz_t());
    name[i] = kRestAlphabet[r.get_ui()];
    rest = q;
  }
  name[0] = kFirstAlphabet[rest.get_ui()];
  if (!is_identifier(name)) return std::nullopt;  // rejects "forall"
  return name;
}

GoedelNumber Codec::token_code(const Token& token) const {
  switch (token.kind) {
    case Token::Kind::Not: return 1;
    case Token::Kind::Implies: return 2;
    case Token::Kind::ForAll: return 3;
    case Token::Kind::LParen: return 4;
    case Token::Kind::RParen: return 5;
    case Token::Kind::Comma: return 6;
    case Token::Kind::Dot: return 7;
    case Token::Kind::Ident: {
      for (const auto& [name, code] : symbol_codes_)
        if (name == token.text) return code;
      return 2 * variable_rank(token.text) + 8;
    }
    case Token::Kind::End: break;
  }
  throw CodecError("token has no code");
}

std::optional<Token> Codec::token_for_code(const GoedelNumber& code) const {
  if (code < 1) return std::nullopt;
  if (code <= 7) {
    static const Token::Kind kinds[] = {
        Token::Kind::Not,    Token::Kind::Implies, Token::Kind::ForAll,
        Token::Kind::LParen, Token::Kind::RParen,  Token::Kind::Comma,
        Token::Kind::Dot};
    return Token{kinds[code.get_ui() - 1], "", 0, 0};
  }
  if (mpz_odd_p(code.get_mpz_t())) {
    GoedelNumber index = (code - 9) / 2;
    if (!mpz_fits_ulong_p(index.get_mpz_t())) return std::nullopt;
    unsigned long i = index.get_ui();
    if (i >= symbol_codes_.size()) return std::nullopt;
    return Token{Token::Kind::Ident, symbol_codes_[i].first, 0, 0};
  }
  auto name = variable_name_for_rank((code - 8) / 2);
  if (!name) return std::nullopt;
  if (sig_.declares(*name)) return std::nullopt;  // canonical code is the odd one
  return Token{Token::Kind::Ident, *name, 0, 0};
}

// --- Formula numbering ----------------------------------------------------------

namespace {

std::vector<GoedelNumber> formula_codes(const Formula& f, const Codec& codec) {
  try {
    validate(f, codec.signature());
  } catch (const SignatureError& e) {
    throw CodecError(std::string("formula not over the codec signature: ") + e.what());
  }
  std::vector<GoedelNumber> codes;
  for (const auto& token : formula_tokens(f)) codes.push_back(codec.token_code(token));
  return codes;
}

}  // namespace

GoedelNumber encode_formula(const Formula& f, const Codec& codec) {
  std::vector<GoedelNumber> codes = formula_codes(f, codec);
  return codec.kind() == CodecKind::PrimePower ? packing::pack_prime_codes(codes)
                                               : packing::pack_compact(codes);
}

std::optional<Formula> decode_formula(const GoedelNumber& n, const Codec& codec) {
  auto codes = codec.kind() == CodecKind::PrimePower ? packing::unpack_prime_codes(n)
                                                     : packing::unpack_compact(n);
  if (!codes) return std::nullopt;
  std::vector<Token> tokens;
  tokens.reserve(codes->size() + 1);
  for (const auto& code : *codes) {
    auto token = codec.token_for_code(code);
    if (!token) return std::nullopt;
    tokens.push_back(std::move(*token));
  }
  tokens.push_back(Token{Token::Kind::End, "", 0, 0});
  try {
    return parse_formula(tokens, codec.signature());
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

// --- Deduction numbering ----------------------------------------------------------

namespace {

constexpr unsigned long kTagAxiom = 1, kTagTheory = 2, kTagHyp = 3, kTagMp = 4,
                        kTagGen = 5;

GoedelNumber pack_values(const std::vector<GoedelNumber>& values, CodecKind kind) {
  return kind == CodecKind::PrimePower ? packing::pack_prime_values(values)
                                       : packing::pack_compact(values);
}

std::optional<std::vector<GoedelNumber>> unpack_values(const GoedelNumber& n,
                                                       CodecKind kind) {
  return kind == CodecKind::PrimePower ? packing::unpack_prime_values(n)
                                       : packing::unpack_compact(n);
}

unsigned long schema_number(SchemaId id) {
  return static_cast<unsigned long>(id) + 1;
}

std::optional<SchemaId> schema_for_number(unsigned long n) {
  if (n < 1 || n > 5) return std::nullopt;
  return static_cast<SchemaId>(n - 1);
}

}  // namespace

GoedelNumber encode_deduction(const Deduction& d, const Codec& codec) {
  VerificationReport report = verify_deduction(d);
  if (!report.ok) {
    const auto& f = *report.first_failure;
    throw TransformError(f.reason, "cannot number an invalid deduction: line " +
                                       std::to_string(f.line) + " " + f.message);
  }
  return encode_deduction_unchecked(d, codec);
}

GoedelNumber encode_deduction_unchecked(const Deduction& d, const Codec& codec) {
  // One flat stream: [#lines, { #tokens, token codes..., tag, args... }].
  // Spelling each line's formula by its token codes instead of its packed
  // number keeps the stream elements small; a nested prime-power pack would
  // be astronomically large for any nonempty deduction.
  std::vector<GoedelNumber> stream;
  stream.emplace_back(d.lines.size());
  for (const auto& line : d.lines) {
    std::vector<GoedelNumber> codes = formula_codes(line.formula, codec);
    stream.emplace_back(codes.size());
    stream.insert(stream.end(), codes.begin(), codes.end());
    if (const auto* ax = std::get_if<just::Axiom>(&line.just)) {
      stream.emplace_back(kTagAxiom);
      stream.emplace_back(schema_number(ax->schema));
    } else if (const auto* th = std::get_if<just::InTheory>(&line.just)) {
      stream.emplace_back(kTagTheory);
      stream.emplace_back(static_cast<unsigned long>(th->index));
    } else if (std::get_if<just::Hyp>(&line.just)) {
      stream.emplace_back(kTagHyp);
    } else if (const auto* mp = std::get_if<just::Mp>(&line.just)) {
      stream.emplace_back(kTagMp);
      stream.emplace_back(static_cast<unsigned long>(mp->minor));
      stream.emplace_back(static_cast<unsigned long>(mp->major));
    } else {
      const auto& gen = std::get<just::Gen>(line.just);
      stream.emplace_back(kTagGen);
      stream.emplace_back(static_cast<unsigned long>(gen.premise));
      stream.push_back(2 * Codec::variable_rank(gen.var) + 8);
    }
  }
  return pack_values(stream, codec.kind());
}

std::optional<Deduction> decode_deduction(const GoedelNumber& n, const Codec& codec,
                                          const Theory& theory,
                                          const std::optional<Formula>& hypothesis) {
  auto stream = unpack_values(n, codec.kind());
  if (!stream) return std::nullopt;

  std::size_t pos = 0;
  auto as_index = [](const GoedelNumber& v) -> std::optional<std::size_t> {
    if (!mpz_fits_ulong_p(v.get_mpz_t())) return std::nullopt;
    return static_cast<std::size_t>(v.get_ui());
  };
  auto take = [&]() -> std::optional<std::size_t> {
    if (pos >= stream->size()) return std::nullopt;
    return as_index((*stream)[pos++]);
  };

  auto line_count = take();
  if (!line_count || *line_count == 0) return std::nullopt;

  Deduction d;
  d.theory = theory;
  d.hypothesis = hypothesis;

  for (std::size_t i = 0; i < *line_count; ++i) {
    auto token_count = take();
    if (!token_count || *token_count == 0) return std::nullopt;
    std::vector<Token> tokens;
    tokens.reserve(*token_count + 1);
    for (std::size_t k = 0; k < *token_count; ++k) {
      if (pos >= stream->size()) return std::nullopt;
      auto token = codec.token_for_code((*stream)[pos++]);
      if (!token) return std::nullopt;
      tokens.push_back(std::move(*token));
    }
    tokens.push_back(Token{Token::Kind::End, "", 0, 0});
    std::optional<Formula> formula;
    try {
      formula = parse_formula(tokens, codec.signature());
    } catch (const ParseError&) {
      return std::nullopt;
    }

    auto tag = take();
    if (!tag) return std::nullopt;
    Justification just;
    switch (*tag) {
      case kTagAxiom: {
        auto num = take();
        if (!num) return std::nullopt;
        auto schema = schema_for_number(*num);
        if (!schema) return std::nullopt;
        just = just::Axiom{*schema};
        break;
      }
      case kTagTheory: {
        auto index = take();
        if (!index) return std::nullopt;
        just = just::InTheory{*index};
        break;
      }
      case kTagHyp:
        just = just::Hyp{};
        break;
      case kTagMp: {
        auto minor = take();
        auto major = take();
        if (!minor || !major) return std::nullopt;
        just = just::Mp{*minor, *major};
        break;
      }
      case kTagGen: {
        auto premise = take();
        if (!premise) return std::nullopt;
        if (pos >= stream->size()) return std::nullopt;
        const GoedelNumber& code = (*stream)[pos++];
        if (code < 8 || mpz_odd_p(code.get_mpz_t())) return std::nullopt;
        auto name = Codec::variable_name_for_rank((code - 8) / 2);
        if (!name || codec.signature().declares(*name)) return std::nullopt;
        just = just::Gen{*premise, *name};
        break;
      }
      default:
        return std::nullopt;
    }
    d.lines.push_back({std::move(*formula), std::move(just)});
  }
  if (pos != stream->size()) return std::nullopt;
  return d;
}

bool proof_check_predicate(const ProofPredicateInstance& inst) {
  try {
    if (!inst.codec || inst.x < 1) return false;
    auto d = decode_deduction(inst.x, *inst.codec, inst.theory, inst.hypothesis);
    if (!d) return false;
    VerificationReport report = verify_deduction(*d);
    if (!report.ok) return false;
    return encode_formula(d->conclusion(), *inst.codec) == inst.y;
  } catch (...) {
    return false;
  }
}

Deduction transport_1_1(const Deduction& witness) {
  return eliminate_hypothesis(witness).deduction;
}

Deduction transport_2_2(const Deduction& u_witness, const Formula& a) {
  return eliminate_hypothesis(weaken(u_witness, a)).deduction;
}

}  // namespace fol
