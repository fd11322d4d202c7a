// Length-bounded proof search. Sequences are enumerated in canonical order:
// shorter first, then lexicographically by per-line key, where a line's key
// is its compact-packed (formula number, justification tag tuple). Pruning
// only discards lines that cannot occur in any minimal-length proof (a
// minimal proof has pairwise-distinct line formulas, mentions the target
// only on its last line, and every non-final line is cited later), so the
// first sequence found is the canonical-first witness.

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fol/goedel.hpp"

namespace fol {

namespace {

void collect_subformulas(const Formula& f, std::vector<Formula>& out,
                         std::unordered_set<Formula, FormulaHash>& seen) {
  if (!seen.insert(f).second) return;
  out.push_back(f);
  switch (f.kind()) {
    case Formula::Kind::Atom:
      break;
    case Formula::Kind::Not:
    case Formula::Kind::ForAll:
      collect_subformulas(f.body(), out, seen);
      break;
    case Formula::Kind::Implies:
      collect_subformulas(f.antecedent(), out, seen);
      collect_subformulas(f.consequent(), out, seen);
      break;
  }
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args())
        for (const auto& v : term_vars(t)) out.insert(v);
      break;
    case Formula::Kind::Not:
      collect_vars(f.body(), out);
      break;
    case Formula::Kind::Implies:
      collect_vars(f.antecedent(), out);
      collect_vars(f.consequent(), out);
      break;
    case Formula::Kind::ForAll:
      out.insert(f.bound_var());
      collect_vars(f.body(), out);
      break;
  }
}

void collect_subterms(const Term& t, std::vector<Term>& out,
                      std::unordered_set<Term, TermHash>& seen) {
  if (!seen.insert(t).second) return;
  out.push_back(t);
  for (const auto& a : t.args()) collect_subterms(a, out, seen);
}

struct Candidate {
  Formula formula;
  Justification just;
  GoedelNumber key;
};

// Key codec is always compact: prime-power keys for dynamically generated
// lines would be too large to materialize per node.
GoedelNumber candidate_key(const Formula& f, const Justification& just,
                           const Codec& key_codec,
                           std::unordered_map<Formula, GoedelNumber, FormulaHash>& cache) {
  auto it = cache.find(f);
  if (it == cache.end()) it = cache.emplace(f, encode_formula(f, key_codec)).first;
  std::vector<GoedelNumber> fields;
  fields.push_back(it->second);
  if (const auto* ax = std::get_if<just::Axiom>(&just)) {
    fields.emplace_back(1);
    fields.emplace_back(static_cast<unsigned long>(ax->schema) + 1);
  } else if (const auto* th = std::get_if<just::InTheory>(&just)) {
    fields.emplace_back(2);
    fields.emplace_back(static_cast<unsigned long>(th->index));
  } else if (std::get_if<just::Hyp>(&just)) {
    fields.emplace_back(3);
  } else if (const auto* mp = std::get_if<just::Mp>(&just)) {
    fields.emplace_back(4);
    fields.emplace_back(static_cast<unsigned long>(mp->minor));
    fields.emplace_back(static_cast<unsigned long>(mp->major));
  } else {
    const auto& gen = std::get<just::Gen>(just);
    fields.emplace_back(5);
    fields.emplace_back(static_cast<unsigned long>(gen.premise));
    fields.push_back(2 * Codec::variable_rank(gen.var) + 8);
  }
  return packing::pack_compact(fields);
}

using FormulaSet = std::unordered_set<Formula, FormulaHash>;

class Searcher {
public:
  Searcher(const Formula& target, const Theory& theory,
           const std::optional<Formula>& hypothesis, const SearchBudget& budget,
           const Codec& key_codec)
      : target_(target),
        theory_(theory),
        hypothesis_(hypothesis),
        budget_(budget),
        key_codec_(key_codec) {}

  SearchResult run() {
    SearchResult result;
    pool_ = build_search_pool(target_, theory_, hypothesis_, budget_);
    result.stats.pool_size = pool_.size();
    for (const auto& f : pool_) collect_vars(f, pool_vars_);
    collect_vars(target_, pool_vars_);
    for (const auto& f : theory_.formulas) collect_vars(f, pool_vars_);
    if (hypothesis_) collect_vars(*hypothesis_, pool_vars_);
    collect_pool_terms();

    build_static_candidates();
    saturate();
    build_relevance();
    result.stats.static_candidates = statics_.size();

    if (node_count(target_) > budget_.max_formula_size || !derivable_.count(target_)) {
      result.bounds_exhausted = true;
      return result;
    }

    // Keep only lines that can occur in a minimal proof of the target.
    std::erase_if(statics_, [&](const Candidate& c) { return !relevant_.count(c.formula); });
    std::sort(statics_.begin(), statics_.end(),
              [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
    result.stats.static_candidates = statics_.size();

    for (std::size_t len = 1; len <= budget_.max_lines; ++len) {
      lines_.clear();
      present_.clear();
      if (dfs(len, result.stats)) {
        Deduction d;
        d.theory = theory_;
        d.hypothesis = hypothesis_;
        d.lines = lines_;
        VerificationReport report = verify_deduction(d);
        if (!report.ok)
          throw std::logic_error("search produced a non-verifying deduction");
        result.deduction = std::move(d);
        result.proof_length = len;
        return result;
      }
    }
    result.bounds_exhausted = true;
    return result;
  }

private:
  const Formula& target_;
  const Theory& theory_;
  const std::optional<Formula>& hypothesis_;
  const SearchBudget& budget_;
  const Codec& key_codec_;

  std::vector<Formula> pool_;
  std::set<std::string> pool_vars_;
  std::vector<Term> pool_terms_;
  std::vector<Candidate> statics_;
  std::unordered_multimap<std::size_t, std::size_t> static_index_;  // hash -> index
  FormulaSet derivable_;
  FormulaSet relevant_;
  // implications in `derivable_`, indexed by consequent / antecedent
  std::unordered_map<Formula, std::vector<Formula>, FormulaHash> by_consequent_;
  std::unordered_map<Formula, GoedelNumber, FormulaHash> key_cache_;

  std::vector<DeductionLine> lines_;
  FormulaSet present_;

  void collect_pool_terms() {
    std::unordered_set<Term, TermHash> seen;
    auto walk_formula = [&](const Formula& f, auto&& self) -> void {
      switch (f.kind()) {
        case Formula::Kind::Atom:
          for (const auto& t : f.args()) collect_subterms(t, pool_terms_, seen);
          break;
        case Formula::Kind::Not:
        case Formula::Kind::ForAll:
          self(f.body(), self);
          break;
        case Formula::Kind::Implies:
          self(f.antecedent(), self);
          self(f.consequent(), self);
          break;
      }
    };
    for (const auto& f : pool_) walk_formula(f, walk_formula);
    for (const auto& v : pool_vars_) {
      Term t = Term::variable(v);
      if (seen.insert(t).second) pool_terms_.push_back(t);
    }
  }

  void add_static(Formula f, Justification just) {
    if (node_count(f) > budget_.max_formula_size) return;
    auto [lo, hi] = static_index_.equal_range(f.hash());
    for (auto it = lo; it != hi; ++it) {
      const Candidate& c = statics_[it->second];
      if (c.formula == f && c.just == just) return;
    }
    static_index_.emplace(f.hash(), statics_.size());
    GoedelNumber key = candidate_key(f, just, key_codec_, key_cache_);
    statics_.push_back({std::move(f), std::move(just), std::move(key)});
  }

  void build_static_candidates() {
    for (std::size_t k = 0; k < theory_.formulas.size(); ++k)
      add_static(theory_.formulas[k], just::InTheory{k});
    if (hypothesis_) add_static(*hypothesis_, just::Hyp{});

    const std::size_t cap = budget_.max_formula_size;
    std::vector<std::size_t> size(pool_.size());
    for (std::size_t i = 0; i < pool_.size(); ++i) size[i] = node_count(pool_[i]);

    // Instance sizes are arithmetic in the component sizes; precheck before
    // allocating anything.
    for (std::size_t bi = 0; bi < pool_.size(); ++bi) {
      const Formula& b = pool_[bi];
      for (std::size_t ci = 0; ci < pool_.size(); ++ci) {
        const Formula& c = pool_[ci];
        // A1: B -> (C -> B)
        if (2 + 2 * size[bi] + size[ci] <= cap)
          add_static(Formula::implies(b, Formula::implies(c, b)),
                     just::Axiom{SchemaId::A1});
        // A3: (~C -> ~B) -> ((~C -> B) -> C)
        if (7 + 2 * size[bi] + 3 * size[ci] <= cap)
          add_static(
              Formula::implies(
                  Formula::implies(Formula::negation(c), Formula::negation(b)),
                  Formula::implies(Formula::implies(Formula::negation(c), b), c)),
              just::Axiom{SchemaId::A3});
        // A2: (B -> (C -> D)) -> ((B -> C) -> (B -> D))
        for (std::size_t di = 0; di < pool_.size(); ++di) {
          if (6 + 3 * size[bi] + 2 * size[ci] + 2 * size[di] > cap) continue;
          add_static(Formula::implies(
                         Formula::implies(b, Formula::implies(c, pool_[di])),
                         Formula::implies(Formula::implies(b, c),
                                          Formula::implies(b, pool_[di]))),
                     just::Axiom{SchemaId::A2});
        }
      }
    }
    // A4: (forall x. B) -> B[x:=t] over quantified pool formulas and pool terms.
    for (const auto& q : pool_) {
      if (q.kind() != Formula::Kind::ForAll) continue;
      for (const auto& t : pool_terms_) {
        if (!is_free_for(t, q.bound_var(), q.body())) continue;
        add_static(Formula::implies(q, substitute(q.body(), q.bound_var(), t)),
                   just::Axiom{SchemaId::A4});
      }
    }
    // A5: (forall x. (B -> C)) -> (B -> forall x. C), x not free in B.
    for (const auto& v : pool_vars_) {
      for (std::size_t bi = 0; bi < pool_.size(); ++bi) {
        const Formula& b = pool_[bi];
        if (free_vars(b).count(v)) continue;
        for (std::size_t ci = 0; ci < pool_.size(); ++ci) {
          if (5 + 2 * size[bi] + 2 * size[ci] > cap) continue;
          add_static(Formula::implies(
                         Formula::forall(v, Formula::implies(b, pool_[ci])),
                         Formula::implies(b, Formula::forall(v, pool_[ci]))),
                     just::Axiom{SchemaId::A5});
        }
      }
    }
  }

  // Over-approximation of every formula derivable within the budget: static
  // candidate formulas closed under MP and Gen (size-capped).
  void saturate() {
    std::vector<Formula> work;
    std::unordered_map<Formula, std::vector<Formula>, FormulaHash> by_antecedent;
    auto add = [&](const Formula& f) {
      if (node_count(f) > budget_.max_formula_size) return;
      if (!derivable_.insert(f).second) return;
      work.push_back(f);
    };
    for (const auto& c : statics_) add(c.formula);
    while (!work.empty()) {
      Formula f = work.back();
      work.pop_back();
      if (f.kind() == Formula::Kind::Implies) {
        by_antecedent[f.antecedent()].push_back(f);
        by_consequent_[f.consequent()].push_back(f);
        if (derivable_.count(f.antecedent())) add(f.consequent());
      }
      if (auto it = by_antecedent.find(f); it != by_antecedent.end())
        for (const auto& imp : it->second) add(imp.consequent());
      for (const auto& v : pool_vars_) add(Formula::forall(v, f));
    }
  }

  // Backward closure from the target: a formula is relevant iff some
  // minimal proof of the target could contain it as a line.
  void build_relevance() {
    if (!derivable_.count(target_)) return;
    std::vector<Formula> work{target_};
    relevant_.insert(target_);
    auto add = [&](const Formula& f) {
      if (relevant_.insert(f).second) work.push_back(f);
    };
    while (!work.empty()) {
      Formula g = work.back();
      work.pop_back();
      if (auto it = by_consequent_.find(g); it != by_consequent_.end()) {
        for (const auto& imp : it->second) {
          if (!derivable_.count(imp.antecedent())) continue;
          add(imp);
          add(imp.antecedent());
        }
      }
      if (g.kind() == Formula::Kind::ForAll && derivable_.count(g.body()))
        add(g.body());
    }
  }

  // A line placed two slots before the end must be citable by the final
  // (target) line.
  bool enables_target(const Formula& f) const {
    if (present_.count(Formula::implies(f, target_))) return true;
    if (f.kind() == Formula::Kind::Implies && f.consequent() == target_ &&
        present_.count(f.antecedent()))
      return true;
    if (target_.kind() == Formula::Kind::ForAll && target_.body() == f) return true;
    return false;
  }

  bool admissible(const Formula& f, std::size_t remaining) const {
    if ((f == target_) != (remaining == 1)) return false;
    if (present_.count(f)) return false;
    if (!relevant_.count(f)) return false;
    if (remaining == 2 && !enables_target(f)) return false;
    return true;
  }

  std::vector<Candidate> dynamic_candidates(std::size_t remaining) {
    std::vector<Candidate> out;
    for (std::size_t j = 0; j < lines_.size(); ++j) {
      const Formula& major = lines_[j].formula;
      if (major.kind() == Formula::Kind::Implies) {
        for (std::size_t i = 0; i < lines_.size(); ++i) {
          if (i == j || lines_[i].formula != major.antecedent()) continue;
          const Formula& c = major.consequent();
          if (!admissible(c, remaining)) continue;
          Justification just = just::Mp{i, j};
          GoedelNumber key = candidate_key(c, just, key_codec_, key_cache_);
          out.push_back({c, std::move(just), std::move(key)});
        }
      }
      for (const auto& v : pool_vars_) {
        Formula g = Formula::forall(v, lines_[j].formula);
        if (node_count(g) > budget_.max_formula_size) continue;
        if (!admissible(g, remaining)) continue;
        Justification just = just::Gen{j, v};
        GoedelNumber key = candidate_key(g, just, key_codec_, key_cache_);
        out.push_back({std::move(g), std::move(just), std::move(key)});
      }
    }
    std::sort(out.begin(), out.end(),
              [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
    return out;
  }

  bool dfs(std::size_t len, SearchStats& stats) {
    ++stats.nodes_visited;
    std::size_t remaining = len - lines_.size();
    std::vector<Candidate> dynamic = dynamic_candidates(remaining);

    std::size_t si = 0, di = 0;
    while (si < statics_.size() || di < dynamic.size()) {
      const Candidate* next = nullptr;
      if (si < statics_.size() &&
          (di >= dynamic.size() || statics_[si].key < dynamic[di].key)) {
        next = &statics_[si++];
        if (!admissible(next->formula, remaining)) continue;
      } else {
        next = &dynamic[di++];  // already filtered
      }
      lines_.push_back({next->formula, next->just});
      present_.insert(next->formula);
      if (remaining == 1) return true;
      if (dfs(len, stats)) return true;
      present_.erase(next->formula);
      lines_.pop_back();
    }
    return false;
  }
};

}  // namespace

std::vector<Formula> build_search_pool(const Formula& target, const Theory& theory,
                                       const std::optional<Formula>& hypothesis,
                                       const SearchBudget& budget) {
  std::vector<Formula> base;
  std::unordered_set<Formula, FormulaHash> seen;
  collect_subformulas(target, base, seen);
  for (const auto& f : theory.formulas) collect_subformulas(f, base, seen);
  if (hypothesis) collect_subformulas(*hypothesis, base, seen);

  std::vector<Formula> pool = base;
  if (budget.pool_policy == PoolPolicy::ExplicitPool) {
    pool = budget.pool;
  } else if (budget.pool_policy == PoolPolicy::ClosedSubformulas) {
    for (const auto& a : base)
      for (const auto& b : base) {
        Formula f = Formula::implies(a, b);
        if (seen.insert(f).second) pool.push_back(f);
      }
    std::set<std::string> vars;
    for (const auto& f : base) collect_vars(f, vars);
    for (const auto& f : base)
      for (const auto& v : vars) {
        Formula g = Formula::forall(v, f);
        if (seen.insert(g).second) pool.push_back(g);
      }
  }
  std::sort(pool.begin(), pool.end(), [](const Formula& a, const Formula& b) {
    return print_formula(a) < print_formula(b);
  });
  return pool;
}

SearchResult bounded_proof_search(const Formula& target, const Theory& theory,
                                  const std::optional<Formula>& hypothesis,
                                  const SearchBudget& budget, const Codec& codec) {
  if (budget.max_lines == 0 || budget.max_formula_size == 0)
    throw std::invalid_argument("search budget bounds must be positive");
  Codec key_codec(CodecKind::Compact, codec.signature());
  return Searcher(target, theory, hypothesis, budget, key_codec).run();
}

SearchResult raw_number_scan(const Formula& target, const Theory& theory,
                             const std::optional<Formula>& hypothesis,
                             unsigned long long x_cap, const Codec& codec) {
  if (x_cap == 0) throw std::invalid_argument("scan cap must be positive");
  SearchResult result;
  GoedelNumber y = encode_formula(target, codec);
  ProofPredicateInstance inst{0, y, theory, hypothesis, &codec};
  for (unsigned long long x = 1; x <= x_cap; ++x) {
    ++result.stats.nodes_visited;
    inst.x = static_cast<unsigned long>(x);
    if (proof_check_predicate(inst)) {
      result.deduction = decode_deduction(inst.x, *inst.codec, theory, hypothesis);
      result.proof_length = result.deduction->lines.size();
      return result;
    }
  }
  result.bounds_exhausted = true;
  return result;
}

}  // namespace fol
