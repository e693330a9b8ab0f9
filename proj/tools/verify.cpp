#include <algorithm>
#include <functional>
#include <set>

#include "cli.hpp"
#include "ekk/error.hpp"
#include "ekk/parallel.hpp"

namespace ekk::cli {

namespace {

using json = nlohmann::ordered_json;

struct Local {
  std::size_t passed = 0;
  std::size_t failed = 0;
  json first_failure;

  void record(bool ok, const std::function<json()>& instance) {
    if (ok) {
      ++passed;
      return;
    }
    if (failed++ == 0) first_failure = instance();
  }
};

/// Runs body(k, local) for k in [0, count) and merges the tallies in index
/// order, so the reported failure is the first one in canonical order.
template <typename Body>
PropertyTally run_property(std::string name, std::size_t count, unsigned workers, Body&& body) {
  std::vector<Local> locals(count);
  parallel_for(count, workers, [&](std::size_t k) { body(k, locals[k]); });
  PropertyTally tally{std::move(name)};
  for (auto& l : locals) {
    tally.passed += l.passed;
    if (l.failed && !tally.failed) tally.first_failure = std::move(l.first_failure);
    tally.failed += l.failed;
  }
  return tally;
}

PropertyTally not_applicable(std::string name) {
  PropertyTally t{std::move(name)};
  t.applicable = false;
  return t;
}

json word_json(const WeylElt& w) { return w.reduced_word(); }

/// All products of subwords of w's reduced word.
WeylSet subword_products(const WeylElt& w) {
  const RootSystem& rs = w.system();
  const Word word = w.reduced_word();
  WeylSet out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << word.size()); ++mask) {
    WeylElt x = WeylElt::identity(rs);
    for (std::size_t k = 0; k < word.size(); ++k)
      if (mask >> k & 1) x = x.times_simple(word[k]);
    out.insert(x);
  }
  return out;
}

std::vector<WeylElt> sorted(const WeylSet& set) {
  std::vector<WeylElt> v(set.begin(), set.end());
  std::sort(v.begin(), v.end(), canonical_less);
  return v;
}

}  // namespace

std::vector<PropertyTally> verify_suite(const RootSystem& rs, const VerifyOptions& options) {
  if (options.max_len < 0) throw InvalidArgument("max-len must be non-negative");
  const auto elements = enumerate_elements(rs, options.max_len);
  const unsigned workers = options.workers;
  NilHecke engine(rs);
  std::vector<PropertyTally> tallies;

  std::vector<WeylSet> below(elements.size());
  parallel_for(elements.size(), workers, [&](std::size_t k) { below[k] = subword_products(elements[k]); });

  tallies.push_back(run_property("bruhat_vs_subwords", elements.size(), workers, [&](std::size_t k, Local& local) {
    const WeylElt& w = elements[k];
    for (const auto& v : elements)
      local.record(engine.bruhat().leq(v, w) == (below[k].count(v) > 0),
                   [&] { return json{{"v", word_json(v)}, {"w", word_json(w)}}; });
  }));

  tallies.push_back(run_property("support_law", elements.size(), workers, [&](std::size_t k, Local& local) {
    const WeylElt& w = elements[k];
    const auto x = engine.x_elt(w);
    bool ok = x->terms().size() == below[k].size();
    for (const auto& [v, f] : x->terms()) ok = ok && below[k].count(v) > 0;
    local.record(ok, [&] { return json{{"w", word_json(w)}}; });
  }));

  {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < elements.size() && pairs.size() < options.pair_limit; ++a)
      for (std::size_t b = 0; b < elements.size() && pairs.size() < options.pair_limit; ++b) pairs.emplace_back(a, b);
    tallies.push_back(run_property("product_law", pairs.size(), workers, [&](std::size_t k, Local& local) {
      const WeylElt& v = elements[pairs[k].first];
      const WeylElt& w = elements[pairs[k].second];
      const NHElt product = *engine.x_elt(v) * *engine.x_elt(w);
      const WeylElt vw = v * w;
      const bool ok = vw.length() == v.length() + w.length() ? product == *engine.x_elt(vw) : product.is_zero();
      local.record(ok, [&] { return json{{"v", word_json(v)}, {"w", word_json(w)}}; });
    }));
  }

  tallies.push_back(run_property("right_descent_recursion", elements.size(), workers, [&](std::size_t k, Local& local) {
    const WeylElt& w = elements[k];
    for (int i = 1; i <= rs.rank(); ++i) {
      if (!w.has_right_descent(i)) continue;
      for (const auto& v : sorted(below[k]))
        local.record(engine.recursion_check_b(w, v, i),
                     [&] { return json{{"w", word_json(w)}, {"v", word_json(v)}, {"i", i}}; });
    }
  }));

  tallies.push_back(run_property("left_descent_recursion", elements.size(), workers, [&](std::size_t k, Local& local) {
    const WeylElt& w = elements[k];
    for (int i = 1; i <= rs.rank(); ++i) {
      if (!w.has_left_descent(i)) continue;
      for (const auto& v : sorted(below[k]))
        local.record(engine.recursion_check_c(w, v, i),
                     [&] { return json{{"w", word_json(w)}, {"v", word_json(v)}, {"i", i}}; });
    }
  }));

  tallies.push_back(run_property("dyer_factorization", elements.size(), workers, [&](std::size_t k, Local& local) {
    const WeylElt& w = elements[k];
    for (const auto& v : sorted(below[k]))
      local.record(engine.dyer_check(w, v, &below[k]), [&] { return json{{"w", word_json(w)}, {"v", word_json(v)}}; });
  }));

  {
    std::vector<std::size_t> small;
    for (std::size_t k = 0; k < elements.size(); ++k)
      if (elements[k].length() <= options.bruteforce_cap) small.push_back(k);
    tallies.push_back(run_property("bruteforce_oracle", small.size(), workers, [&](std::size_t n, Local& local) {
      const WeylElt& w = elements[small[n]];
      const auto oracle = bruteforce_expansion(rs, w.reduced_word(), options.bruteforce_cap);
      const auto x = engine.x_elt(w);
      for (const auto& v : sorted(below[small[n]])) {
        auto it = oracle.find(v);
        const RatFn expected = it == oracle.end() ? RatFn::zero(rs) : it->second;
        local.record(x->coefficient(v) == expected, [&] { return json{{"w", word_json(w)}, {"v", word_json(v)}}; });
      }
    }));
  }

  tallies.push_back(run_property("polynomiality", elements.size(), workers, [&](std::size_t k, Local& local) {
    bool ok = true;
    try {
      engine.kk_poly(elements[k], false);
    } catch (const InvariantViolation&) {
      ok = false;
    }
    local.record(ok, [&] { return json{{"w", word_json(elements[k])}}; });
  }));

  if (options.max_len >= 1) {
    tallies.push_back(run_property("simple_reflection_kk", static_cast<std::size_t>(rs.rank()), workers,
                                   [&](std::size_t k, Local& local) {
                                     const int i = static_cast<int>(k) + 1;
                                     const auto kk = engine.kk_poly(WeylElt::simple_reflection(rs, i), false);
                                     std::vector<RootId> expected;
                                     for (RootId r = 0; r < rs.num_positive(); ++r)
                                       if (r != rs.simple(i)) expected.push_back(r);
                                     const bool ok =
                                         kk.cofactor == MPoly::constant(rs.rank(), 1) && kk.linear_factors == expected;
                                     local.record(ok, [&] { return json{{"i", i}}; });
                                   }));
  }

  {
    const SimpleOrder order = natural_order(rs.rank());
    std::vector<WeylElt> involutions;
    std::vector<std::set<RootId>> supports;
    for (const auto& w : elements)
      if (w.is_involution()) {
        involutions.push_back(w);
        const auto s = support(w, order);
        supports.emplace_back(s.begin(), s.end());
      }
    tallies.push_back(run_property("support_inclusion", involutions.size(), workers, [&](std::size_t a, Local& local) {
      for (std::size_t b = 0; b < involutions.size(); ++b) {
        if (!std::includes(supports[b].begin(), supports[b].end(), supports[a].begin(), supports[a].end())) continue;
        local.record(engine.bruhat().leq(involutions[a], involutions[b]),
                     [&] { return json{{"w1", word_json(involutions[a])}, {"w2", word_json(involutions[b])}}; });
      }
    }));
  }

  if (rs.summands().size() == 2) {
    const auto left = enumerate_involutions(*rs.summands()[0], options.max_len);
    const auto right = enumerate_involutions(*rs.summands()[1], options.max_len);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < left.size() && pairs.size() < options.pair_limit; ++a)
      for (std::size_t b = 0; b < right.size() && pairs.size() < options.pair_limit; ++b) pairs.emplace_back(a, b);
    tallies.push_back(run_property("product_formula", pairs.size(), workers, [&](std::size_t k, Local& local) {
      const WeylElt& w1 = left[pairs[k].first];
      const WeylElt& w2 = right[pairs[k].second];
      local.record(product_formula_check(rs, w1, w2), [&] { return json{{"w1", word_json(w1)}, {"w2", word_json(w2)}}; });
    }));
  } else {
    tallies.push_back(not_applicable("product_formula"));
  }
  return tallies;
}

}  // namespace ekk::cli
