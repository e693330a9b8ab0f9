#include "ekk/analysis.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "ekk/error.hpp"
#include "ekk/parallel.hpp"

namespace ekk {

FactorRow prop35_factor(const RootSystem& rs, const SimpleOrder& order, RootId beta) {
  validate_order(rs, order);
  const auto column = first_column(rs, order);
  if (std::find(column.begin(), column.end(), beta) == column.end())
    throw InvalidArgument("root is not in the first column");

  const int c = order.distinguished;
  std::vector<int> subset;
  for (int i = 1; i <= rs.rank(); ++i)
    if (i != c) subset.push_back(i);

  const WeylElt s_beta = WeylElt::reflection(rs, beta);
  auto [u, v] = parabolic_factorize(s_beta, subset);

  if (!(u * v == s_beta)) throw InvariantViolation("parabolic factors do not recompose s_beta");
  if (u.length() + v.length() != s_beta.length()) throw InvariantViolation("parabolic factor lengths are not additive");
  for (int i : subset)
    if (u.has_right_descent(i)) throw InvariantViolation("u is not a minimal coset representative");

  FactorRow row{beta, rs.root(beta), u, v, u.reduced_word(), v.reduced_word(), true, {}};
  if (!(u == v.inverse().times_simple(c))) {
    row.premise_ok = false;
    row.premise_note = "u != v^-1 s_" + std::to_string(c);
  }
  return row;
}

std::vector<FactorRow> gen_table(const RootSystem& rs, const SimpleOrder& order, unsigned workers) {
  const auto column = first_column(rs, order);
  std::vector<std::optional<FactorRow>> slots(column.size());
  parallel_for(column.size(), workers, [&](std::size_t k) { slots[k] = prop35_factor(rs, order, column[k]); });
  std::vector<FactorRow> rows;
  rows.reserve(slots.size());
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

// ---------------------------------------------------------------- good pairs

bool GoodPairCertificate::consistent() const {
  return witness_divides_own != true && witness_divides_other != false && c_differs != false &&
         direct_inequality != false;
}

std::vector<RootId> support_in_first_column(const WeylElt& w, const SimpleOrder& order) {
  const auto column = first_column(w.system(), order);
  std::vector<RootId> result;
  for (RootId r : support(w, order))
    if (std::find(column.begin(), column.end(), r) != column.end()) result.push_back(r);
  return result;
}

namespace {

std::optional<RootId> column_maximum(const RootSystem& rs, const SimpleOrder& order) {
  const auto column = first_column(rs, order);
  if (column.empty()) return std::nullopt;
  RootId best = column.front();
  for (RootId r : column)
    if (lex_compare(order, rs.root(r), rs.root(best)) == Ordering::Greater) best = r;
  return best;
}

std::string word_text(const WeylElt& w) {
  const Word word = w.reduced_word();
  return word.empty() ? "e" : word_to_string(word);
}

}  // namespace

PairVerdict is_good_pair(const WeylElt& w1, const WeylElt& w2, const SimpleOrder& order, BruhatOrder* bruhat) {
  const RootSystem& rs = w1.system();
  if (&w2.system() != &rs) throw InvalidArgument("pair elements from different root systems");
  if (!w1.is_involution() || !w2.is_involution()) return PairRejection{"not an involution"};

  const auto c1 = support_in_first_column(w1, order);
  const auto c2 = support_in_first_column(w2, order);
  if (c1.size() != 1 || c2.size() != 1) return PairRejection{"support meets C1 in ≠1 root"};
  const RootId beta1 = c1.front();
  const RootId beta2 = c2.front();
  if (beta1 == beta2) return PairRejection{"beta1 = beta2"};

  if (rs.kind() == SystemKind::E8) {
    const auto top = column_maximum(rs, order);
    if (beta1 == top || beta2 == top) return PairRejection{"beta is the maximum of C1"};
  }

  auto leq = [&](const WeylElt& a, const WeylElt& b) { return bruhat ? bruhat->leq(a, b) : bruhat_leq(a, b); };
  GoodPairCertificate cert{w1, w2, beta1, beta2};
  cert.beta1_not_below_w2 = !leq(WeylElt::reflection(rs, beta1), w2);
  cert.beta2_not_below_w1 = !leq(WeylElt::reflection(rs, beta2), w1);
  if (!cert.beta1_not_below_w2 && !cert.beta2_not_below_w1)
    return PairRejection{"s_beta1 <= w2 and s_beta2 <= w1"};

  if (cert.beta1_not_below_w2) {
    cert.direction = PairDirection::Beta1NotBelowW2;
    cert.witness = beta1;
    cert.divides = 2;
  } else {
    cert.direction = PairDirection::Beta2NotBelowW1;
    cert.witness = beta2;
    cert.divides = 1;
  }
  return cert;
}

namespace {

/// Kostant-Kumar results shared between the certificates of one scan.
class KKCache {
 public:
  std::shared_ptr<const KKResult> get(NilHecke& engine, const WeylElt& w, bool expand) {
    {
      std::shared_lock lock(mutex_);
      auto it = cache_.find(w);
      if (it != cache_.end() && (!expand || it->second->d_w)) return it->second;
    }
    auto kk = std::make_shared<const KKResult>(engine.kk_poly(w, expand));
    std::unique_lock lock(mutex_);
    cache_.insert_or_assign(w, kk);
    return kk;
  }

 private:
  std::shared_mutex mutex_;
  WeylMap<std::shared_ptr<const KKResult>> cache_;
};

GoodPairCertificate certify(GoodPairCertificate cert, NilHecke& engine, const ComputeCaps& caps, KKCache& cache) {
  cert.computed = false;
  cert.witness_divides_own.reset();
  cert.witness_divides_other.reset();
  cert.c_differs.reset();
  cert.direct_inequality.reset();
  cert.note.clear();

  if (cert.w1.length() > caps.max_len || cert.w2.length() > caps.max_len) {
    cert.note = "symbolic only: length cap exceeded";
    return cert;
  }

  std::shared_ptr<const KKResult> k1, k2;
  bool expanded = caps.expand;
  try {
    k1 = cache.get(engine, cert.w1, expanded);
    k2 = cache.get(engine, cert.w2, expanded);
  } catch (const BudgetExceeded&) {
    if (!expanded) throw;
    expanded = false;
    cert.note = "expansion over budget: verdicts from factored form";
    k1 = cache.get(engine, cert.w1, false);
    k2 = cache.get(engine, cert.w2, false);
  }

  const KKResult& own = cert.divides == 2 ? *k1 : *k2;
  const KKResult& other = cert.divides == 2 ? *k2 : *k1;
  cert.computed = true;
  cert.c_differs = !(k1->c_w == k2->c_w);
  if (expanded) {
    const MPoly form = root_linear_form(engine.system(), cert.witness);
    cert.witness_divides_own = divisible_by_linear(*own.d_w, form);
    cert.witness_divides_other = divisible_by_linear(*other.d_w, form);
    cert.direct_inequality = !(*k1->d_w == *k2->d_w);
  } else {
    cert.witness_divides_own = own.divisible_by(cert.witness);
    cert.witness_divides_other = other.divisible_by(cert.witness);
  }
  return cert;
}

}  // namespace

GoodPairCertificate certify_distinct(GoodPairCertificate cert, NilHecke& engine, const ComputeCaps& caps) {
  KKCache cache;
  return certify(std::move(cert), engine, caps, cache);
}

std::vector<GoodPairCertificate> scan_good_pairs(const RootSystem& rs, const SimpleOrder& order, int max_len,
                                                 NilHecke& engine, const ComputeCaps& caps, unsigned workers) {
  validate_order(rs, order);
  std::vector<WeylElt> candidates;
  for (auto& w : enumerate_involutions(rs, max_len))
    if (support_in_first_column(w, order).size() == 1) candidates.push_back(std::move(w));

  std::vector<GoodPairCertificate> accepted;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      auto verdict = is_good_pair(candidates[i], candidates[j], order, &engine.bruhat());
      if (auto* cert = std::get_if<GoodPairCertificate>(&verdict)) accepted.push_back(std::move(*cert));
    }

  KKCache cache;
  parallel_for(accepted.size(), workers,
               [&](std::size_t k) { accepted[k] = certify(std::move(accepted[k]), engine, caps, cache); });
  return accepted;
}

std::vector<std::string> recheck(const GoodPairCertificate& cert, const SimpleOrder& order, NilHecke& engine,
                                 const ComputeCaps& caps) {
  std::vector<std::string> problems;
  const RootSystem& rs = engine.system();
  if (&cert.w1.system() != &rs || &cert.w2.system() != &rs) {
    problems.push_back("elements do not belong to the engine's root system");
    return problems;
  }
  const std::string pair = "(" + word_text(cert.w1) + ", " + word_text(cert.w2) + ")";

  // Unmemoised Bruhat comparisons keep this independent of the scan.
  auto verdict = is_good_pair(cert.w1, cert.w2, order, nullptr);
  if (auto* rejection = std::get_if<PairRejection>(&verdict)) {
    problems.push_back(pair + " is not a good pair: " + rejection->reason);
    return problems;
  }
  const auto& fresh = std::get<GoodPairCertificate>(verdict);
  if (fresh.beta1 != cert.beta1 || fresh.beta2 != cert.beta2) problems.push_back(pair + ": first-column roots differ");
  if (fresh.beta1_not_below_w2 != cert.beta1_not_below_w2 || fresh.beta2_not_below_w1 != cert.beta2_not_below_w1)
    problems.push_back(pair + ": Bruhat relations differ");
  if (fresh.direction != cert.direction || fresh.witness != cert.witness || fresh.divides != cert.divides)
    problems.push_back(pair + ": divisibility witness differs");

  for (RootId beta : {cert.beta1, cert.beta2})
    if (!prop35_factor(rs, order, beta).premise_ok)
      problems.push_back(pair + ": factorisation premise fails for " + b_string(rs.root(beta)));

  if (cert.computed) {
    const auto again = certify_distinct(cert, engine, caps);
    if (again.witness_divides_own != cert.witness_divides_own ||
        again.witness_divides_other != cert.witness_divides_other || again.c_differs != cert.c_differs ||
        again.direct_inequality != cert.direct_inequality)
      problems.push_back(pair + ": recomputed verdicts differ");
  }
  if (!cert.consistent()) problems.push_back(pair + ": verdicts contradict the divisibility argument");
  return problems;
}

}  // namespace ekk
