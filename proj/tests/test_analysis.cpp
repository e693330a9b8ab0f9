#include <doctest.h>

#include <algorithm>
#include <set>

#include "ekk/analysis.hpp"
#include "ekk/error.hpp"
#include "oracles.hpp"

using namespace ekk;

namespace {

RootId root_of(const RootSystem& rs, std::vector<int> b) { return *rs.find(b); }

/// Acceptance decided from oracle supports and subword Bruhat comparisons.
bool oracle_good_pair(const WeylElt& w1, const WeylElt& w2, const SimpleOrder& order) {
  const RootSystem& rs = w1.system();
  const auto c = static_cast<std::size_t>(order.distinguished - 1);
  auto column_roots = [&](const WeylElt& w) {
    std::vector<std::vector<int>> out;
    for (auto& b : oracle::support_b(w, order))
      if (b[c] != 0) out.push_back(b);
    return out;
  };
  if (!(w1 * w1 == WeylElt::identity(rs)) || !(w2 * w2 == WeylElt::identity(rs))) return false;
  const auto c1 = column_roots(w1), c2 = column_roots(w2);
  if (c1.size() != 1 || c2.size() != 1 || c1[0] == c2[0]) return false;
  const auto s1 = WeylElt::reflection(rs, *rs.find(c1[0]));
  const auto s2 = WeylElt::reflection(rs, *rs.find(c2[0]));
  return !oracle::subword_leq(s1, w2) || !oracle::subword_leq(s2, w1);
}

}  // namespace

TEST_CASE("factorisation rows") {
  const auto e6 = RootSystem::e_type(6);
  const auto natural = natural_order(6);
  const auto first = prop35_factor(e6, natural, e6.simple(1));
  CHECK(first.u == WeylElt::simple_reflection(e6, 1));
  CHECK(first.v.is_identity());
  CHECK(first.premise_ok);

  const auto row = prop35_factor(e6, natural, root_of(e6, {1, 0, 1, 0, 0, 0}));
  CHECK(row.u_word == Word{3, 1});
  CHECK(row.v_word == Word{3});

  CHECK_THROWS_AS(prop35_factor(e6, natural, e6.simple(2)), InvalidArgument);

  const auto e7 = RootSystem::e_type(7);
  const auto top = prop35_factor(e7, named_order(e7, "standard"), root_of(e7, {2, 2, 3, 4, 3, 2, 1}));
  CHECK(top.u.length() == 17);
  CHECK(top.premise_ok);
}

TEST_CASE("factorisation tables") {
  struct Case {
    int rank;
    const char* order;
    std::size_t rows;
  };
  for (const auto& tc : {Case{6, "natural", 16}, Case{6, "alt", 16}, Case{7, "standard", 27}, Case{8, "standard", 57}}) {
    const auto rs = RootSystem::e_type(tc.rank);
    const auto order = named_order(rs, tc.order);
    const auto rows = gen_table(rs, order, 2);
    REQUIRE(rows.size() == tc.rows);
    CHECK(rows.front().beta == rs.simple(order.distinguished));
    std::size_t failures = 0;
    for (const auto& row : rows) {
      const auto s = WeylElt::reflection(rs, row.beta);
      CHECK(row.u * row.v == s);
      CHECK(row.u.length() + row.v.length() == s.length());
      CHECK(std::count(row.v_word.begin(), row.v_word.end(), order.distinguished) == 0);
      CHECK(WeylElt::from_word(rs, row.u_word) == row.u);
      CHECK(row.u.has_right_descent(order.distinguished));
      if (!row.premise_ok) {
        ++failures;
        CHECK(row.beta == rows.back().beta);
        CHECK(row.premise_note == "u != v^-1 s_" + std::to_string(order.distinguished));
      }
    }
    CHECK(failures == (tc.rank == 8 ? 1u : 0u));
    CHECK(gen_table(rs, order, 1).size() == rows.size());
  }
}

TEST_CASE("good-pair verdicts") {
  const auto e6 = RootSystem::e_type(6);
  const auto order = natural_order(6);
  const auto id = WeylElt::identity(e6);
  auto reason = [](const PairVerdict& v) {
    const auto* r = std::get_if<PairRejection>(&v);
    return r ? r->reason : std::string("accepted");
  };
  const auto s1 = WeylElt::simple_reflection(e6, 1);
  const auto s2 = WeylElt::simple_reflection(e6, 2);

  CHECK(reason(is_good_pair(WeylElt::from_word(e6, Word{1, 3}), s1, order)) == "not an involution");
  CHECK(reason(is_good_pair(id, s1, order)) == "support meets C1 in ≠1 root");
  CHECK(reason(is_good_pair(s1, s1 * s2, order)) == "beta1 = beta2");

  // an involution whose support holds two first-column roots
  const auto column = first_column(e6, order);
  std::optional<WeylElt> two;
  for (RootId a : column)
    for (RootId b : column)
      if (!two && a < b && e6.inner(a, b) == 0) {
        const auto w = WeylElt::reflection(e6, a) * WeylElt::reflection(e6, b);
        if (support_in_first_column(w, order).size() == 2) two = w;
      }
  REQUIRE(two);
  CHECK(reason(is_good_pair(*two, s1, order)) == "support meets C1 in ≠1 root");

  const auto b13 = WeylElt::reflection(e6, root_of(e6, {1, 0, 1, 0, 0, 0}));
  const auto verdict = is_good_pair(s1, b13, order);
  REQUIRE(std::holds_alternative<GoodPairCertificate>(verdict));
  const auto& cert = std::get<GoodPairCertificate>(verdict);
  CHECK(cert.beta1 == e6.simple(1));
  CHECK(cert.beta1_not_below_w2 == false);  // s1 <= s1 s3 s1
  CHECK(cert.beta2_not_below_w1 == true);
  CHECK(cert.direction == PairDirection::Beta2NotBelowW1);
  CHECK(cert.witness == cert.beta2);
  CHECK(cert.divides == 1);

  const auto e8 = RootSystem::e_type(8);
  const auto e8_order = named_order(e8, "standard");
  const auto e8_top = WeylElt::reflection(e8, first_column(e8, e8_order).back());
  CHECK(reason(is_good_pair(e8_top, WeylElt::simple_reflection(e8, 8), e8_order)) == "beta is the maximum of C1");

  const auto a3 = parse_system("A3");
  CHECK_THROWS_AS(is_good_pair(s1, WeylElt::simple_reflection(a3, 1), order), InvalidArgument);
}

TEST_CASE("good-pair acceptance matches the oracle") {
  const auto e6 = RootSystem::e_type(6);
  for (const auto& name : {"natural", "alt"}) {
    const auto order = named_order(e6, name);
    const auto involutions = enumerate_involutions(e6, 4);
    BruhatOrder bruhat;
    std::set<std::string> reasons;
    std::size_t accepted = 0;
    for (const auto& w1 : involutions)
      for (const auto& w2 : involutions) {
        const auto verdict = is_good_pair(w1, w2, order, &bruhat);
        CHECK(std::holds_alternative<GoodPairCertificate>(verdict) == oracle_good_pair(w1, w2, order));
        if (const auto* r = std::get_if<PairRejection>(&verdict))
          reasons.insert(r->reason);
        else
          ++accepted;
      }
    CHECK(accepted > 0);
    CHECK(reasons.count("beta1 = beta2") == 1);
    CHECK(reasons.count("support meets C1 in ≠1 root") == 1);
  }
}

TEST_CASE("certificates") {
  const auto e6 = RootSystem::e_type(6);
  const auto order = natural_order(6);
  NilHecke engine(e6);
  const auto s1 = WeylElt::simple_reflection(e6, 1);
  const auto b13 = WeylElt::reflection(e6, root_of(e6, {1, 0, 1, 0, 0, 0}));
  const auto cert = std::get<GoodPairCertificate>(is_good_pair(s1, b13, order));

  const auto done = certify_distinct(cert, engine, ComputeCaps{3, true});
  CHECK(done.computed);
  CHECK(done.witness_divides_own == false);
  CHECK(done.witness_divides_other == true);
  CHECK(done.c_differs == true);
  CHECK(done.direct_inequality == true);
  CHECK(done.consistent());
  CHECK(recheck(done, order, engine, ComputeCaps{3, true}).empty());

  const auto factored = certify_distinct(cert, engine, ComputeCaps{3, false});
  CHECK(factored.computed);
  CHECK(!factored.direct_inequality);
  CHECK(factored.consistent());

  const auto symbolic = certify_distinct(cert, engine, ComputeCaps{1, true});
  CHECK(!symbolic.computed);
  CHECK(symbolic.note == "symbolic only: length cap exceeded");
  CHECK(symbolic.consistent());

  auto tampered = done;
  tampered.witness = tampered.beta1;
  CHECK(!recheck(tampered, order, engine, ComputeCaps{3, true}).empty());
  tampered = done;
  tampered.direct_inequality = false;
  CHECK(!tampered.consistent());
  CHECK(!recheck(tampered, order, engine, ComputeCaps{3, true}).empty());
  tampered = done;
  tampered.w2 = WeylElt::from_word(e6, Word{1, 3});
  CHECK(!recheck(tampered, order, engine, ComputeCaps{3, true}).empty());
}

TEST_CASE("good-pair scans") {
  const auto e6 = RootSystem::e_type(6);
  const auto order = natural_order(6);
  NilHecke engine(e6);
  CHECK(scan_good_pairs(e6, order, 1, engine, ComputeCaps{}).empty());

  const auto pairs = scan_good_pairs(e6, order, 3, engine, ComputeCaps{3, false}, 2);
  CHECK(!pairs.empty());
  std::set<std::pair<Word, Word>> seen;
  for (const auto& p : pairs) {
    CHECK(canonical_less(p.w1, p.w2));
    CHECK(seen.emplace(p.w1.reduced_word(), p.w2.reduced_word()).second);
    CHECK(seen.count({p.w2.reduced_word(), p.w1.reduced_word()}) == 0);
    CHECK(p.computed);
    CHECK(p.consistent());
    CHECK(oracle_good_pair(p.w1, p.w2, order));
    CHECK(recheck(p, order, engine, ComputeCaps{3, false}).empty());
  }
  const auto again = scan_good_pairs(e6, order, 3, engine, ComputeCaps{3, false}, 1);
  REQUIRE(again.size() == pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    CHECK(again[k].w1 == pairs[k].w1);
    CHECK(again[k].w2 == pairs[k].w2);
  }
}
