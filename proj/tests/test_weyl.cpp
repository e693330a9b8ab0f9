#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ekk/error.hpp"
#include "ekk/weyl.hpp"
#include "oracles.hpp"

using namespace ekk;

namespace {

WeylElt random_element(const RootSystem& rs, std::mt19937& rng, int letters) {
  std::uniform_int_distribution<int> pick(1, rs.rank());
  WeylElt w = WeylElt::identity(rs);
  for (int k = 0; k < letters; ++k) w = w.times_simple(pick(rng));
  return w;
}

}  // namespace

TEST_CASE("simple reflections") {
  const auto e6 = RootSystem::e_type(6);
  const auto id = WeylElt::identity(e6);
  for (int i = 1; i <= 6; ++i) {
    const auto s = WeylElt::simple_reflection(e6, i);
    CHECK(s.length() == 1);
    CHECK(s * s == id);
    CHECK(s.is_involution());
    CHECK(s == WeylElt::reflection(e6, e6.simple(i)));
  }
  const auto s1 = WeylElt::simple_reflection(e6, 1), s2 = WeylElt::simple_reflection(e6, 2);
  const auto s3 = WeylElt::simple_reflection(e6, 3);
  CHECK(s1 * s2 == s2 * s1);
  CHECK(!(s1 * s3 == s3 * s1));
  CHECK(s1 * s3 * s1 == s3 * s1 * s3);
}

TEST_CASE("lengths and reduced words") {
  const auto e6 = RootSystem::e_type(6);
  const Word word{2, 4, 3, 5, 6, 4, 5, 2, 4, 3, 1};
  const auto w = evaluate_reduced(e6, word);
  CHECK(w.length() == 11);
  CHECK(WeylElt::from_word(e6, w.reduced_word()) == w);

  const auto top = *e6.find(std::vector<int>{1, 2, 2, 3, 2, 1});
  CHECK(WeylElt::reflection(e6, top).length() == 21);

  CHECK_THROWS_AS(evaluate_reduced(e6, Word{1, 1}), NotReduced);
  CHECK_THROWS_AS(evaluate_reduced(e6, Word{1, 3, 1, 3, 1, 3}), NotReduced);
  CHECK_THROWS_AS(evaluate_reduced(e6, Word{7}), InvalidArgument);
  try {
    evaluate_reduced(e6, Word{2, 4, 2, 4, 2});
    FAIL("expected NotReduced");
  } catch (const NotReduced& e) {
    CHECK(e.prefix() == "2 4 2 4");
  }

  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto x = random_element(e6, rng, 15);
    const Word r = x.reduced_word();
    CHECK(static_cast<int>(r.size()) == x.length());
    CHECK(evaluate_reduced(e6, r) == x);
    CHECK(x.inverse().length() == x.length());
    CHECK(x * x.inverse() == WeylElt::identity(e6));
    // length = number of positive roots sent negative
    int inversions = 0;
    for (RootId root = 0; root < e6.num_positive(); ++root) inversions += !e6.is_positive(x(root));
    CHECK(inversions == x.length());
  }
}

TEST_CASE("descents") {
  const auto a3 = parse_system("A3");
  const auto w = WeylElt::from_word(a3, Word{1, 2});
  CHECK(w.has_right_descent(2));
  CHECK(!w.has_right_descent(1));
  CHECK(w.has_left_descent(1));
  CHECK(!w.has_left_descent(2));
}

TEST_CASE("Bruhat order agrees with subwords in A3") {
  const auto a3 = parse_system("A3");
  const auto all = enumerate_elements(a3, 6);
  REQUIRE(all.size() == 24);
  BruhatOrder bruhat;
  for (const auto& w : all) {
    const auto below = oracle::subword_products(w);
    CHECK(lower_interval(w) == below);
    for (const auto& v : all) {
      const bool expected = below.count(v) > 0;
      CHECK(bruhat.leq(v, w) == expected);
      CHECK(bruhat_leq(v, w) == expected);
    }
  }
  CHECK(bruhat.memo_size() > 0);
}

TEST_CASE("Bruhat order agrees with subwords in E6") {
  const auto e6 = RootSystem::e_type(6);
  const auto s1 = WeylElt::simple_reflection(e6, 1);
  CHECK(bruhat_leq(s1, WeylElt::from_word(e6, Word{1, 3})));
  CHECK(!bruhat_leq(s1, WeylElt::from_word(e6, Word{2, 3})));

  const auto elements = enumerate_elements(e6, 4);
  BruhatOrder bruhat;
  for (const auto& w : elements) {
    const auto below = oracle::subword_products(w);
    for (const auto& v : elements) CHECK(bruhat.leq(v, w) == (below.count(v) > 0));
  }
}

TEST_CASE("element enumeration") {
  const auto a2 = parse_system("A2");
  CHECK(enumerate_elements(a2, 3).size() == 6);
  CHECK(enumerate_elements(a2, 1).size() == 3);
  const auto e6 = RootSystem::e_type(6);
  const auto upto2 = enumerate_elements(e6, 2);
  std::set<std::vector<int>> words;
  for (const auto& w : upto2) {
    CHECK(w.length() <= 2);
    words.insert(w.reduced_word());
  }
  CHECK(words.size() == upto2.size());
  CHECK(std::is_sorted(upto2.begin(), upto2.end(), canonical_less));
}

TEST_CASE("involution enumeration") {
  const auto a3 = parse_system("A3");
  const auto all = enumerate_elements(a3, 6);
  std::size_t count = 0;
  for (const auto& w : all) count += (w * w == WeylElt::identity(a3));
  CHECK(enumerate_involutions(a3, 6).size() == count);
  CHECK(count == 10);
  const auto e6 = RootSystem::e_type(6);
  CHECK(enumerate_involutions(e6, 0).size() == 1);
  CHECK(enumerate_involutions(e6, 1).size() == 7);
}

TEST_CASE("parabolic factorisation") {
  const auto e6 = RootSystem::e_type(6);
  const std::vector<int> subset{2, 3, 4, 5, 6};
  const auto beta = *e6.find(std::vector<int>{1, 0, 1, 0, 0, 0});
  const auto [u, v] = parabolic_factorize(WeylElt::reflection(e6, beta), subset);
  CHECK(u == WeylElt::from_word(e6, Word{3, 1}));
  CHECK(v == WeylElt::simple_reflection(e6, 3));

  std::mt19937 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const auto w = random_element(e6, rng, 20);
    std::vector<int> sub;
    for (int i = 1; i <= 6; ++i)
      if (rng() % 2) sub.push_back(i);
    const auto f = parabolic_factorize(w, sub);
    CHECK(f.u * f.v == w);
    CHECK(f.u.length() + f.v.length() == w.length());
    for (int i : sub) CHECK(!f.u.has_right_descent(i));
    for (int letter : f.v.reduced_word()) CHECK(std::count(sub.begin(), sub.end(), letter) == 1);
  }
}

TEST_CASE("support of involutions") {
  const auto e6 = RootSystem::e_type(6);
  const auto order = natural_order(6);
  CHECK(support(WeylElt::identity(e6), order).empty());
  for (RootId beta = 0; beta < e6.num_positive(); ++beta)
    CHECK(support(WeylElt::reflection(e6, beta), order) == std::vector<RootId>{beta});

  const auto a1 = *e6.find(std::vector<int>{1, 0, 0, 0, 0, 0});
  const auto a2 = *e6.find(std::vector<int>{0, 1, 0, 0, 0, 0});
  const auto w = WeylElt::reflection(e6, a1) * WeylElt::reflection(e6, a2);
  auto s = support(w, order);
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<RootId>{std::min(a1, a2), std::max(a1, a2)});

  CHECK_THROWS_AS(support(WeylElt::from_word(e6, Word{1, 3}), order), InvalidArgument);

  const auto alt = named_order(e6, "alt");
  for (const auto& inv : enumerate_involutions(e6, 7)) {
    for (const auto* o : {&order, &alt}) {
      const auto roots = support(inv, *o);
      std::vector<std::vector<int>> bs;
      WeylElt rebuilt = WeylElt::identity(e6);
      for (RootId r : roots) {
        bs.push_back(e6.root(r).b);
        rebuilt = rebuilt * WeylElt::reflection(e6, r);
        for (RootId q : roots) CHECK((q == r || e6.inner(q, r) == 0));
      }
      CHECK(rebuilt == inv);
      CHECK(bs == oracle::support_b(inv, *o));
    }
  }
}

TEST_CASE("E6 support sets do not depend on the order") {
  const auto e6 = RootSystem::e_type(6);
  const auto natural = natural_order(6);
  const auto alt = named_order(e6, "alt");
  const auto involutions = enumerate_involutions(e6, 36);
  CHECK(involutions.size() == 892);
  for (const auto& inv : involutions) {
    auto x = support(inv, natural), y = support(inv, alt);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
  }
}

TEST_CASE("A3 involution supports are orthogonal sets") {
  const auto a3 = parse_system("A3");
  const auto order = natural_order(3);
  for (const auto& inv : enumerate_involutions(a3, 6)) {
    const auto roots = support(inv, order);
    CHECK(roots.size() <= 2);
    CHECK(oracle::support_b(inv, order).size() == roots.size());
  }
}

TEST_CASE("word text") {
  CHECK(word_to_string(Word{1, 2, 3}) == "1 2 3");
  CHECK(word_to_string(Word{}).empty());
}
