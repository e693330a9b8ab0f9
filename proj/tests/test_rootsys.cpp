#include <doctest.h>

#include <algorithm>
#include <set>

#include "ekk/error.hpp"
#include "ekk/rootsys.hpp"
#include "oracles.hpp"

using namespace ekk;

namespace {

std::array<Rat, 8> eps_of(std::initializer_list<Rat> xs) {
  std::array<Rat, 8> e{};
  std::copy(xs.begin(), xs.end(), e.begin());
  return e;
}

Rat dot8(const std::array<Rat, 8>& a, const std::array<Rat, 8>& b) {
  Rat s = 0;
  for (std::size_t k = 0; k < 8; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

TEST_CASE("E-type positive root counts and lengths") {
  for (auto [rank, count] : {std::pair{6, 36}, {7, 63}, {8, 120}}) {
    const auto rs = RootSystem::e_type(rank);
    CHECK(rs.num_positive() == count);
    CHECK(rs.rank() == rank);
    std::set<std::array<Rat, 8>> seen;
    for (RootId r = 0; r < rs.num_positive(); ++r) {
      const Root& root = rs.root(r);
      CHECK(dot8(root.eps, root.eps) == 2);
      CHECK(std::all_of(root.b.begin(), root.b.end(), [](int c) { return c >= 0; }));
      // eps = sum b_i eps(alpha_i)
      std::array<Rat, 8> rebuilt{};
      for (int i = 1; i <= rank; ++i)
        for (std::size_t k = 0; k < 8; ++k) rebuilt[k] += root.b[static_cast<std::size_t>(i - 1)] * rs.root(rs.simple(i)).eps[k];
      CHECK(rebuilt == root.eps);
      seen.insert(root.eps);
    }
    CHECK(seen.size() == static_cast<std::size_t>(count));
  }
}

TEST_CASE("E6 simple roots in epsilon coordinates") {
  const auto rs = RootSystem::e_type(6);
  const Rat h(1, 2);
  CHECK(rs.root(rs.simple(1)).eps == eps_of({h, -h, -h, -h, -h, -h, -h, h}));
  CHECK(rs.root(rs.simple(2)).eps == eps_of({1, 1, 0, 0, 0, 0, 0, 0}));
  CHECK(rs.root(rs.simple(3)).eps == eps_of({-1, 1, 0, 0, 0, 0, 0, 0}));
  CHECK(rs.root(rs.simple(6)).eps == eps_of({0, 0, 0, -1, 1, 0, 0, 0}));
}

TEST_CASE("E8 root 23465431 sits at eps6 + eps8") {
  const auto rs = RootSystem::e_type(8);
  const std::vector<int> b{2, 3, 4, 6, 5, 4, 3, 1};
  auto r = rs.find(b);
  REQUIRE(r);
  CHECK(rs.root(*r).eps == eps_of({0, 0, 0, 0, 0, 1, 0, 1}));
}

TEST_CASE("E-type Cartan matrices follow the Bourbaki diagram") {
  const auto rs = RootSystem::e_type(8);
  const auto& a = rs.cartan();
  const std::set<std::pair<int, int>> edges{{1, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      const int expected = i == j ? 2 : (edges.count({std::min(i, j), std::max(i, j)}) ? -1 : 0);
      CHECK(a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] == expected);
    }
  CHECK_THROWS_AS(RootSystem::e_type(5), InvalidArgument);
}

TEST_CASE("systems from Cartan matrices") {
  const auto a2 = RootSystem::from_cartan({{2, -1}, {-1, 2}});
  CHECK(a2.num_positive() == 3);
  CHECK(a2.find(std::vector<int>{1, 1}).has_value());
  CHECK(RootSystem::from_cartan({{2}}).num_positive() == 1);
  CHECK(parse_system("A3").num_positive() == 6);
  CHECK(parse_system("D4").num_positive() == 12);
  CHECK(parse_system("A4").num_positive() == 10);

  CHECK_THROWS_AS(RootSystem::from_cartan({{2, -1}, {0, 2}}), InvalidArgument);       // not symmetric
  CHECK_THROWS_AS(RootSystem::from_cartan({{2, -2}, {-2, 2}}), InvalidArgument);      // affine entry
  CHECK_THROWS_AS(RootSystem::from_cartan({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}), InvalidArgument);  // cycle
  CHECK_THROWS_AS(RootSystem::from_cartan({{3}}), InvalidArgument);
  CHECK_THROWS_AS(parse_system("B3"), InvalidArgument);
  CHECK_THROWS_AS(parse_system("A"), InvalidArgument);
}

TEST_CASE("direct sums") {
  const auto a1 = parse_system("A1");
  const auto s = RootSystem::direct_sum(a1, a1);
  CHECK(s.num_positive() == 2);
  CHECK(s.cartan() == CartanMatrix{{2, 0}, {0, 2}});
  const auto t = parse_system("A2+A1");
  CHECK(t.num_positive() == 4);
  CHECK(t.rank() == 3);
  CHECK(t.kind() == SystemKind::DirectSum);
  REQUIRE(t.summands().size() == 2);
  CHECK(t.summands()[0]->rank() == 2);
  CHECK(t.summands()[1]->rank() == 1);
}

TEST_CASE("reflections on roots") {
  const auto a2 = parse_system("A2");
  const RootId a1 = a2.simple(1), a2r = a2.simple(2);
  CHECK(a2.reflect(a1, a1) == a2.negate(a1));
  CHECK(a2.root(a2.reflect(a1, a2r)).b == std::vector<int>{1, 1});

  const auto e6 = RootSystem::e_type(6);
  for (RootId beta = 0; beta < e6.num_roots(); ++beta)
    for (RootId gamma = 0; gamma < e6.num_roots(); ++gamma) {
      const RootId image = e6.reflect(beta, gamma);
      if (e6.inner(beta, gamma) == 0) CHECK(image == gamma);
      CHECK(e6.reflect(beta, image) == gamma);
    }
  // simple reflections permute the other positive roots and negate alpha_i
  for (int i = 1; i <= 6; ++i)
    for (RootId r = 0; r < e6.num_positive(); ++r) {
      const RootId image = e6.simple_image(i, r);
      CHECK(image == e6.reflect(e6.simple(i), r));
      CHECK(e6.is_positive(image) == (r != e6.simple(i)));
    }
}

TEST_CASE("lexicographic order") {
  const auto e6 = RootSystem::e_type(6);
  const auto order = natural_order(6);
  const auto a = *e6.find(std::vector<int>{1, 0, 0, 0, 0, 0});
  const auto b = *e6.find(std::vector<int>{1, 0, 1, 0, 0, 0});
  CHECK(lex_compare(order, e6.root(a), e6.root(b)) == Ordering::Less);
  CHECK(lex_compare(order, e6.root(a), e6.root(a)) == Ordering::Equal);

  // strict total order on E6, against the literal oracle
  for (RootId x = 0; x < e6.num_positive(); ++x)
    for (RootId y = 0; y < e6.num_positive(); ++y) {
      const auto c = lex_compare(order, e6.root(x), e6.root(y));
      CHECK((c == Ordering::Less) == oracle::lex_less(order, e6.root(x).b, e6.root(y).b));
      CHECK((c == Ordering::Equal) == (x == y));
      const auto back = lex_compare(order, e6.root(y), e6.root(x));
      CHECK((c == Ordering::Less) == (back == Ordering::Greater));
    }
  const auto alt = named_order(e6, "alt");
  CHECK(alt.sequence == std::vector<int>{2, 6, 3, 5, 4, 1});
  CHECK(alt.distinguished == 6);
}

TEST_CASE("named orders") {
  const auto e7 = RootSystem::e_type(7);
  const auto e8 = RootSystem::e_type(8);
  CHECK(named_order(e7, "standard").sequence == std::vector<int>{3, 7, 4, 6, 5, 2, 1});
  CHECK(named_order(e7, "standard").distinguished == 7);
  CHECK(named_order(e8, "standard").sequence == std::vector<int>{4, 8, 5, 7, 6, 3, 2, 1});
  CHECK(named_order(e8, "standard").distinguished == 8);
  CHECK(order_names(e7).front() == "standard");
  CHECK_THROWS_AS(named_order(e7, "alt"), InvalidArgument);
  CHECK_THROWS_AS(named_order(e7, ""), InvalidArgument);
  CHECK_THROWS_AS(validate_order(e7, SimpleOrder{"bad", {1, 2, 3}, 1}), InvalidArgument);
  CHECK_THROWS_AS(validate_order(e7, SimpleOrder{"bad", {1, 2, 3, 4, 5, 6, 6}, 1}), InvalidArgument);
}

TEST_CASE("first columns") {
  const auto e6 = RootSystem::e_type(6);
  const auto natural = first_column(e6, natural_order(6));
  const auto alt = first_column(e6, named_order(e6, "alt"));
  CHECK(natural.size() == 16);
  CHECK(alt.size() == 16);
  CHECK(natural.front() == e6.simple(1));
  CHECK(b_string(e6.root(natural.back())) == "122321");
  for (RootId r : natural) CHECK(e6.root(r).b[0] != 0);
  for (std::size_t k = 1; k < natural.size(); ++k) CHECK(e6.root(natural[k - 1]).height() <= e6.root(natural[k]).height());

  const auto e7 = RootSystem::e_type(7);
  const auto c7 = first_column(e7, named_order(e7, "standard"));
  CHECK(c7.size() == 27);
  for (RootId r : c7) CHECK(e7.root(r).b[6] == 1);

  const auto e8 = RootSystem::e_type(8);
  CHECK(first_column(e8, named_order(e8, "standard")).size() == 57);
}

TEST_CASE("rational text") {
  CHECK(to_string(Rat(-1, 2)) == "-1/2");
  CHECK(to_string(Rat(4, 2)) == "2");
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK_THROWS(parse_rat("x"));
}
