#include "ekk/rootsys.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <deque>
#include <numeric>
#include <set>

#include "ekk/error.hpp"

namespace ekk {

namespace {

constexpr int kMaxRank = 8;

using RatMatrix = std::vector<std::vector<Rat>>;

// Gauss-Jordan solve of G x = rhs over the rationals; G must be invertible.
std::vector<Rat> solve(RatMatrix g, std::vector<Rat> rhs) {
  const std::size_t n = g.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && g[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InvariantViolation("singular Gram matrix");
    std::swap(g[pivot], g[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || g[row][col] == 0) continue;
      const Rat factor = g[row][col] / g[col][col];
      for (std::size_t k = col; k < n; ++k) g[row][k] -= factor * g[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= g[i][i];
  return rhs;
}

bool positive_definite(const CartanMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  // Every pivot of elimination without row swaps must be positive.
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col][col] <= 0) return false;
    for (std::size_t row = col + 1; row < n; ++row) {
      const Rat factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return true;
}

Rat dot(const std::array<Rat, 8>& x, const std::array<Rat, 8>& y) {
  Rat s = 0;
  for (std::size_t i = 0; i < 8; ++i) s += x[i] * y[i];
  return s;
}

std::array<Rat, 8> unit_sum(std::initializer_list<std::pair<int, int>> terms) {
  std::array<Rat, 8> v{};
  for (auto [index, sign] : terms) v[static_cast<std::size_t>(index - 1)] += sign;
  return v;
}

std::vector<std::array<Rat, 8>> e_simple_eps(int rank) {
  std::vector<std::array<Rat, 8>> s;
  std::array<Rat, 8> a1{};
  for (std::size_t i = 0; i < 8; ++i) a1[i] = Rat(-1, 2);
  a1[0] = Rat(1, 2);
  a1[7] = Rat(1, 2);
  s.push_back(a1);
  s.push_back(unit_sum({{1, 1}, {2, 1}}));
  for (int k = 3; k <= rank; ++k) s.push_back(unit_sum({{k - 1, 1}, {k - 2, -1}}));
  return s;
}

// Half-spin roots 1/2 (tail + sum_{i<=m} (-1)^nu(i) e_i) with the parity of
// the minus signs fixed.
void add_half_roots(std::vector<std::array<Rat, 8>>& out, int m, const std::array<Rat, 8>& tail,
                    int parity) {
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<int>(std::popcount(mask) % 2) != parity) continue;
    std::array<Rat, 8> v = tail;
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = (mask >> i & 1u) ? Rat(-1, 2) : Rat(1, 2);
    out.push_back(v);
  }
}

void add_d_roots(std::vector<std::array<Rat, 8>>& out, int m) {
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i) {
      out.push_back(unit_sum({{i, 1}, {j, 1}}));
      out.push_back(unit_sum({{i, -1}, {j, 1}}));
    }
}

// The positive systems of E6, E7, E8 written out in epsilon-coordinates.
std::vector<std::array<Rat, 8>> e_positive_eps(int rank) {
  std::vector<std::array<Rat, 8>> out;
  std::array<Rat, 8> tail{};
  switch (rank) {
    case 6:
      add_d_roots(out, 5);
      tail[5] = Rat(-1, 2);
      tail[6] = Rat(-1, 2);
      tail[7] = Rat(1, 2);
      add_half_roots(out, 5, tail, 0);
      break;
    case 7:
      add_d_roots(out, 6);
      out.push_back(unit_sum({{7, -1}, {8, 1}}));
      tail[6] = Rat(-1, 2);
      tail[7] = Rat(1, 2);
      add_half_roots(out, 6, tail, 1);
      break;
    case 8:
      add_d_roots(out, 8);
      tail[7] = Rat(1, 2);
      add_half_roots(out, 7, tail, 0);
      break;
    default:
      throw InvalidArgument("E-type rank must be 6, 7 or 8");
  }
  return out;
}

std::vector<int> plus_scaled(const std::vector<int>& x, int k, const std::vector<int>& y) {
  std::vector<int> r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += k * y[i];
  return r;
}

int pairing(const CartanMatrix& a, const std::vector<int>& x, const std::vector<int>& y) {
  int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * y[j] * a[i][j];
  }
  return s;
}

}  // namespace

int Root::height() const { return std::accumulate(b.begin(), b.end(), 0); }

RootSystem RootSystem::e_type(int rank) {
  const auto positive_eps = e_positive_eps(rank);  // throws for ranks other than 6, 7, 8
  const auto simple_eps = e_simple_eps(rank);
  const auto n = static_cast<std::size_t>(rank);

  RatMatrix gram(n, std::vector<Rat>(n));
  CartanMatrix cartan(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = dot(simple_eps[i], simple_eps[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat entry = 2 * gram[i][j] / gram[j][j];
      if (entry.get_den() != 1) throw InvariantViolation("non-integral Cartan entry");
      cartan[i][j] = static_cast<int>(entry.get_num().get_si());
    }

  std::vector<Root> positives;
  for (const auto& eps : positive_eps) {
    std::vector<Rat> rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = dot(eps, simple_eps[j]);
    const auto coeffs = solve(gram, rhs);
    Root r;
    r.eps = eps;
    std::array<Rat, 8> rebuilt{};
    for (std::size_t i = 0; i < n; ++i) {
      if (coeffs[i].get_den() != 1 || coeffs[i] < 0)
        throw InvariantViolation("positive root outside the cone of simple roots");
      r.b.push_back(static_cast<int>(coeffs[i].get_num().get_si()));
      for (std::size_t k = 0; k < 8; ++k) rebuilt[k] += coeffs[i] * simple_eps[i][k];
    }
    if (rebuilt != eps) throw InvariantViolation("root outside the span of the simple roots");
    if (dot(eps, eps) != 2) throw InvariantViolation("root of squared length != 2");
    positives.push_back(std::move(r));
  }

  RootSystem rs;
  rs.kind_ = rank == 6 ? SystemKind::E6 : rank == 7 ? SystemKind::E7 : SystemKind::E8;
  rs.label_ = "E" + std::to_string(rank);
  rs.rank_ = rank;
  rs.has_eps_ = true;
  rs.cartan_ = std::move(cartan);
  rs.finalize(std::move(positives));
  return rs;
}

RootSystem RootSystem::from_cartan(CartanMatrix cartan, std::string label) {
  const std::size_t n = cartan.size();
  if (n == 0 || n > kMaxRank) throw InvalidArgument("Cartan matrix rank must be in 1..8");
  for (std::size_t i = 0; i < n; ++i) {
    if (cartan[i].size() != n) throw InvalidArgument("Cartan matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const int a = cartan[i][j];
      if (i == j ? a != 2 : (a != 0 && a != -1))
        throw InvalidArgument("not a simply-laced Cartan matrix: bad entry");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (cartan[i][j] != cartan[j][i]) throw InvalidArgument("Cartan matrix is not symmetric");
  if (!positive_definite(cartan)) throw InvalidArgument("Cartan matrix is not of finite type");

  // Close the simple roots under simple reflections, keeping positive roots.
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto gamma = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      auto image = plus_scaled(gamma, -pairing(cartan, gamma, e), e);
      if (std::any_of(image.begin(), image.end(), [](int c) { return c < 0; })) continue;
      if (seen.insert(image).second) queue.push_back(std::move(image));
    }
  }

  std::vector<Root> positives;
  for (const auto& b : seen) {
    Root r;
    r.b = b;
    positives.push_back(std::move(r));
  }

  RootSystem rs;
  rs.kind_ = SystemKind::Cartan;
  rs.label_ = label.empty() ? "cartan" : std::move(label);
  rs.rank_ = static_cast<int>(n);
  rs.cartan_ = std::move(cartan);
  rs.finalize(std::move(positives));
  return rs;
}

RootSystem RootSystem::direct_sum(const RootSystem& a, const RootSystem& b) {
  const int n = a.rank() + b.rank();
  if (n > kMaxRank) throw InvalidArgument("direct sum rank exceeds 8");
  CartanMatrix cartan(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) cartan[i][j] = a.cartan()[i][j];
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j) cartan[a.rank() + i][a.rank() + j] = b.cartan()[i][j];

  std::vector<Root> positives;
  for (RootId r = 0; r < a.num_positive(); ++r) {
    Root x;
    x.b = a.root(r).b;
    x.b.resize(static_cast<std::size_t>(n), 0);
    positives.push_back(std::move(x));
  }
  for (RootId r = 0; r < b.num_positive(); ++r) {
    Root x;
    x.b.assign(static_cast<std::size_t>(a.rank()), 0);
    const auto& tail = b.root(r).b;
    x.b.insert(x.b.end(), tail.begin(), tail.end());
    positives.push_back(std::move(x));
  }

  RootSystem rs;
  rs.kind_ = SystemKind::DirectSum;
  rs.label_ = a.label() + "+" + b.label();
  rs.rank_ = n;
  rs.cartan_ = std::move(cartan);
  rs.summands_ = {std::make_shared<const RootSystem>(a), std::make_shared<const RootSystem>(b)};
  rs.finalize(std::move(positives));
  return rs;
}

void RootSystem::finalize(std::vector<Root> positives) {
  // Height first; within a height, larger coefficient vectors first so that
  // alpha_1..alpha_n land at indices 0..n-1.
  std::sort(positives.begin(), positives.end(), [](const Root& x, const Root& y) {
    const int hx = x.height(), hy = y.height();
    if (hx != hy) return hx < hy;
    return x.b > y.b;
  });
  positive_count_ = positives.size();
  const int count = num_positive();

  roots_ = positives;
  for (const auto& p : positives) {
    Root neg;
    neg.positive = false;
    neg.b = p.b;
    for (auto& c : neg.b) c = -c;
    for (std::size_t k = 0; k < 8; ++k) neg.eps[k] = -p.eps[k];
    roots_.push_back(std::move(neg));
  }
  for (RootId r = 0; r < num_roots(); ++r) by_b_.emplace(roots_[static_cast<std::size_t>(r)].b, r);

  simple_ids_.clear();
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> e(static_cast<std::size_t>(rank_), 0);
    e[static_cast<std::size_t>(i)] = 1;
    simple_ids_.push_back(by_b_.at(e));
  }

  inner_.assign(static_cast<std::size_t>(count) * static_cast<std::size_t>(count), 0);
  for (RootId x = 0; x < count; ++x)
    for (RootId y = 0; y < count; ++y)
      inner_[static_cast<std::size_t>(x * count + y)] =
          pairing(cartan_, roots_[static_cast<std::size_t>(x)].b, roots_[static_cast<std::size_t>(y)].b);

  simple_action_.assign(static_cast<std::size_t>(rank_), std::vector<RootId>(static_cast<std::size_t>(num_roots())));
  for (int i = 1; i <= rank_; ++i)
    for (RootId r = 0; r < num_roots(); ++r)
      simple_action_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(r)] = reflect(simple(i), r);
}

std::optional<RootId> RootSystem::find(std::span<const int> b) const {
  auto it = by_b_.find(std::vector<int>(b.begin(), b.end()));
  if (it == by_b_.end()) return std::nullopt;
  return it->second;
}

std::optional<RootId> RootSystem::find_eps(const std::array<Rat, 8>& eps) const {
  if (!has_eps_) return std::nullopt;
  for (RootId r = 0; r < num_roots(); ++r)
    if (roots_[static_cast<std::size_t>(r)].eps == eps) return r;
  return std::nullopt;
}

int RootSystem::inner(RootId a, RootId c) const {
  const int n = num_positive();
  const int sign = (is_positive(a) ? 1 : -1) * (is_positive(c) ? 1 : -1);
  return sign * inner_[static_cast<std::size_t>(positive_part(a) * n + positive_part(c))];
}

RootId RootSystem::reflect(RootId beta, RootId gamma) const {
  const auto image = plus_scaled(root(gamma).b, -inner(gamma, beta), root(beta).b);
  auto found = find(image);
  if (!found) throw InvariantViolation("reflection image is not a root");
  return *found;
}

Ordering lex_compare(const SimpleOrder& order, const Root& a, const Root& b) {
  for (int k : order.sequence) {
    const int x = a.b[static_cast<std::size_t>(k - 1)];
    const int y = b.b[static_cast<std::size_t>(k - 1)];
    if (x < y) return Ordering::Less;
    if (x > y) return Ordering::Greater;
  }
  return Ordering::Equal;
}

RootId RootSystem::simple(int i) const {
  if (i < 1 || i > rank_) throw InvalidArgument("simple root index " + std::to_string(i) + " out of range");
  return simple_ids_[static_cast<std::size_t>(i - 1)];
}

std::vector<RootId> first_column(const RootSystem& rs, const SimpleOrder& order) {
  validate_order(rs, order);
  const auto c = static_cast<std::size_t>(order.distinguished - 1);
  std::vector<RootId> column;
  for (RootId r = 0; r < rs.num_positive(); ++r)
    if (rs.root(r).b[c] != 0) column.push_back(r);
  std::sort(column.begin(), column.end(), [&](RootId x, RootId y) {
    const int hx = rs.root(x).height(), hy = rs.root(y).height();
    if (hx != hy) return hx < hy;
    return lex_compare(order, rs.root(x), rs.root(y)) == Ordering::Less;
  });
  return column;
}

SimpleOrder natural_order(int rank) {
  SimpleOrder o;
  o.name = "natural";
  o.sequence.resize(static_cast<std::size_t>(rank));
  std::iota(o.sequence.begin(), o.sequence.end(), 1);
  o.distinguished = 1;
  return o;
}

void validate_order(const RootSystem& rs, const SimpleOrder& order) {
  auto sorted = order.sequence;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(static_cast<std::size_t>(rs.rank()));
  std::iota(expected.begin(), expected.end(), 1);
  if (sorted != expected) throw InvalidArgument("simple order is not a permutation of 1..rank");
  if (order.distinguished < 1 || order.distinguished > rs.rank())
    throw InvalidArgument("distinguished node out of range");
}

std::vector<std::string> order_names(const RootSystem& rs) {
  switch (rs.kind()) {
    case SystemKind::E6:
      return {"natural", "alt"};
    case SystemKind::E7:
    case SystemKind::E8:
      return {"standard", "natural"};
    default:
      return {"natural"};
  }
}

SimpleOrder named_order(const RootSystem& rs, std::string_view name) {
  if (name == "natural") return natural_order(rs.rank());
  SimpleOrder o;
  o.name = std::string(name);
  if (rs.kind() == SystemKind::E6 && name == "alt") {
    o.sequence = {2, 6, 3, 5, 4, 1};
    o.distinguished = 6;
  } else if (rs.kind() == SystemKind::E7 && name == "standard") {
    o.sequence = {3, 7, 4, 6, 5, 2, 1};
    o.distinguished = 7;
  } else if (rs.kind() == SystemKind::E8 && name == "standard") {
    o.sequence = {4, 8, 5, 7, 6, 3, 2, 1};
    o.distinguished = 8;
  } else {
    throw InvalidArgument("unknown order '" + std::string(name) + "' for " + rs.label());
  }
  return o;
}

CartanMatrix cartan_type_a(int n) {
  if (n < 1) throw InvalidArgument("A_n needs n >= 1");
  CartanMatrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

CartanMatrix cartan_type_d(int n) {
  if (n < 4) throw InvalidArgument("D_n needs n >= 4");
  CartanMatrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  for (int i = 0; i + 2 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
  return a;
}

RootSystem parse_system(std::string_view spec) {
  std::vector<RootSystem> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto plus = spec.find('+', start);
    const auto piece = spec.substr(start, plus == std::string_view::npos ? spec.npos : plus - start);
    if (piece.size() < 2) throw InvalidArgument("bad root system type '" + std::string(spec) + "'");
    int n = 0;
    const auto* first = piece.data() + 1;
    const auto* last = piece.data() + piece.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr != last) throw InvalidArgument("bad rank in '" + std::string(piece) + "'");
    const std::string label(piece);
    switch (piece[0]) {
      case 'E':
        parts.push_back(RootSystem::e_type(n));
        break;
      case 'A':
        parts.push_back(RootSystem::from_cartan(cartan_type_a(n), label));
        break;
      case 'D':
        parts.push_back(RootSystem::from_cartan(cartan_type_d(n), label));
        break;
      default:
        throw InvalidArgument("unsupported root system type '" + label + "'");
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  RootSystem result = std::move(parts.front());
  for (std::size_t k = 1; k < parts.size(); ++k) result = RootSystem::direct_sum(result, parts[k]);
  return result;
}

std::string b_string(const Root& r) {
  std::string s;
  for (int c : r.b) {
    if (c < 0 || c > 9) throw InvalidArgument("coefficient does not fit a digit string");
    s.push_back(static_cast<char>('0' + c));
  }
  return s;
}

}  // namespace ekk
