#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ekk/rat.hpp"

namespace ekk {

/// Index into RootSystem::root(). Positive roots occupy [0, N), the negative
/// of positive root k sits at k + N.
using RootId = int;

/// Sequence of 1-based simple reflection indices.
using Word = std::vector<int>;

using CartanMatrix = std::vector<std::vector<int>>;

enum class Ordering { Less, Equal, Greater };

enum class SystemKind { E6, E7, E8, Cartan, DirectSum };

struct Root {
  /// Coordinates in the ambient R^8 model. Only E-type systems carry them;
  /// for the other kinds every entry is zero.
  std::array<Rat, 8> eps{};
  /// Coefficients over the simple roots alpha_1..alpha_n.
  std::vector<int> b;
  bool positive = true;

  int height() const;
};

/// Comparison order on simple roots plus the distinguished ("column") node.
struct SimpleOrder {
  std::string name;
  std::vector<int> sequence;  // 1-based, a permutation of 1..n
  int distinguished = 1;      // 1-based
};

/// A finite simply-laced root system with its positive roots enumerated and
/// the simple reflections tabulated on root indices. Immutable once built.
class RootSystem {
 public:
  /// E6, E7 or E8 in the ambient epsilon-coordinates (Bourbaki labelling).
  static RootSystem e_type(int rank);
  /// Any simply-laced finite-type Cartan matrix. Throws InvalidArgument.
  static RootSystem from_cartan(CartanMatrix cartan, std::string label = {});
  /// Orthogonal sum; simple roots of `a` come first.
  static RootSystem direct_sum(const RootSystem& a, const RootSystem& b);

  SystemKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  int rank() const { return rank_; }
  int num_positive() const { return static_cast<int>(positive_count_); }
  int num_roots() const { return 2 * num_positive(); }
  bool has_eps() const { return has_eps_; }

  const Root& root(RootId r) const { return roots_[static_cast<std::size_t>(r)]; }
  /// Throws InvalidArgument unless 1 <= i <= rank.
  RootId simple(int i) const;
  RootId negate(RootId r) const { return r < num_positive() ? r + num_positive() : r - num_positive(); }
  bool is_positive(RootId r) const { return r < num_positive(); }
  RootId positive_part(RootId r) const { return is_positive(r) ? r : negate(r); }

  std::optional<RootId> find(std::span<const int> b) const;
  std::optional<RootId> find_eps(const std::array<Rat, 8>& eps) const;

  /// Invariant form normalised so that every root has squared length 2.
  int inner(RootId a, RootId c) const;
  /// s_beta(gamma) = gamma - (gamma, beta) beta.
  RootId reflect(RootId beta, RootId gamma) const;
  /// s_i(gamma) from the precomputed table.
  RootId simple_image(int i, RootId gamma) const {
    return simple_action_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(gamma)];
  }

  const CartanMatrix& cartan() const { return cartan_; }

  /// Direct sums remember their summands; empty otherwise.
  const std::vector<std::shared_ptr<const RootSystem>>& summands() const { return summands_; }

 private:
  RootSystem() = default;
  void finalize(std::vector<Root> positives);

  SystemKind kind_ = SystemKind::Cartan;
  std::string label_;
  int rank_ = 0;
  bool has_eps_ = false;
  std::size_t positive_count_ = 0;
  CartanMatrix cartan_;
  std::vector<Root> roots_;
  std::vector<RootId> simple_ids_;
  std::map<std::vector<int>, RootId> by_b_;
  std::vector<int> inner_;  // positive x positive
  std::vector<std::vector<RootId>> simple_action_;
  std::vector<std::shared_ptr<const RootSystem>> summands_;
};

/// Lexicographic comparison of simple-root coefficients, read in the order
/// given by `order.sequence`.
Ordering lex_compare(const SimpleOrder& order, const Root& a, const Root& b);

/// Positive roots with a nonzero coefficient on the distinguished simple root,
/// sorted by height and then lexicographically.
std::vector<RootId> first_column(const RootSystem& rs, const SimpleOrder& order);

SimpleOrder natural_order(int rank);
/// Throws InvalidArgument unless `order` is a permutation of 1..rank with the
/// distinguished node among its entries.
void validate_order(const RootSystem& rs, const SimpleOrder& order);
/// Named orders known for `rs`. The first entry is the default.
std::vector<std::string> order_names(const RootSystem& rs);
SimpleOrder named_order(const RootSystem& rs, std::string_view name);

CartanMatrix cartan_type_a(int n);
CartanMatrix cartan_type_d(int n);

/// "E6", "A3", "D4", "A2+A1", ... Throws InvalidArgument.
RootSystem parse_system(std::string_view spec);

/// Coefficient vector as a digit string ("122321"); throws if a coefficient
/// does not fit in one digit.
std::string b_string(const Root& r);

}  // namespace ekk
