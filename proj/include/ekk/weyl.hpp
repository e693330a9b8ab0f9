#pragma once

#include <cstdint>
#include <functional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ekk/rootsys.hpp"

namespace ekk {

/// Element of the Weyl group, stored as its action on the positive roots:
/// image_[k] is the RootId of w(beta_k). The element keeps a non-owning
/// pointer to its RootSystem, which must outlive it.
class WeylElt {
 public:
  static WeylElt identity(const RootSystem& rs);
  static WeylElt simple_reflection(const RootSystem& rs, int i);
  /// s_beta for any root beta (s_beta = s_{-beta}).
  static WeylElt reflection(const RootSystem& rs, RootId beta);
  /// s_{i_1} ... s_{i_l}; the word need not be reduced.
  static WeylElt from_word(const RootSystem& rs, std::span<const int> word);

  const RootSystem& system() const { return *sys_; }

  RootId operator()(RootId r) const {
    const int n = sys_->num_positive();
    return r < n ? image_[static_cast<std::size_t>(r)] : sys_->negate(image_[static_cast<std::size_t>(r - n)]);
  }

  /// Throws InvalidArgument when the operands live in different systems.
  WeylElt operator*(const WeylElt& rhs) const;
  WeylElt inverse() const;
  WeylElt times_simple(int i) const;  // w s_i
  WeylElt simple_times(int i) const;  // s_i w

  /// Number of positive roots sent to negative roots.
  int length() const { return length_; }
  bool is_identity() const { return length_ == 0; }
  bool is_involution() const;
  /// l(w s_i) < l(w), i.e. w(alpha_i) < 0.
  bool has_right_descent(int i) const { return !sys_->is_positive((*this)(sys_->simple(i))); }
  /// l(s_i w) < l(w), i.e. w^{-1}(alpha_i) < 0.
  bool has_left_descent(int i) const;

  /// Reduced word built from the left, taking the smallest left descent at
  /// each step.
  Word reduced_word() const;

  std::size_t hash() const;
  bool operator==(const WeylElt& rhs) const { return sys_ == rhs.sys_ && image_ == rhs.image_; }

  const std::vector<std::uint16_t>& images() const { return image_; }

 private:
  WeylElt(const RootSystem* sys, std::vector<std::uint16_t> image);

  const RootSystem* sys_;
  std::vector<std::uint16_t> image_;
  int length_ = 0;
};

struct WeylHash {
  std::size_t operator()(const WeylElt& w) const { return w.hash(); }
};

using WeylSet = std::unordered_set<WeylElt, WeylHash>;
template <typename V>
using WeylMap = std::unordered_map<WeylElt, V, WeylHash>;

/// Orders by length, then by canonical reduced word.
bool canonical_less(const WeylElt& a, const WeylElt& b);

/// Evaluates `word` and throws NotReduced with the shortest failing prefix if
/// it is not a reduced expression.
WeylElt evaluate_reduced(const RootSystem& rs, std::span<const int> word);

std::string word_to_string(std::span<const int> word);

/// Bruhat comparison by the lifting property with a (v, w) memo table.
/// Safe to share between threads.
class BruhatOrder {
 public:
  bool leq(const WeylElt& v, const WeylElt& w);
  std::size_t memo_size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint16_t>& k) const;
  };
  bool compute(const WeylElt& v, const WeylElt& w);

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<std::uint16_t>, bool, KeyHash> memo_;
};

/// Unmemoised lifting-property recursion.
bool bruhat_leq(const WeylElt& v, const WeylElt& w);

/// The Bruhat interval [id, w], grown one letter at a time over a reduced word
/// of w (every subword product of a reduced word lies below w).
WeylSet lower_interval(const WeylElt& w);

struct ParabolicFactor {
  WeylElt u;  // minimal-length representative of u W_I
  WeylElt v;  // element of W_I
};

/// w = u v with u in W^I and v in W_I. `subset` holds 1-based simple indices.
ParabolicFactor parabolic_factorize(const WeylElt& w, std::span<const int> subset);

/// Orthogonal root set of an involution, in extraction order: repeatedly take
/// the lexicographically largest positive root negated by the current element
/// and strip its reflection. Throws InvalidArgument for non-involutions.
std::vector<RootId> support(const WeylElt& w, const SimpleOrder& order);

/// All elements of length <= max_len, by breadth-first right multiplication,
/// sorted canonically.
std::vector<WeylElt> enumerate_elements(const RootSystem& rs, int max_len);

/// Involutions of length <= max_len, sorted canonically.
std::vector<WeylElt> enumerate_involutions(const RootSystem& rs, int max_len);

}  // namespace ekk
