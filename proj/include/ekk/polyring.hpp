#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ekk/rat.hpp"
#include "ekk/rootsys.hpp"
#include "ekk/weyl.hpp"

namespace ekk {

/// Exponent vector packed one byte per variable; variable x_1 occupies the
/// most significant byte, so comparing keys numerically is lex order with
/// x_1 > x_2 > ... > x_8.
using MonomialKey = std::uint64_t;

inline constexpr int kMaxVariables = 8;

inline constexpr MonomialKey unit_key(int var) {  // var is 1-based
  return MonomialKey{1} << (8 * (kMaxVariables - var));
}
inline constexpr int exponent_of(MonomialKey key, int var) {
  return static_cast<int>((key >> (8 * (kMaxVariables - var))) & 0xffu);
}
int key_degree(MonomialKey key);

/// Sparse polynomial in x_1..x_n with exact rational coefficients. Terms are
/// kept sorted by decreasing key and never carry a zero coefficient.
class MPoly {
 public:
  using Term = std::pair<MonomialKey, Rat>;

  explicit MPoly(int num_vars = 0) : nvars_(num_vars) {}

  static MPoly constant(int num_vars, const Rat& c);
  static MPoly variable(int num_vars, int i);
  /// sum_i coeffs[i-1] x_i
  static MPoly linear(std::span<const int> coeffs);
  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static MPoly from_terms(int num_vars, std::vector<Term> terms);

  int num_vars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Rat coefficient(MonomialKey key) const;
  Rat evaluate(std::span<const Rat> point) const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& rhs) const;
  MPoly operator-(const MPoly& rhs) const;
  MPoly operator*(const MPoly& rhs) const;
  MPoly operator*(const Rat& c) const;
  MPoly& operator+=(const MPoly& rhs) { return *this = *this + rhs; }
  MPoly& operator-=(const MPoly& rhs) { return *this = *this - rhs; }
  MPoly& operator*=(const MPoly& rhs) { return *this = *this * rhs; }
  bool operator==(const MPoly& rhs) const { return terms_ == rhs.terms_; }

  /// Product with a homogeneous linear form, by a k-way merge of shifted
  /// copies. Much cheaper than the general product on large operands.
  MPoly mul_linear(const MPoly& form) const;

  /// Canonical text: decreasing lex order, "3/2*x1^2*x3 - x2 + 1".
  std::string to_string() const;

 private:
  int nvars_;
  std::vector<Term> terms_;
};

struct LinearDivision {
  MPoly quotient;
  MPoly remainder;
};

/// p = q * form + r where r has no monomial divisible by the lowest-index
/// variable of `form`. Throws InvalidArgument unless `form` is a nonzero
/// linear form without constant term.
LinearDivision divide_by_linear(const MPoly& p, const MPoly& form);

inline bool divisible_by_linear(const MPoly& p, const MPoly& form) {
  return divide_by_linear(p, form).remainder.is_zero();
}

/// sum_i b_i(beta) x_i
MPoly root_linear_form(const RootSystem& rs, RootId beta);

/// Substitutes x_i -> linear form of w(alpha_i).
MPoly weyl_act(const WeylElt& w, const MPoly& p);

/// Renames x_i to x_{i+offset} inside a ring with `num_vars` variables.
MPoly embed_variables(const MPoly& p, int num_vars, int offset);

/// Rational function num / prod(den) whose denominator is a multiset of
/// positive roots. Always normalised: no denominator root divides num, and
/// zero is (0, {}). Keeps a non-owning pointer to its RootSystem.
class RatFn {
 public:
  explicit RatFn(const RootSystem& rs) : sys_(&rs), num_(rs.rank()) {}
  /// `den` may list negative roots; their signs move into the numerator.
  RatFn(const RootSystem& rs, MPoly num, std::vector<RootId> den);

  static RatFn zero(const RootSystem& rs) { return RatFn(rs); }
  static RatFn constant(const RootSystem& rs, const Rat& c);
  static RatFn one(const RootSystem& rs) { return constant(rs, 1); }
  /// 1 / beta
  static RatFn inverse_root(const RootSystem& rs, RootId beta);

  const RootSystem& system() const { return *sys_; }
  const MPoly& num() const { return num_; }
  /// Sorted positive RootIds, with multiplicity.
  const std::vector<RootId>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::size_t term_count() const { return num_.size(); }

  RatFn operator-() const;
  RatFn operator+(const RatFn& rhs) const;
  RatFn operator-(const RatFn& rhs) const { return *this + (-rhs); }
  RatFn operator*(const RatFn& rhs) const;
  RatFn operator*(const Rat& c) const;
  /// Division is defined when the divisor's numerator factors into roots
  /// times a constant; otherwise InvalidArgument (also for a zero divisor).
  RatFn operator/(const RatFn& rhs) const;
  RatFn& operator+=(const RatFn& rhs) { return *this = *this + rhs; }
  RatFn& operator-=(const RatFn& rhs) { return *this = *this - rhs; }

  /// this / beta for any root beta (sign of a negative root goes to num).
  RatFn divided_by_root(RootId beta) const;

  bool operator==(const RatFn& rhs) const {
    return sys_ == rhs.sys_ && den_ == rhs.den_ && num_ == rhs.num_;
  }

  /// "num" or "num / (root)(root)..." with roots as linear forms.
  std::string to_string() const;

  /// Cancels denominator roots against the numerator, visiting the distinct
  /// roots in the given order. The result does not depend on the order.
  void normalize_in_order(std::span<const RootId> visit_order);

 private:
  void normalize();
  void check_same(const RatFn& rhs) const;

  const RootSystem* sys_;
  MPoly num_;
  std::vector<RootId> den_;
};

RatFn weyl_act(const WeylElt& w, const RatFn& f);

}  // namespace ekk
