#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ekk/polyring.hpp"
#include "ekk/rootsys.hpp"
#include "ekk/weyl.hpp"

namespace ekk {

/// Element sum_v f_v delta_v of the nil-Hecke ring. Zero coefficients are
/// never stored.
class NHElt {
 public:
  explicit NHElt(const RootSystem& rs) : sys_(&rs) {}

  static NHElt delta(const WeylElt& w, const RatFn& coefficient);
  static NHElt delta(const WeylElt& w) { return delta(w, RatFn::one(w.system())); }

  const RootSystem& system() const { return *sys_; }
  const WeylMap<RatFn>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero when v is outside the support.
  RatFn coefficient(const WeylElt& v) const;
  void add(const WeylElt& v, const RatFn& f);

  /// f delta_v * g delta_w = f v(g) delta_{vw}, extended bilinearly.
  NHElt operator*(const NHElt& rhs) const;
  NHElt operator+(const NHElt& rhs) const;
  /// this * x_i without building x_i.
  NHElt times_generator(int i) const;
  bool operator==(const NHElt& rhs) const;

  /// Sum of numerator term counts over the support.
  std::size_t term_count() const;

  /// One line "v_word : coefficient" per support element, sorted by length
  /// and canonical word; the identity prints as "e".
  std::string to_string() const;

 private:
  const RootSystem* sys_;
  WeylMap<RatFn> terms_;
};

/// x_i = alpha_i^{-1} (delta_{s_i} - delta_id)
NHElt x_gen(const RootSystem& rs, int i);

struct NilHeckeConfig {
  /// Refuse to build expansions with more numerator terms than this.
  std::size_t term_budget = 2'000'000;
  /// Wall-clock budget per computation; zero means unlimited.
  std::chrono::milliseconds time_budget{0};
  /// Longest word accepted by the 2^l brute-force oracle.
  int bruteforce_cap = 12;
};

/// Kostant-Kumar polynomial d_w = (-1)^l(w) c_w prod_{alpha>0} alpha, held in
/// factored form cofactor * prod(linear_factors) and optionally expanded.
struct KKResult {
  WeylElt w;
  RatFn c_w;
  MPoly cofactor;                     // (-1)^l(w) * numerator of c_w
  std::vector<RootId> linear_factors; // positive roots absent from den(c_w)
  std::optional<MPoly> d_w;           // expanded, when requested
  std::size_t term_count = 0;         // terms of the x_w expansion
  std::chrono::nanoseconds elapsed{0};

  /// Exact divisibility test read off the factorisation.
  bool divisible_by(RootId beta) const;
};

/// Computes x_w expansions and everything derived from them. Expansions are
/// memoised by word prefix; all public members may be called concurrently.
class NilHecke {
 public:
  explicit NilHecke(const RootSystem& rs, NilHeckeConfig config = {});

  const RootSystem& system() const { return *sys_; }
  const NilHeckeConfig& config() const { return config_; }
  BruhatOrder& bruhat() { return bruhat_; }

  /// x_{i_1} ... x_{i_l}. Throws NotReduced for non-reduced words and
  /// BudgetExceeded past the configured budgets.
  std::shared_ptr<const NHElt> x_word(const Word& word);
  /// x_w over the canonical reduced word of w.
  std::shared_ptr<const NHElt> x_elt(const WeylElt& w) { return x_word(w.reduced_word()); }

  RatFn c_wv(const WeylElt& w, const WeylElt& v);
  RatFn c_w(const WeylElt& w) { return c_wv(w, WeylElt::identity(*sys_)); }

  /// Throws InvariantViolation if c_w * prod(alpha) keeps a denominator.
  KKResult kk_poly(const WeylElt& w, bool expand = true);

  /// c_{w,v} = -v(alpha_i)^{-1} (c_{ws_i,v} + c_{ws_i,vs_i}) when
  /// l(ws_i) = l(w) - 1. Throws InvalidArgument if the length condition fails.
  bool recursion_check_b(const WeylElt& w, const WeylElt& v, int i);
  /// c_{w,v} = alpha_i^{-1} (s_i(c_{s_iw,s_iv}) - c_{s_iw,v}) when
  /// l(s_iw) = l(w) - 1.
  bool recursion_check_c(const WeylElt& w, const WeylElt& v, int i);

  /// Every denominator root alpha of c_{w,v} occurs once and satisfies
  /// s_alpha v <= w. `interval`, when given, must be [id, w].
  bool dyer_check(const WeylElt& w, const WeylElt& v, const WeylSet* interval = nullptr);

  std::size_t memo_size() const;

 private:
  void check_budget(const NHElt& x, std::chrono::steady_clock::time_point start) const;

  const RootSystem* sys_;
  NilHeckeConfig config_;
  BruhatOrder bruhat_;
  mutable std::shared_mutex mutex_;
  std::map<Word, std::shared_ptr<const NHElt>> prefix_memo_;
};

/// d_w expanded from its factored form; BudgetExceeded past `term_budget`.
MPoly expand_kk(const KKResult& kk, std::size_t term_budget);

/// The 2^l signed sum over 0/1 sequences, grouped by the element each
/// sequence evaluates to. Independent of NHElt multiplication.
WeylMap<RatFn> bruteforce_expansion(const RootSystem& rs, const Word& word, int cap = 12);
RatFn c_wv_bruteforce(const RootSystem& rs, const Word& word, const WeylElt& v, int cap = 12);

/// Maps a rational function of a summand into the direct sum `sum`, whose
/// variables for that summand start after `offset`.
RatFn embed_ratfn(const RatFn& f, const RootSystem& sum, int offset);
/// Image of an element of summand `index` (0 or 1) in the direct sum.
WeylElt embed_element(const WeylElt& w, const RootSystem& sum, int index);

/// d_{w1 w2} = d_{w1} d_{w2} and c_{w1 w2} = c_{w1} c_{w2} for w1, w2 in the
/// two summands of `sum`, each side computed in its own ring.
bool product_formula_check(const RootSystem& sum, const WeylElt& w1, const WeylElt& w2,
                           const NilHeckeConfig& config = {});

}  // namespace ekk
