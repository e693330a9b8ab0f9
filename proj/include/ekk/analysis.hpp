#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ekk/nilhecke.hpp"
#include "ekk/rootsys.hpp"
#include "ekk/weyl.hpp"

namespace ekk {

/// s_beta = u v with v in the parabolic subgroup avoiding the distinguished
/// node c and u a minimal coset representative.
struct FactorRow {
  RootId beta;
  Root root;
  WeylElt u;
  WeylElt v;
  Word u_word;
  Word v_word;
  /// u = v^{-1} s_c, the extra condition needed for the non-divisibility
  /// argument. The other invariants always hold and are asserted.
  bool premise_ok = true;
  std::string premise_note;
};

/// Throws InvalidArgument if beta is not in the first column, and
/// InvariantViolation if the parabolic factorisation itself is inconsistent.
FactorRow prop35_factor(const RootSystem& rs, const SimpleOrder& order, RootId beta);

/// One row per first-column root, in first-column order.
std::vector<FactorRow> gen_table(const RootSystem& rs, const SimpleOrder& order, unsigned workers = 1);

/// Which reflection fails to lie below the other involution. The certificate
/// uses the first available side.
enum class PairDirection { Beta1NotBelowW2, Beta2NotBelowW1 };

struct GoodPairCertificate {
  WeylElt w1;
  WeylElt w2;
  RootId beta1;
  RootId beta2;
  bool beta1_not_below_w2 = false;  // s_beta1 not <= w2
  bool beta2_not_below_w1 = false;  // s_beta2 not <= w1
  PairDirection direction = PairDirection::Beta1NotBelowW2;

  /// The witness root divides d of `divides` (1 or 2) and not d of the other.
  RootId witness = 0;
  int divides = 2;

  /// Set by certify_distinct when both polynomials were computed.
  bool computed = false;
  std::optional<bool> witness_divides_own;    // expected false
  std::optional<bool> witness_divides_other;  // expected true
  std::optional<bool> c_differs;              // c_w1 != c_w2 as reduced fractions
  std::optional<bool> direct_inequality;      // expanded d_w1 != d_w2
  std::string note;

  /// True when every computed verdict agrees with the symbolic argument.
  bool consistent() const;
};

struct PairRejection {
  std::string reason;
};

using PairVerdict = std::variant<GoodPairCertificate, PairRejection>;

/// Support roots of an involution lying in the first column.
std::vector<RootId> support_in_first_column(const WeylElt& w, const SimpleOrder& order);

/// Checks the four defining clauses. The E8 clause excludes the
/// lexicographic maximum of the first column. Uses `bruhat` when given.
PairVerdict is_good_pair(const WeylElt& w1, const WeylElt& w2, const SimpleOrder& order,
                         BruhatOrder* bruhat = nullptr);

struct ComputeCaps {
  int max_len = 3;  // longest involution whose d_w is computed
  bool expand = true;  // also compare fully expanded d_w
};

/// Fills in the computed verdicts when both lengths are within caps; otherwise
/// leaves the certificate symbolic and says so in `note`.
GoodPairCertificate certify_distinct(GoodPairCertificate cert, NilHecke& engine, const ComputeCaps& caps);

/// Every unordered good pair among involutions of length <= max_len, each
/// certified, in canonical order of (w1, w2).
std::vector<GoodPairCertificate> scan_good_pairs(const RootSystem& rs, const SimpleOrder& order, int max_len,
                                                 NilHecke& engine, const ComputeCaps& caps, unsigned workers = 1);

/// Re-derives every claim of a certificate from scratch; returns the list of
/// claims that did not hold (empty when the certificate is valid).
std::vector<std::string> recheck(const GoodPairCertificate& cert, const SimpleOrder& order, NilHecke& engine,
                                 const ComputeCaps& caps);

}  // namespace ekk
