#include "ekk/nilhecke.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ekk/error.hpp"

namespace ekk {

// ---------------------------------------------------------------- NHElt

NHElt NHElt::delta(const WeylElt& w, const RatFn& coefficient) {
  NHElt x(w.system());
  x.add(w, coefficient);
  return x;
}

RatFn NHElt::coefficient(const WeylElt& v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? RatFn::zero(*sys_) : it->second;
}

void NHElt::add(const WeylElt& v, const RatFn& f) {
  if (&v.system() != sys_ || &f.system() != sys_) throw InvalidArgument("nil-Hecke operands over different root systems");
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(v, f);
  if (inserted) return;
  it->second += f;
  if (it->second.is_zero()) terms_.erase(it);
}

NHElt NHElt::operator*(const NHElt& rhs) const {
  if (sys_ != rhs.sys_) throw InvalidArgument("nil-Hecke operands over different root systems");
  NHElt out(*sys_);
  for (const auto& [v, f] : terms_)
    for (const auto& [w, g] : rhs.terms_) out.add(v * w, f * weyl_act(v, g));
  return out;
}

NHElt NHElt::operator+(const NHElt& rhs) const {
  NHElt out = *this;
  for (const auto& [w, g] : rhs.terms_) out.add(w, g);
  return out;
}

NHElt NHElt::times_generator(int i) const {
  if (i < 1 || i > sys_->rank()) throw InvalidArgument("simple reflection index out of range");
  // f delta_v * alpha_i^{-1}(delta_{s_i} - delta_id) = f/v(alpha_i) (delta_{vs_i} - delta_v)
  NHElt out(*sys_);
  const RootId alpha = sys_->simple(i);
  for (const auto& [v, f] : terms_) {
    const RatFn g = f.divided_by_root(v(alpha));
    out.add(v.times_simple(i), g);
    out.add(v, -g);
  }
  return out;
}

bool NHElt::operator==(const NHElt& rhs) const {
  if (sys_ != rhs.sys_ || terms_.size() != rhs.terms_.size()) return false;
  for (const auto& [v, f] : terms_) {
    auto it = rhs.terms_.find(v);
    if (it == rhs.terms_.end() || !(it->second == f)) return false;
  }
  return true;
}

std::size_t NHElt::term_count() const {
  std::size_t n = 0;
  for (const auto& [v, f] : terms_) n += f.term_count();
  return n;
}

std::string NHElt::to_string() const {
  std::vector<std::pair<Word, const RatFn*>> rows;
  for (const auto& [v, f] : terms_) rows.emplace_back(v.reduced_word(), &f);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::ostringstream out;
  for (const auto& [word, f] : rows)
    out << (word.empty() ? "e" : word_to_string(word)) << " : " << f->to_string() << '\n';
  return out.str();
}

NHElt x_gen(const RootSystem& rs, int i) {
  const RatFn inv = RatFn::inverse_root(rs, rs.simple(i));
  NHElt x = NHElt::delta(WeylElt::simple_reflection(rs, i), inv);
  x.add(WeylElt::identity(rs), -inv);
  return x;
}

// ---------------------------------------------------------------- KKResult

bool KKResult::divisible_by(RootId beta) const {
  const RootSystem& rs = w.system();
  beta = rs.positive_part(beta);
  if (std::binary_search(linear_factors.begin(), linear_factors.end(), beta)) return true;
  return divisible_by_linear(cofactor, root_linear_form(rs, beta));
}

MPoly expand_kk(const KKResult& kk, std::size_t term_budget) {
  const RootSystem& rs = kk.w.system();
  MPoly d = kk.cofactor;
  for (RootId r : kk.linear_factors) {
    d = d.mul_linear(root_linear_form(rs, r));
    if (d.size() > term_budget) throw BudgetExceeded("term budget exceeded");
  }
  return d;
}

// ---------------------------------------------------------------- NilHecke

NilHecke::NilHecke(const RootSystem& rs, NilHeckeConfig config) : sys_(&rs), config_(config) {}

void NilHecke::check_budget(const NHElt& x, std::chrono::steady_clock::time_point start) const {
  if (x.term_count() > config_.term_budget) throw BudgetExceeded("term budget exceeded");
  if (config_.time_budget.count() > 0 && std::chrono::steady_clock::now() - start > config_.time_budget)
    throw BudgetExceeded("time budget exceeded");
}

std::shared_ptr<const NHElt> NilHecke::x_word(const Word& word) {
  evaluate_reduced(*sys_, word);
  const auto start = std::chrono::steady_clock::now();

  std::shared_ptr<const NHElt> current;
  std::size_t done = word.size();
  {
    std::shared_lock lock(mutex_);
    for (;;) {
      auto it = prefix_memo_.find(Word(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(done)));
      if (it != prefix_memo_.end()) {
        current = it->second;
        break;
      }
      if (done == 0) break;
      --done;
    }
  }
  if (!current) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] =
        prefix_memo_.try_emplace(Word{}, std::make_shared<const NHElt>(NHElt::delta(WeylElt::identity(*sys_))));
    current = it->second;
  }

  for (std::size_t k = done; k < word.size(); ++k) {
    auto next = std::make_shared<const NHElt>(current->times_generator(word[k]));
    check_budget(*next, start);
    Word prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k + 1));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = prefix_memo_.try_emplace(std::move(prefix), std::move(next));
    current = it->second;
  }
  return current;
}

RatFn NilHecke::c_wv(const WeylElt& w, const WeylElt& v) {
  if (&w.system() != sys_ || &v.system() != sys_) throw InvalidArgument("element from a different root system");
  return x_elt(w)->coefficient(v);
}

KKResult NilHecke::kk_poly(const WeylElt& w, bool expand) {
  const auto start = std::chrono::steady_clock::now();
  auto x = x_elt(w);
  RatFn c = x->coefficient(WeylElt::identity(*sys_));
  const auto& den = c.den();
  if (std::adjacent_find(den.begin(), den.end()) != den.end())
    throw InvariantViolation("c_w has a repeated denominator root");

  std::vector<RootId> factors;
  for (RootId r = 0; r < sys_->num_positive(); ++r)
    if (!std::binary_search(den.begin(), den.end(), r)) factors.push_back(r);
  MPoly cofactor = w.length() % 2 ? -c.num() : c.num();

  KKResult result{w, std::move(c), std::move(cofactor), std::move(factors), std::nullopt, x->term_count(), {}};
  if (expand) result.d_w = expand_kk(result, config_.term_budget);
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

bool NilHecke::recursion_check_b(const WeylElt& w, const WeylElt& v, int i) {
  if (!w.has_right_descent(i)) throw InvalidArgument("length precondition violated: l(w s_i) != l(w) - 1");
  const WeylElt ws = w.times_simple(i);
  const RatFn rhs = -(c_wv(ws, v) + c_wv(ws, v.times_simple(i))).divided_by_root(v(sys_->simple(i)));
  return c_wv(w, v) == rhs;
}

bool NilHecke::recursion_check_c(const WeylElt& w, const WeylElt& v, int i) {
  if (!w.has_left_descent(i)) throw InvalidArgument("length precondition violated: l(s_i w) != l(w) - 1");
  const WeylElt sw = w.simple_times(i);
  const WeylElt si = WeylElt::simple_reflection(*sys_, i);
  const RatFn rhs = (weyl_act(si, c_wv(sw, v.simple_times(i))) - c_wv(sw, v)).divided_by_root(sys_->simple(i));
  return c_wv(w, v) == rhs;
}

bool NilHecke::dyer_check(const WeylElt& w, const WeylElt& v, const WeylSet* interval) {
  const RatFn c = c_wv(w, v);
  const auto& den = c.den();
  if (std::adjacent_find(den.begin(), den.end()) != den.end()) return false;
  for (RootId alpha : den) {
    const WeylElt reflected = WeylElt::reflection(*sys_, alpha) * v;
    const bool below = interval ? interval->count(reflected) > 0 : bruhat_.leq(reflected, w);
    if (!below) return false;
  }
  return true;
}

std::size_t NilHecke::memo_size() const {
  std::shared_lock lock(mutex_);
  return prefix_memo_.size();
}

// ---------------------------------------------------------------- oracle

WeylMap<RatFn> bruteforce_expansion(const RootSystem& rs, const Word& word, int cap) {
  if (static_cast<int>(word.size()) > cap) throw BudgetExceeded("word longer than the brute-force cap");
  evaluate_reduced(rs, word);
  const std::size_t l = word.size();
  const int overall = l % 2 ? -1 : 1;
  WeylMap<RatFn> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    // Bit k is the exponent e_k; factor k is 1 / (s^{e_1} ... s^{e_k})(alpha_{i_k}).
    WeylElt prefix = WeylElt::identity(rs);
    std::vector<RootId> den;
    for (std::size_t k = 0; k < l; ++k) {
      if (mask >> k & 1) prefix = prefix.times_simple(word[k]);
      den.push_back(prefix(rs.simple(word[k])));
    }
    RatFn term(rs, MPoly::constant(rs.rank(), overall), std::move(den));
    auto [it, inserted] = out.try_emplace(prefix, term);
    if (!inserted) it->second += term;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

RatFn c_wv_bruteforce(const RootSystem& rs, const Word& word, const WeylElt& v, int cap) {
  auto all = bruteforce_expansion(rs, word, cap);
  auto it = all.find(v);
  return it == all.end() ? RatFn::zero(rs) : it->second;
}

// ---------------------------------------------------------------- direct sums

namespace {

int summand_offset(const RootSystem& sum, int index) {
  const auto& parts = sum.summands();
  if (parts.size() != 2 || index < 0 || index > 1) throw InvalidArgument("expected a direct sum of two systems");
  return index == 0 ? 0 : parts[0]->rank();
}

RootId embed_root(const RootSystem& part, RootId r, const RootSystem& sum, int offset) {
  std::vector<int> b(static_cast<std::size_t>(sum.rank()), 0);
  const auto& src = part.root(r).b;
  for (std::size_t k = 0; k < src.size(); ++k) b[static_cast<std::size_t>(offset) + k] = src[k];
  auto found = sum.find(b);
  if (!found) throw InvariantViolation("summand root missing from the direct sum");
  return *found;
}

}  // namespace

RatFn embed_ratfn(const RatFn& f, const RootSystem& sum, int offset) {
  std::vector<RootId> den;
  for (RootId r : f.den()) den.push_back(embed_root(f.system(), r, sum, offset));
  return RatFn(sum, embed_variables(f.num(), sum.rank(), offset), std::move(den));
}

WeylElt embed_element(const WeylElt& w, const RootSystem& sum, int index) {
  const int offset = summand_offset(sum, index);
  if (&w.system() != sum.summands()[static_cast<std::size_t>(index)].get())
    throw InvalidArgument("element does not belong to the requested summand");
  Word word = w.reduced_word();
  for (int& i : word) i += offset;
  return WeylElt::from_word(sum, word);
}

bool product_formula_check(const RootSystem& sum, const WeylElt& w1, const WeylElt& w2, const NilHeckeConfig& config) {
  const int offset = summand_offset(sum, 1);
  NilHecke left(*sum.summands()[0], config);
  NilHecke right(*sum.summands()[1], config);
  NilHecke whole(sum, config);

  const KKResult k1 = left.kk_poly(w1);
  const KKResult k2 = right.kk_poly(w2);
  const KKResult k = whole.kk_poly(embed_element(w1, sum, 0) * embed_element(w2, sum, 1));

  const RatFn c_product = embed_ratfn(k1.c_w, sum, 0) * embed_ratfn(k2.c_w, sum, offset);
  const MPoly d_product =
      embed_variables(*k1.d_w, sum.rank(), 0) * embed_variables(*k2.d_w, sum.rank(), offset);
  return k.c_w == c_product && *k.d_w == d_product;
}

}  // namespace ekk
