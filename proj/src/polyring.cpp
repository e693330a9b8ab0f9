#include "ekk/polyring.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "ekk/error.hpp"

namespace ekk {

namespace {

bool all_integer(const std::vector<MPoly::Term>& terms) {
  return std::all_of(terms.begin(), terms.end(), [](const MPoly::Term& t) { return t.second.get_den() == 1; });
}

bool is_linear_form(const MPoly& p) {
  return !p.is_zero() &&
         std::all_of(p.terms().begin(), p.terms().end(), [](const MPoly::Term& t) { return key_degree(t.first) == 1; });
}

int variable_of(MonomialKey unit) {
  for (int v = 1; v <= kMaxVariables; ++v)
    if (unit == unit_key(v)) return v;
  throw InvariantViolation("key is not a single variable");
}

std::string monomial_string(MonomialKey key, int nvars) {
  std::string s;
  for (int v = 1; v <= nvars; ++v) {
    const int e = exponent_of(key, v);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(v);
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::vector<RootId> multiset_difference(const std::vector<RootId>& a, const std::vector<RootId>& b) {
  std::vector<RootId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MPoly times_roots(const RootSystem& rs, MPoly p, std::span<const RootId> roots) {
  for (RootId r : roots) p = p.mul_linear(root_linear_form(rs, r));
  return p;
}

}  // namespace

int key_degree(MonomialKey key) {
  int d = 0;
  for (int v = 1; v <= kMaxVariables; ++v) d += exponent_of(key, v);
  return d;
}

// ---------------------------------------------------------------- MPoly

MPoly MPoly::constant(int num_vars, const Rat& c) {
  MPoly p(num_vars);
  if (c != 0) p.terms_.emplace_back(0, c);
  return p;
}

MPoly MPoly::variable(int num_vars, int i) {
  if (i < 1 || i > num_vars) throw InvalidArgument("variable index out of range");
  MPoly p(num_vars);
  p.terms_.emplace_back(unit_key(i), Rat(1));
  return p;
}

MPoly MPoly::linear(std::span<const int> coeffs) {
  if (coeffs.size() > kMaxVariables) throw InvalidArgument("too many variables");
  MPoly p(static_cast<int>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) p.terms_.emplace_back(unit_key(static_cast<int>(i) + 1), Rat(coeffs[i]));
  return p;  // keys decrease with the variable index
}

MPoly MPoly::from_terms(int num_vars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  MPoly p(num_vars);
  for (auto& t : terms) {
    t.second.canonicalize();
    if (!p.terms_.empty() && p.terms_.back().first == t.first)
      p.terms_.back().second += t.second;
    else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, key_degree(t.first));
  return d;
}

bool MPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = key_degree(terms_.front().first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return key_degree(t.first) == d; });
}

Rat MPoly::coefficient(MonomialKey key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, MonomialKey k) { return t.first > k; });
  return it != terms_.end() && it->first == key ? it->second : Rat(0);
}

Rat MPoly::evaluate(std::span<const Rat> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw InvalidArgument("evaluation point has wrong dimension");
  Rat total = 0;
  for (const auto& [key, c] : terms_) {
    Rat value = c;
    for (int v = 1; v <= nvars_; ++v)
      for (int e = exponent_of(key, v); e > 0; --e) value *= point[static_cast<std::size_t>(v - 1)];
    total += value;
  }
  return total;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MPoly MPoly::operator+(const MPoly& rhs) const {
  MPoly r(std::max(nvars_, rhs.nvars_));
  r.terms_.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin(), b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->first > b->first)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first > a->first) {
      r.terms_.push_back(*b++);
    } else {
      Rat s = a->second + b->second;
      if (s != 0) r.terms_.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  return r;
}

MPoly MPoly::operator-(const MPoly& rhs) const { return *this + (-rhs); }

MPoly MPoly::operator*(const Rat& c) const {
  if (c == 0) return MPoly(nvars_);
  MPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MPoly MPoly::operator*(const MPoly& rhs) const {
  const int n = std::max(nvars_, rhs.nvars_);
  if (is_zero() || rhs.is_zero()) return MPoly(n);
  if (rhs.is_constant()) {
    MPoly r = *this * rhs.terms_[0].second;
    r.nvars_ = n;
    return r;
  }
  if (is_constant()) {
    MPoly r = rhs * terms_[0].second;
    r.nvars_ = n;
    return r;
  }
  if (is_linear_form(rhs)) {
    MPoly r = mul_linear(rhs);
    r.nvars_ = n;
    return r;
  }
  if (is_linear_form(*this)) {
    MPoly r = rhs.mul_linear(*this);
    r.nvars_ = n;
    return r;
  }
  if (degree() + rhs.degree() > 255) throw BudgetExceeded("polynomial degree exceeds 255");
  std::unordered_map<MonomialKey, Rat> acc;
  acc.reserve(terms_.size() * rhs.terms_.size());
  Rat tmp;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : rhs.terms_) {
      mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      acc[ka + kb] += tmp;
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != 0) terms.emplace_back(k, std::move(c));
  return from_terms(n, std::move(terms));
}

MPoly MPoly::mul_linear(const MPoly& form) const {
  const int n = std::max(nvars_, form.nvars_);
  if (form.is_zero()) return MPoly(n);
  if (!is_linear_form(form)) throw InvalidArgument("mul_linear needs a homogeneous linear form");
  if (is_zero()) return MPoly(n);
  if (degree() >= 255) throw BudgetExceeded("polynomial degree exceeds 255");

  const std::size_t k = form.terms_.size();
  const std::size_t size = terms_.size();
  std::vector<std::size_t> cursor(k, 0);
  MPoly r(n);
  r.terms_.reserve(size + size / 2 + 8);

  // Shifted copies of `terms_` stay sorted, so a k-way merge produces the
  // product in order.
  const bool integral = all_integer(terms_) && all_integer(form.terms_);
  mpz_class acc_z;
  Rat acc_q, tmp_q;
  for (;;) {
    MonomialKey best = 0;
    bool any = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (cursor[j] == size) continue;
      const MonomialKey key = terms_[cursor[j]].first + form.terms_[j].first;
      if (!any || key > best) {
        best = key;
        any = true;
      }
    }
    if (!any) break;
    if (integral) {
      acc_z = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (cursor[j] == size || terms_[cursor[j]].first + form.terms_[j].first != best) continue;
        mpz_addmul(acc_z.get_mpz_t(), form.terms_[j].second.get_num_mpz_t(),
                   terms_[cursor[j]].second.get_num_mpz_t());
        ++cursor[j];
      }
      if (acc_z != 0) r.terms_.emplace_back(best, Rat(acc_z));
    } else {
      acc_q = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (cursor[j] == size || terms_[cursor[j]].first + form.terms_[j].first != best) continue;
        mpq_mul(tmp_q.get_mpq_t(), form.terms_[j].second.get_mpq_t(), terms_[cursor[j]].second.get_mpq_t());
        acc_q += tmp_q;
        ++cursor[j];
      }
      if (acc_q != 0) r.terms_.emplace_back(best, acc_q);
    }
  }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    const bool negative = c < 0;
    const Rat magnitude = negative ? Rat(-c) : c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    const std::string mono = monomial_string(key, nvars_);
    if (mono.empty())
      out << magnitude.get_str();
    else if (magnitude == 1)
      out << mono;
    else
      out << magnitude.get_str() << '*' << mono;
  }
  return out.str();
}

LinearDivision divide_by_linear(const MPoly& p, const MPoly& form) {
  if (!is_linear_form(form)) throw InvalidArgument("divisor is not a nonzero linear form without constant term");
  const int n = std::max(p.num_vars(), form.num_vars());

  // form = a * x_lead + rest, where x_lead is the lowest-index variable.
  const auto& lead_term = form.terms().front();
  const int lead = variable_of(lead_term.first);
  const Rat inv_a = 1 / lead_term.second;
  const MPoly rest = MPoly::from_terms(n, {form.terms().begin() + 1, form.terms().end()});

  // Slice p by the exponent of x_lead: p = sum_e slice[e] x_lead^e.
  std::vector<std::vector<MPoly::Term>> slices;
  for (const auto& [key, c] : p.terms()) {
    const auto e = static_cast<std::size_t>(exponent_of(key, lead));
    if (slices.size() <= e) slices.resize(e + 1);
    slices[e].emplace_back(key - e * unit_key(lead), c);
  }
  if (slices.empty()) return {MPoly(n), MPoly(n)};

  const std::size_t top = slices.size() - 1;
  std::vector<MPoly> quotient(top);
  MPoly carry(n);  // rest * Q_e from the previous step
  for (std::size_t e = top; e >= 1; --e) {
    MPoly current = MPoly::from_terms(n, std::move(slices[e])) - carry;
    quotient[e - 1] = current * inv_a;
    carry = rest.is_zero() || quotient[e - 1].is_zero() ? MPoly(n) : quotient[e - 1].mul_linear(rest);
  }
  MPoly remainder = MPoly::from_terms(n, std::move(slices[0])) - carry;

  std::vector<MPoly::Term> q_terms;
  for (std::size_t e = 0; e < top; ++e)
    for (const auto& [key, c] : quotient[e].terms()) q_terms.emplace_back(key + e * unit_key(lead), c);
  return {MPoly::from_terms(n, std::move(q_terms)), std::move(remainder)};
}

MPoly root_linear_form(const RootSystem& rs, RootId beta) { return MPoly::linear(rs.root(beta).b); }

MPoly weyl_act(const WeylElt& w, const MPoly& p) {
  const RootSystem& rs = w.system();
  if (p.num_vars() > rs.rank()) throw InvalidArgument("polynomial has more variables than the rank");
  std::vector<MPoly> images;
  for (int i = 1; i <= rs.rank(); ++i) images.push_back(root_linear_form(rs, w(rs.simple(i))));
  MPoly result(rs.rank());
  for (const auto& [key, c] : p.terms()) {
    MPoly term = MPoly::constant(rs.rank(), c);
    for (int v = 1; v <= rs.rank(); ++v)
      for (int e = exponent_of(key, v); e > 0; --e) term = term.mul_linear(images[static_cast<std::size_t>(v - 1)]);
    result += term;
  }
  return result;
}

MPoly embed_variables(const MPoly& p, int num_vars, int offset) {
  if (offset < 0 || p.num_vars() + offset > num_vars || num_vars > kMaxVariables)
    throw InvalidArgument("variable embedding out of range");
  std::vector<MPoly::Term> terms;
  for (const auto& [key, c] : p.terms()) terms.emplace_back(key >> (8 * offset), c);
  return MPoly::from_terms(num_vars, std::move(terms));
}

// ---------------------------------------------------------------- RatFn

RatFn::RatFn(const RootSystem& rs, MPoly num, std::vector<RootId> den) : sys_(&rs), num_(std::move(num)) {
  bool flip = false;
  for (auto& r : den) {
    if (!rs.is_positive(r)) {
      r = rs.negate(r);
      flip = !flip;
    }
  }
  if (flip) num_ = -num_;
  std::sort(den.begin(), den.end());
  den_ = std::move(den);
  normalize();
}

RatFn RatFn::constant(const RootSystem& rs, const Rat& c) {
  RatFn f(rs);
  f.num_ = MPoly::constant(rs.rank(), c);
  return f;
}

RatFn RatFn::inverse_root(const RootSystem& rs, RootId beta) {
  return RatFn(rs, MPoly::constant(rs.rank(), 1), {beta});
}

void RatFn::check_same(const RatFn& rhs) const {
  if (sys_ != rhs.sys_) throw InvalidArgument("rational functions over different root systems");
}

void RatFn::normalize() {
  std::vector<RootId> distinct = den_;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  normalize_in_order(distinct);
}

void RatFn::normalize_in_order(std::span<const RootId> visit_order) {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (RootId r : visit_order) {
    for (;;) {
      auto it = std::lower_bound(den_.begin(), den_.end(), r);
      if (it == den_.end() || *it != r) break;
      auto division = divide_by_linear(num_, root_linear_form(*sys_, r));
      if (!division.remainder.is_zero()) break;
      num_ = std::move(division.quotient);
      den_.erase(it);
    }
  }
}

RatFn RatFn::operator-() const {
  RatFn f = *this;
  f.num_ = -f.num_;
  return f;
}

RatFn RatFn::operator+(const RatFn& rhs) const {
  check_same(rhs);
  if (rhs.is_zero()) return *this;
  if (is_zero()) return rhs;
  RatFn f(*sys_);
  if (den_ == rhs.den_) {
    f.num_ = num_ + rhs.num_;
    f.den_ = den_;
  } else {
    std::set_union(den_.begin(), den_.end(), rhs.den_.begin(), rhs.den_.end(), std::back_inserter(f.den_));
    f.num_ = times_roots(*sys_, num_, multiset_difference(f.den_, den_)) +
             times_roots(*sys_, rhs.num_, multiset_difference(f.den_, rhs.den_));
  }
  f.normalize();
  return f;
}

RatFn RatFn::operator*(const RatFn& rhs) const {
  check_same(rhs);
  if (is_zero() || rhs.is_zero()) return RatFn(*sys_);
  RatFn f(*sys_);
  f.num_ = num_ * rhs.num_;
  std::merge(den_.begin(), den_.end(), rhs.den_.begin(), rhs.den_.end(), std::back_inserter(f.den_));
  f.normalize();
  return f;
}

RatFn RatFn::operator*(const Rat& c) const {
  if (c == 0) return RatFn(*sys_);
  RatFn f = *this;
  f.num_ = f.num_ * c;
  return f;
}

RatFn RatFn::operator/(const RatFn& rhs) const {
  check_same(rhs);
  if (rhs.is_zero()) throw InvalidArgument("division by the zero rational function");
  MPoly rest = rhs.num_;
  std::vector<RootId> factors;
  for (RootId r = 0; r < sys_->num_positive() && !rest.is_constant(); ++r) {
    const MPoly form = root_linear_form(*sys_, r);
    for (;;) {
      auto division = divide_by_linear(rest, form);
      if (!division.remainder.is_zero()) break;
      rest = std::move(division.quotient);
      factors.push_back(r);
    }
  }
  if (!rest.is_constant()) throw InvalidArgument("divisor numerator is not a product of roots");
  MPoly num = times_roots(*sys_, num_, rhs.den_) * (1 / rest.terms()[0].second);
  std::vector<RootId> den = den_;
  den.insert(den.end(), factors.begin(), factors.end());
  return RatFn(*sys_, std::move(num), std::move(den));
}

RatFn RatFn::divided_by_root(RootId beta) const {
  if (is_zero()) return *this;
  RatFn f = *this;
  if (!sys_->is_positive(beta)) {
    beta = sys_->negate(beta);
    f.num_ = -f.num_;
  }
  // Only the new factor can cancel: the old ones were already coprime.
  auto division = divide_by_linear(f.num_, root_linear_form(*sys_, beta));
  if (division.remainder.is_zero()) {
    f.num_ = std::move(division.quotient);
  } else {
    f.den_.insert(std::upper_bound(f.den_.begin(), f.den_.end(), beta), beta);
  }
  return f;
}

std::string RatFn::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::string s = num_.size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  s += " / ";
  for (RootId r : den_) s += "(" + root_linear_form(*sys_, r).to_string() + ")";
  return s;
}

RatFn weyl_act(const WeylElt& w, const RatFn& f) {
  const RootSystem& rs = f.system();
  if (&w.system() != &rs) throw InvalidArgument("Weyl element and rational function use different systems");
  std::vector<RootId> den;
  den.reserve(f.den().size());
  for (RootId r : f.den()) den.push_back(w(r));
  return RatFn(rs, weyl_act(w, f.num()), std::move(den));
}

}  // namespace ekk
