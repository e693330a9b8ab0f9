#include "ekk/weyl.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ekk/error.hpp"

namespace ekk {

namespace {

std::size_t hash_images(const std::vector<std::uint16_t>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace

WeylElt::WeylElt(const RootSystem* sys, std::vector<std::uint16_t> image)
    : sys_(sys), image_(std::move(image)) {
  const auto n = static_cast<std::uint16_t>(sys_->num_positive());
  length_ = static_cast<int>(std::count_if(image_.begin(), image_.end(), [n](std::uint16_t r) { return r >= n; }));
}

WeylElt WeylElt::identity(const RootSystem& rs) {
  std::vector<std::uint16_t> image(static_cast<std::size_t>(rs.num_positive()));
  for (std::size_t k = 0; k < image.size(); ++k) image[k] = static_cast<std::uint16_t>(k);
  return WeylElt(&rs, std::move(image));
}

WeylElt WeylElt::simple_reflection(const RootSystem& rs, int i) {
  if (i < 1 || i > rs.rank()) throw InvalidArgument("simple reflection index out of range");
  std::vector<std::uint16_t> image(static_cast<std::size_t>(rs.num_positive()));
  for (std::size_t k = 0; k < image.size(); ++k)
    image[k] = static_cast<std::uint16_t>(rs.simple_image(i, static_cast<RootId>(k)));
  return WeylElt(&rs, std::move(image));
}

WeylElt WeylElt::reflection(const RootSystem& rs, RootId beta) {
  std::vector<std::uint16_t> image(static_cast<std::size_t>(rs.num_positive()));
  for (std::size_t k = 0; k < image.size(); ++k)
    image[k] = static_cast<std::uint16_t>(rs.reflect(beta, static_cast<RootId>(k)));
  return WeylElt(&rs, std::move(image));
}

WeylElt WeylElt::from_word(const RootSystem& rs, std::span<const int> word) {
  WeylElt w = identity(rs);
  for (int i : word) w = w.times_simple(i);
  return w;
}

WeylElt WeylElt::operator*(const WeylElt& rhs) const {
  if (sys_ != rhs.sys_) throw InvalidArgument("multiplying elements of different Weyl groups");
  std::vector<std::uint16_t> image(image_.size());
  for (std::size_t k = 0; k < image.size(); ++k) image[k] = static_cast<std::uint16_t>((*this)(rhs.image_[k]));
  return WeylElt(sys_, std::move(image));
}

WeylElt WeylElt::inverse() const {
  const int n = sys_->num_positive();
  std::vector<std::uint16_t> image(image_.size());
  for (int k = 0; k < n; ++k) {
    const int j = image_[static_cast<std::size_t>(k)];
    if (j < n)
      image[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(k);
    else
      image[static_cast<std::size_t>(j - n)] = static_cast<std::uint16_t>(k + n);
  }
  return WeylElt(sys_, std::move(image));
}

WeylElt WeylElt::times_simple(int i) const {
  if (i < 1 || i > sys_->rank()) throw InvalidArgument("simple reflection index out of range");
  std::vector<std::uint16_t> image(image_.size());
  for (std::size_t k = 0; k < image.size(); ++k)
    image[k] = static_cast<std::uint16_t>((*this)(sys_->simple_image(i, static_cast<RootId>(k))));
  return WeylElt(sys_, std::move(image));
}

WeylElt WeylElt::simple_times(int i) const {
  if (i < 1 || i > sys_->rank()) throw InvalidArgument("simple reflection index out of range");
  std::vector<std::uint16_t> image(image_.size());
  for (std::size_t k = 0; k < image.size(); ++k) image[k] = static_cast<std::uint16_t>(sys_->simple_image(i, image_[k]));
  return WeylElt(sys_, std::move(image));
}

bool WeylElt::is_involution() const { return (*this * *this).is_identity(); }

bool WeylElt::has_left_descent(int i) const {
  // w^{-1}(alpha_i) < 0 iff some positive root is sent to -alpha_i.
  const auto target = static_cast<std::uint16_t>(sys_->negate(sys_->simple(i)));
  return std::find(image_.begin(), image_.end(), target) != image_.end();
}

Word WeylElt::reduced_word() const {
  Word word;
  word.reserve(static_cast<std::size_t>(length_));
  WeylElt w = *this;
  while (!w.is_identity()) {
    int i = 1;
    while (!w.has_left_descent(i)) ++i;
    word.push_back(i);
    w = w.simple_times(i);
  }
  return word;
}

std::size_t WeylElt::hash() const { return hash_images(image_); }

bool canonical_less(const WeylElt& a, const WeylElt& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.reduced_word() < b.reduced_word();
}

WeylElt evaluate_reduced(const RootSystem& rs, std::span<const int> word) {
  WeylElt w = WeylElt::identity(rs);
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k] < 1 || word[k] > rs.rank()) throw InvalidArgument("simple reflection index out of range");
    if (w.has_right_descent(word[k])) throw NotReduced(word_to_string(word.first(k + 1)));
    w = w.times_simple(word[k]);
  }
  return w;
}

std::string word_to_string(std::span<const int> word) {
  std::ostringstream out;
  for (std::size_t k = 0; k < word.size(); ++k) out << (k ? " " : "") << word[k];
  return out.str();
}

std::size_t BruhatOrder::KeyHash::operator()(const std::vector<std::uint16_t>& k) const { return hash_images(k); }

bool BruhatOrder::leq(const WeylElt& v, const WeylElt& w) {
  if (&v.system() != &w.system()) throw InvalidArgument("Bruhat comparison across different Weyl groups");
  return compute(v, w);
}

bool BruhatOrder::compute(const WeylElt& v, const WeylElt& w) {
  if (v.length() > w.length()) return false;
  if (v.is_identity()) return true;
  if (v.length() == w.length()) return v == w;

  std::vector<std::uint16_t> key(v.images());
  key.insert(key.end(), w.images().begin(), w.images().end());
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  int s = 1;
  while (!w.has_right_descent(s)) ++s;
  const WeylElt ws = w.times_simple(s);
  const bool result = v.has_right_descent(s) ? compute(v.times_simple(s), ws) : compute(v, ws);

  std::unique_lock lock(mutex_);
  memo_.emplace(std::move(key), result);
  return result;
}

std::size_t BruhatOrder::memo_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

bool bruhat_leq(const WeylElt& v, const WeylElt& w) {
  if (&v.system() != &w.system()) throw InvalidArgument("Bruhat comparison across different Weyl groups");
  if (v.length() > w.length()) return false;
  if (v.is_identity()) return true;
  if (v.length() == w.length()) return v == w;
  int s = 1;
  while (!w.has_right_descent(s)) ++s;
  const WeylElt ws = w.times_simple(s);
  return v.has_right_descent(s) ? bruhat_leq(v.times_simple(s), ws) : bruhat_leq(v, ws);
}

WeylSet lower_interval(const WeylElt& w) {
  WeylSet interval{WeylElt::identity(w.system())};
  for (int i : w.reduced_word()) {
    std::vector<WeylElt> grown;
    grown.reserve(interval.size());
    for (const auto& x : interval) grown.push_back(x.times_simple(i));
    interval.insert(grown.begin(), grown.end());
  }
  return interval;
}

ParabolicFactor parabolic_factorize(const WeylElt& w, std::span<const int> subset) {
  const RootSystem& rs = w.system();
  for (int i : subset)
    if (i < 1 || i > rs.rank()) throw InvalidArgument("parabolic subset index out of range");
  WeylElt u = w;
  WeylElt v = WeylElt::identity(rs);
  for (bool moved = true; moved;) {
    moved = false;
    for (int i : subset) {
      if (u.has_right_descent(i)) {
        u = u.times_simple(i);
        v = v.simple_times(i);
        moved = true;
        break;
      }
    }
  }
  return {std::move(u), std::move(v)};
}

std::vector<RootId> support(const WeylElt& w, const SimpleOrder& order) {
  const RootSystem& rs = w.system();
  validate_order(rs, order);
  if (!w.is_involution()) throw InvalidArgument("support requires an involution");
  std::vector<RootId> result;
  WeylElt current = w;
  while (!current.is_identity()) {
    std::optional<RootId> best;
    for (RootId beta = 0; beta < rs.num_positive(); ++beta) {
      if (current(beta) != rs.negate(beta)) continue;
      if (!best || lex_compare(order, rs.root(beta), rs.root(*best)) == Ordering::Greater) best = beta;
    }
    if (!best) throw InvariantViolation("involution with no negated root");
    result.push_back(*best);
    current = WeylElt::reflection(rs, *best) * current;
    if (static_cast<int>(result.size()) > rs.rank()) throw InvariantViolation("support extraction did not terminate");
  }
  return result;
}

std::vector<WeylElt> enumerate_elements(const RootSystem& rs, int max_len) {
  std::vector<WeylElt> all;
  std::vector<WeylElt> layer{WeylElt::identity(rs)};
  for (int len = 0; len <= max_len && !layer.empty(); ++len) {
    std::sort(layer.begin(), layer.end(), canonical_less);
    all.insert(all.end(), layer.begin(), layer.end());
    if (len == max_len) break;
    WeylSet next;
    for (const auto& w : layer)
      for (int i = 1; i <= rs.rank(); ++i)
        if (!w.has_right_descent(i)) next.insert(w.times_simple(i));
    layer.assign(next.begin(), next.end());
  }
  return all;
}

std::vector<WeylElt> enumerate_involutions(const RootSystem& rs, int max_len) {
  std::vector<WeylElt> result;
  for (auto& w : enumerate_elements(rs, max_len))
    if (w.is_involution()) result.push_back(std::move(w));
  return result;
}

}  // namespace ekk
