#pragma once

// Slow, independent reference implementations used only by the tests.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ekk/nilhecke.hpp"
#include "ekk/rootsys.hpp"
#include "ekk/weyl.hpp"

namespace ekk::oracle {

/// Products of all subwords of a reduced word of w: exactly the interval [id, w].
inline WeylSet subword_products(const WeylElt& w) {
  const Word word = w.reduced_word();
  WeylSet out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << word.size()); ++mask) {
    WeylElt x = WeylElt::identity(w.system());
    for (std::size_t k = 0; k < word.size(); ++k)
      if (mask >> k & 1) x = x.times_simple(word[k]);
    out.insert(x);
  }
  return out;
}

inline bool subword_leq(const WeylElt& v, const WeylElt& w) { return subword_products(w).count(v) > 0; }

/// Literal lexicographic comparison of coefficient vectors in the given order.
inline bool lex_less(const SimpleOrder& order, const std::vector<int>& a, const std::vector<int>& b) {
  for (int i : order.sequence) {
    const auto k = static_cast<std::size_t>(i - 1);
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

/// Support by the literal stripping procedure, with w(beta) = -beta tested in
/// epsilon-coordinates via the reflection formula instead of root indices.
inline std::vector<std::vector<int>> support_b(const WeylElt& w, const SimpleOrder& order) {
  const RootSystem& rs = w.system();
  std::vector<std::vector<int>> result;
  WeylElt current = w;
  while (!current.is_identity()) {
    std::vector<int> best;
    RootId best_id = -1;
    for (RootId r = 0; r < rs.num_positive(); ++r) {
      if (current(r) != rs.negate(r)) continue;
      if (best_id < 0 || lex_less(order, best, rs.root(r).b)) {
        best = rs.root(r).b;
        best_id = r;
      }
    }
    if (best_id < 0) throw std::logic_error("no negated root");
    result.push_back(best);
    current = WeylElt::reflection(rs, best_id) * current;
  }
  return result;
}

/// x_{i_1} ... x_{i_l} by general ring multiplication of the generators.
inline NHElt x_by_ring_product(const RootSystem& rs, const Word& word) {
  NHElt x = NHElt::delta(WeylElt::identity(rs));
  for (int i : word) x = x * x_gen(rs, i);
  return x;
}

/// Dense polynomial as exponent vector -> coefficient.
using Dense = std::map<std::vector<int>, Rat>;

inline Dense to_dense(const MPoly& p) {
  Dense d;
  for (const auto& [key, c] : p.terms()) {
    std::vector<int> e(static_cast<std::size_t>(p.num_vars()));
    for (int v = 1; v <= p.num_vars(); ++v) e[static_cast<std::size_t>(v - 1)] = exponent_of(key, v);
    d[e] = c;
  }
  return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Dense dense_linear(const std::vector<int>& coeffs) {
  Dense d;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    std::vector<int> e(coeffs.size(), 0);
    e[k] = 1;
    d[e] = coeffs[k];
  }
  return d;
}

/// One row of the printed factorisation tables.
struct RefRow {
  std::string type;
  std::string order;
  std::vector<std::string> eps;
  std::string b;
  Word u_word;
};

inline std::vector<RefRow> load_reference_tables() {
  std::ifstream in(std::string(EKK_TEST_DATA_DIR) + "/reference_tables.txt");
  if (!in) throw std::runtime_error("reference_tables.txt not found");
  std::vector<RefRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '|')) fields.push_back(field);
    if (fields.size() != 4) throw std::runtime_error("bad reference line: " + line);
    RefRow row;
    std::istringstream head(fields[0]);
    head >> row.type >> row.order;
    std::istringstream eps(fields[1]);
    for (std::string e; eps >> e;) row.eps.push_back(e);
    std::istringstream b(fields[2]);
    b >> row.b;
    std::istringstream u(fields[3]);
    for (int i; u >> i;) row.u_word.push_back(i);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ekk::oracle
