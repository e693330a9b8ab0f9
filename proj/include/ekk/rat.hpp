#pragma once

#include <gmpxx.h>

#include <string>

namespace ekk {

/// Exact rational number. GMP keeps it canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rat = mpq_class;

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(Rat r) {
  r.canonicalize();
  return r.get_str();
}

inline Rat parse_rat(const std::string& s) {
  Rat r(s, 10);
  r.canonicalize();
  return r;
}

}  // namespace ekk
