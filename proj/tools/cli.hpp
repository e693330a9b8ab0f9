#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ekk/analysis.hpp"

namespace ekk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitPremise = 2;
inline constexpr int kExitProperty = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitUnavailable = 69;

/// Runs one command line (args[0] is the program name). Normal output goes
/// to `out`, diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1 2 1", "1,2,1" or "" (the identity).
Word parse_word(const std::string& text);

nlohmann::ordered_json row_to_json(const FactorRow& row);
std::string row_to_csv(const FactorRow& row);
std::string csv_header();

nlohmann::ordered_json certificate_to_json(const GoodPairCertificate& cert);
/// Inverse of certificate_to_json; throws InvalidArgument on malformed input.
GoodPairCertificate certificate_from_json(const RootSystem& rs, const nlohmann::ordered_json& j);

struct VerifyOptions {
  int max_len = 6;
  int bruteforce_cap = 8;
  std::size_t pair_limit = 5000;
  unsigned workers = 1;
};

struct PropertyTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool applicable = true;
  nlohmann::ordered_json first_failure;  // null when nothing failed
};

/// Runs the property suite on every instance within the caps.
std::vector<PropertyTally> verify_suite(const RootSystem& rs, const VerifyOptions& options);

}  // namespace ekk::cli
