#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ekk/error.hpp"
#include "ekk/parallel.hpp"

namespace ekk::cli {

using json = nlohmann::ordered_json;

namespace {

struct IoFailure : Error {
  using Error::Error;
};

void write_text(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoFailure("cannot open " + path + " for writing");
  file << content;
  if (!file) throw IoFailure("write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoFailure("cannot read " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string join(const std::vector<int>& xs, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? sep : "") + std::to_string(xs[k]);
  return s;
}

std::string word_or_e(const Word& w) { return w.empty() ? "e" : word_to_string(w); }

json tri_state(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> tri_state(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

RootId root_from_b(const RootSystem& rs, const json& j) {
  const auto b = j.get<std::vector<int>>();
  const auto found = rs.find(b);
  if (!found) throw InvalidArgument("unknown root " + join(b, ","));
  return *found;
}

/// Options shared by several subcommands.
struct Common {
  std::string type;
  std::string order;
  bool order_given = false;
  std::string format;
  std::string output;
  unsigned workers = default_workers();
  std::size_t term_budget = NilHeckeConfig{}.term_budget;
};

SimpleOrder resolve_order(const RootSystem& rs, const Common& c) {
  if (!c.order_given) return named_order(rs, order_names(rs).front());
  if (c.order.empty()) throw InvalidArgument("empty order name");
  return named_order(rs, c.order);
}

// ---------------------------------------------------------------- gen-tables

std::string render_table(const RootSystem& rs, const SimpleOrder& order, const std::vector<FactorRow>& rows,
                         const std::string& format) {
  if (format == "csv") {
    std::string s = csv_header() + "\n";
    for (const auto& r : rows) s += row_to_csv(r) + "\n";
    return s;
  }
  if (format == "text") {
    std::string s;
    for (const auto& r : rows) {
      std::string eps;
      for (const auto& e : r.root.eps) eps += (eps.empty() ? "" : " ") + to_string(e);
      s += eps + " | " + b_string(r.root) + " | " + word_or_e(r.u_word) + (r.premise_ok ? "" : " | premise fails") +
           "\n";
    }
    return s;
  }
  json doc{{"type", rs.label()}, {"order", order.name}, {"sequence", order.sequence},
           {"distinguished", order.distinguished}, {"rows", json::array()}};
  for (const auto& r : rows) doc["rows"].push_back(row_to_json(r));
  return doc.dump(2) + "\n";
}

int cmd_gen_tables(const Common& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> types = c.type.empty() ? std::vector<std::string>{"E6", "E7", "E8"}
                                                  : std::vector<std::string>{c.type};
  const std::string ext = c.format == "csv" ? "csv" : c.format == "text" ? "txt" : "json";
  const std::filesystem::path dir = c.output.empty() ? "." : c.output;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string());

  bool premise_failure = false;
  for (const auto& type : types) {
    const RootSystem rs = parse_system(type);
    if (!rs.has_eps()) throw InvalidArgument("tables need an E-type system, got " + type);
    std::vector<SimpleOrder> orders;
    if (c.order_given) {
      orders.push_back(resolve_order(rs, c));
    } else if (rs.kind() == SystemKind::E6) {
      orders = {named_order(rs, "natural"), named_order(rs, "alt")};
    } else {
      orders = {named_order(rs, "standard")};
    }
    for (const auto& order : orders) {
      const auto rows = gen_table(rs, order, c.workers);
      const auto path = dir / (rs.label() + "_" + order.name + "." + ext);
      write_text(path.string(), render_table(rs, order, rows, c.format), out);
      out << rs.label() << " " << order.name << ": " << rows.size() << " rows -> " << path.string() << "\n";
      for (const auto& r : rows)
        if (!r.premise_ok) {
          premise_failure = true;
          err << rs.label() << " " << order.name << ": premise fails for " << b_string(r.root) << " ("
              << r.premise_note << ")\n";
        }
    }
  }
  return premise_failure ? kExitPremise : kExitOk;
}

// ---------------------------------------------------------------- kk

std::string factored_text(const RootSystem& rs, const KKResult& kk) {
  std::string s = kk.cofactor.size() > 1 ? "(" + kk.cofactor.to_string() + ")" : kk.cofactor.to_string();
  if (kk.linear_factors.empty()) return s;
  s += " * ";
  for (RootId r : kk.linear_factors) s += "(" + root_linear_form(rs, r).to_string() + ")";
  return s;
}

int cmd_kk(const Common& c, const std::string& word_text, bool factored, std::ostream& out) {
  const RootSystem rs = parse_system(c.type);
  const Word word = parse_word(word_text);
  const WeylElt w = evaluate_reduced(rs, word);
  NilHeckeConfig config;
  config.term_budget = c.term_budget;
  NilHecke engine(rs, config);
  const KKResult kk = engine.kk_poly(w, !factored);
  const std::string d = factored ? factored_text(rs, kk) : kk.d_w->to_string();

  std::string text;
  if (c.format == "json") {
    json doc{{"type", rs.label()}, {"w", word},       {"length", w.length()}, {"c_w", kk.c_w.to_string()},
             {"d_w", d},           {"factored", factored}, {"terms", kk.term_count}};
    text = doc.dump(2) + "\n";
  } else {
    text = "w: " + word_or_e(word) + "\nlength: " + std::to_string(w.length()) + "\nc_w: " + kk.c_w.to_string() +
           "\nd_w: " + d + "\n";
  }
  write_text(c.output, text, out);
  return kExitOk;
}

// ---------------------------------------------------------------- good-pairs

int cmd_recheck(const Common& c, const std::string& path, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& e) {
    err << "malformed certificate file: " << e.what() << "\n";
    return kExitData;
  }
  const std::string type = c.type.empty() ? doc.value("type", std::string("E6")) : c.type;
  const RootSystem rs = parse_system(type);
  Common with_order = c;
  if (!c.order_given && doc.contains("order")) {
    with_order.order = doc["order"].get<std::string>();
    with_order.order_given = true;
  }
  const SimpleOrder order = resolve_order(rs, with_order);
  ComputeCaps caps;
  caps.max_len = doc.value("compute_len", caps.max_len);
  caps.expand = doc.value("expand", caps.expand);
  NilHeckeConfig config;
  config.term_budget = c.term_budget;
  NilHecke engine(rs, config);

  std::size_t checked = 0, bad = 0;
  try {
    for (const auto& j : doc.at("certificates")) {
      const auto cert = certificate_from_json(rs, j);
      const auto problems = recheck(cert, order, engine, caps);
      ++checked;
      if (!problems.empty()) ++bad;
      for (const auto& p : problems) err << p << "\n";
    }
  } catch (const json::exception& e) {
    err << "malformed certificate: " << e.what() << "\n";
    return kExitData;
  }
  out << "rechecked " << checked << " certificates, " << bad << " invalid\n";
  return bad ? kExitProperty : kExitOk;
}

int cmd_good_pairs(const Common& c, int max_len, int compute_len, bool no_expand, std::ostream& out,
                   std::ostream& err) {
  const RootSystem rs = parse_system(c.type.empty() ? "E6" : c.type);
  const SimpleOrder order = resolve_order(rs, c);
  ComputeCaps caps;
  caps.max_len = compute_len < 0 ? max_len : compute_len;
  caps.expand = !no_expand;
  NilHeckeConfig config;
  config.term_budget = c.term_budget;
  NilHecke engine(rs, config);
  const auto certs = scan_good_pairs(rs, order, max_len, engine, caps, c.workers);

  std::string text;
  if (c.format == "text") {
    for (const auto& cert : certs) {
      const auto j = certificate_to_json(cert);
      text += word_or_e(cert.w1.reduced_word()) + " | " + word_or_e(cert.w2.reduced_word()) + " | " +
              b_string(rs.root(cert.beta1)) + " " + b_string(rs.root(cert.beta2)) + " | " +
              j["direction"].get<std::string>() + " | " +
              (cert.direct_inequality ? (*cert.direct_inequality ? "d differ" : "d EQUAL") : "symbolic") + "\n";
    }
  } else if (c.format == "csv") {
    text = "w1,w2,beta1,beta2,direction,witness,computed,direct_inequality\n";
    for (const auto& cert : certs) {
      const auto j = certificate_to_json(cert);
      text += word_to_string(cert.w1.reduced_word()) + "," + word_to_string(cert.w2.reduced_word()) + "," +
              b_string(rs.root(cert.beta1)) + "," + b_string(rs.root(cert.beta2)) + "," +
              j["direction"].get<std::string>() + "," + b_string(rs.root(cert.witness)) + "," +
              (cert.computed ? "true" : "false") + "," + j["direct_inequality"].dump() + "\n";
    }
  } else {
    json doc{{"type", rs.label()},      {"order", order.name},  {"max_len", max_len},
             {"compute_len", caps.max_len}, {"expand", caps.expand}, {"count", certs.size()},
             {"certificates", json::array()}};
    for (const auto& cert : certs) doc["certificates"].push_back(certificate_to_json(cert));
    text = doc.dump(2) + "\n";
  }
  write_text(c.output, text, out);

  for (const auto& cert : certs)
    if (!cert.consistent()) {
      err << "contradiction: " << certificate_to_json(cert).dump() << "\n";
      return kExitProperty;
    }
  err << certs.size() << " good pairs\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Common& c, const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const RootSystem rs = parse_system(c.type.empty() ? "A3" : c.type);
  VerifyOptions opts = options;
  opts.workers = c.workers;
  const auto tallies = verify_suite(rs, opts);

  std::string text;
  const PropertyTally* failure = nullptr;
  json doc{{"type", rs.label()}, {"max_len", opts.max_len}, {"properties", json::array()}};
  for (const auto& t : tallies) {
    if (t.failed && !failure) failure = &t;
    if (!t.applicable) {
      text += t.name + ": n/a\n";
      doc["properties"].push_back({{"name", t.name}, {"applicable", false}});
      continue;
    }
    text += t.name + ": pass=" + std::to_string(t.passed) + " fail=" + std::to_string(t.failed) + "\n";
    doc["properties"].push_back({{"name", t.name}, {"passed", t.passed}, {"failed", t.failed}});
  }
  write_text(c.output, c.format == "json" ? doc.dump(2) + "\n" : text, out);
  if (failure) {
    err << "first failure: " << json{{"property", failure->name}, {"instance", failure->first_failure}}.dump()
        << "\n";
    return kExitProperty;
  }
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------- serialisation

Word parse_word(const std::string& text) {
  Word word;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw InvalidArgument("bad letter '" + token + "' in word");
    word.push_back(value);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ' ' || ch == ',' || ch == '\t') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return word;
}

json row_to_json(const FactorRow& row) {
  json eps = json::array();
  for (const auto& e : row.root.eps) eps.push_back(to_string(e));
  return json{{"eps", eps},
              {"b", row.root.b},
              {"u_word", row.u_word},
              {"u_len", row.u.length()},
              {"premise_ok", row.premise_ok}};
}

std::string csv_header() { return "eps,b,u_word,u_len,premise_ok"; }

std::string row_to_csv(const FactorRow& row) {
  std::string eps;
  for (const auto& e : row.root.eps) eps += (eps.empty() ? "" : " ") + to_string(e);
  return eps + "," + b_string(row.root) + "," + word_to_string(row.u_word) + "," + std::to_string(row.u.length()) +
         "," + (row.premise_ok ? "true" : "false");
}

json certificate_to_json(const GoodPairCertificate& cert) {
  const RootSystem& rs = cert.w1.system();
  const bool first = cert.direction == PairDirection::Beta1NotBelowW2;
  return json{{"w1", cert.w1.reduced_word()},
              {"w2", cert.w2.reduced_word()},
              {"beta1", rs.root(cert.beta1).b},
              {"beta2", rs.root(cert.beta2).b},
              {"beta1_not_below_w2", cert.beta1_not_below_w2},
              {"beta2_not_below_w1", cert.beta2_not_below_w1},
              {"direction", first ? "beta1_not_below_w2" : "beta2_not_below_w1"},
              {"witness", rs.root(cert.witness).b},
              {"witness_divides", cert.divides == 2 ? "d_w2" : "d_w1"},
              {"computed", cert.computed},
              {"witness_divides_own", tri_state(cert.witness_divides_own)},
              {"witness_divides_other", tri_state(cert.witness_divides_other)},
              {"c_differs", tri_state(cert.c_differs)},
              {"direct_inequality", tri_state(cert.direct_inequality)},
              {"note", cert.note}};
}

GoodPairCertificate certificate_from_json(const RootSystem& rs, const json& j) {
  try {
    const Word word1 = j.at("w1").get<Word>();
    const Word word2 = j.at("w2").get<Word>();
    GoodPairCertificate cert{evaluate_reduced(rs, word1), evaluate_reduced(rs, word2), root_from_b(rs, j.at("beta1")),
                             root_from_b(rs, j.at("beta2"))};
    cert.beta1_not_below_w2 = j.at("beta1_not_below_w2").get<bool>();
    cert.beta2_not_below_w1 = j.at("beta2_not_below_w1").get<bool>();
    const auto direction = j.at("direction").get<std::string>();
    if (direction == "beta1_not_below_w2") {
      cert.direction = PairDirection::Beta1NotBelowW2;
    } else if (direction == "beta2_not_below_w1") {
      cert.direction = PairDirection::Beta2NotBelowW1;
    } else {
      throw InvalidArgument("unknown direction '" + direction + "'");
    }
    cert.witness = root_from_b(rs, j.at("witness"));
    cert.divides = j.at("witness_divides").get<std::string>() == "d_w1" ? 1 : 2;
    cert.computed = j.at("computed").get<bool>();
    cert.witness_divides_own = tri_state(j.at("witness_divides_own"));
    cert.witness_divides_other = tri_state(j.at("witness_divides_other"));
    cert.c_differs = tri_state(j.at("c_differs"));
    cert.direct_inequality = tri_state(j.at("direct_inequality"));
    cert.note = j.value("note", std::string());
    return cert;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate: ") + e.what());
  }
}

// ---------------------------------------------------------------- driver

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Kostant-Kumar polynomials and good pairs of involutions in Weyl groups", "ekk"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_order) {
    sub->add_option("--type", common.type, "Root system: E6, E7, E8, An, Dn or sums such as A2+A1");
    if (with_order)
      sub->add_option("--order", common.order, "Named order of the simple roots")->each([&](const std::string&) {
        common.order_given = true;
      });
    sub->add_option("--output,-o", common.output, "Output path");
    sub->add_option("--workers", common.workers, "Worker threads (default: EKK_WORKERS or hardware)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--term-budget", common.term_budget, "Largest expansion allowed, in terms")
        ->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen-tables", "Write the parabolic factorisation tables");
  add_common(gen, true);
  std::string gen_format, kk_format, pairs_format, verify_format;
  gen->add_option("--format", gen_format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->default_val("json");

  auto* kk = app.add_subcommand("kk", "Print c_w and d_w for a reduced word");
  add_common(kk, false);
  std::string word_text;
  bool factored = false;
  kk->add_option("--word,word", word_text, "Reduced word, e.g. \"1 2 1\"");
  kk->add_flag("--factored", factored, "Print d_w as cofactor times linear factors");
  kk->add_option("--format", kk_format, "text or json")->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* pairs = app.add_subcommand("good-pairs", "Scan and certify good pairs of involutions");
  add_common(pairs, true);
  int max_len = 3, compute_len = -1;
  bool no_expand = false;
  std::string recheck_path;
  pairs->add_option("--max-len", max_len, "Longest involution scanned")->check(CLI::NonNegativeNumber);
  pairs->add_option("--compute-len", compute_len, "Longest involution whose d_w is computed (default: max-len)");
  pairs->add_flag("--no-expand", no_expand, "Skip the expanded comparison of d_w");
  pairs->add_option("--recheck", recheck_path, "Re-validate a certificate file instead of scanning");
  pairs->add_option("--format", pairs_format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->default_val("json");

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  add_common(verify, false);
  VerifyOptions vopts;
  verify->add_option("--max-len", vopts.max_len, "Longest element checked")->check(CLI::NonNegativeNumber);
  verify->add_option("--bruteforce-cap", vopts.bruteforce_cap, "Longest word given to the 2^l oracle")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--pair-limit", vopts.pair_limit, "Cap on pair-based checks");
  verify->add_option("--format", verify_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kExitUsage;
  }

  common.format = gen->parsed() ? gen_format : kk->parsed() ? kk_format : pairs->parsed() ? pairs_format : verify_format;
  try {
    if (gen->parsed()) return cmd_gen_tables(common, out, err);
    if (kk->parsed()) {
      if (common.type.empty()) throw InvalidArgument("--type is required");
      return cmd_kk(common, word_text, factored, out);
    }
    if (pairs->parsed())
      return recheck_path.empty() ? cmd_good_pairs(common, max_len, compute_len, no_expand, out, err)
                                  : cmd_recheck(common, recheck_path, out, err);
    if (verify->parsed()) return cmd_verify(common, vopts, out, err);
  } catch (const NotReduced& e) {
    err << e.what() << "\n";
    return kExitData;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return kExitUnavailable;
  } catch (const IoFailure& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ekk::cli
