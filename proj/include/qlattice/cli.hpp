#ifndef QLATTICE_CLI_HPP
#define QLATTICE_CLI_HPP

#include "qlattice/haction.hpp"
#include "qlattice/json_io.hpp"
#include "qlattice/parallel.hpp"
#include "qlattice/qcombinatorics.hpp"
#include "qlattice/scheme.hpp"
#include "qlattice/sjb.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qlattice::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  unsigned q = 2;
  unsigned n = 0;
  unsigned m = 0;
  std::string input_path;
  std::string output_path;
  VerifyMode verify = VerifyMode::full;
  bool oracle = false;
  unsigned threads = 0;
};

namespace detail {

inline const char* mode_name(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::full: return "full";
    case VerifyMode::spot: return "spot";
    case VerifyMode::none: return "none";
  }
  return "?";
}

inline void require_ambient_range(unsigned n) {
  if (n > kMaxAmbient) throw UnsupportedError("n must be at most " + std::to_string(kMaxAmbient));
}

inline void require_field(unsigned q) {
  require_prime(q);
  if (q > 255) throw UnsupportedError("q must be below 256");
}

inline void require_scheme_args(const RunConfig& c) {
  if (2 * c.m > c.n) throw ArgumentError("m must satisfy 0 <= m <= n/2 (got m=" + std::to_string(c.m) + ", n=" + std::to_string(c.n) + ")");
}

inline Json spectrum_json(const std::vector<std::pair<BigInt, BigInt>>& spectrum) {
  Json out = Json::array();
  for (const auto& [value, mult] : spectrum) out.push_back(Json{{"eigenvalue", to_json(value)}, {"multiplicity", to_json(mult)}});
  return out;
}

inline void summarize_failures(const Report& r, std::ostream& err) {
  for (const auto& c : r.checks()) {
    if (!c.passed) err << "  FAILED " << c.name << ": " << c.detail << "\n";
  }
}

inline void write_json(const Json& j, const RunConfig& c, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (c.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output_path, std::ios::binary);
  if (!file) throw ArgumentError("cannot open " + c.output_path + " for writing");
  file << text;
}

inline int cmd_construct(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_field(c.q);
  require_ambient_range(c.n);
  const SymmetricJordanBasis b = construct_sjb(c.n, c.q);
  Report report;
  if (c.verify != VerifyMode::none) report = verify_sjb(b, VerifyOptions{.mode = c.verify});
  write_json(to_json(b), c, out);
  err << "construct q=" << c.q << " n=" << c.n << ": " << b.vector_count() << " vectors in " << b.chains.size()
      << " chains; verification " << mode_name(c.verify);
  if (c.verify == VerifyMode::none) {
    err << " skipped\n";
    return kOk;
  }
  err << (report.passed() ? " passed\n" : " FAILED\n");
  summarize_failures(report, err);
  return report.passed() ? kOk : kFailed;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ifstream file(c.input_path, std::ios::binary);
  if (!file) throw ArgumentError("cannot read " + c.input_path);
  Json j;
  try {
    j = Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
  const SymmetricJordanBasis b = basis_from_json(j);
  const Report report = verify_sjb(b, VerifyOptions{.mode = c.verify == VerifyMode::none ? VerifyMode::full : c.verify});
  write_json(to_json(report), c, out);
  err << "verify " << c.input_path << " (q=" << b.q << " n=" << b.n << "): " << (report.passed() ? "passed\n" : "FAILED\n");
  summarize_failures(report, err);
  return report.passed() ? kOk : kFailed;
}

inline int cmd_decompose(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_field(c.q);
  if (c.n < 1 || c.n + 1 > kMaxAmbient) throw ArgumentError("decompose needs 1 <= n <= " + std::to_string(kMaxAmbient - 1));
  const Report report = verify_decomposition(c.n, c.q);
  Json j{{"q", c.q}, {"n", c.n}};
  j.update(to_json(report));
  write_json(j, c, out);
  err << "decompose q=" << c.q << " n=" << c.n << ": " << (report.passed() ? "passed\n" : "FAILED\n");
  summarize_failures(report, err);
  return report.passed() ? kOk : kFailed;
}

inline int cmd_scheme(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_field(c.q);
  require_ambient_range(c.n);
  require_scheme_args(c);
  const SymmetricJordanBasis b = construct_sjb(c.n, c.q);
  Report report = verify_sjb(b, VerifyOptions{.mode = c.verify == VerifyMode::none ? VerifyMode::spot : c.verify});
  const EigenTable table = eigentable(c.n, c.m, b);
  report.merge(table.report);

  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json values = Json::array();
    for (const auto& v : row.eigenvalues) values.push_back(to_json(v));
    rows.push_back(Json{{"start_rank", row.start_rank}, {"eigenvalues", std::move(values)}});
  }
  const auto spectrum = laplacian_spectrum(c.n, c.m, c.q);
  const auto from_table = laplacian_from_table(table);
  bool agree = from_table.size() == spectrum.size();
  for (std::size_t k = 0; agree && k < spectrum.size(); ++k) agree = from_table[k].second == spectrum[k].first;
  report.record("laplacian_matches_eigentable", agree, "D - lambda_1 differs from [k][n-k+1]");

  Json j{{"q", c.q}, {"n", c.n}, {"m", c.m}, {"eigentable", std::move(rows)}, {"laplacian_spectrum", spectrum_json(spectrum)}};
  j["passed"] = report.passed();
  j["checks"] = to_json(report)["checks"];
  write_json(j, c, out);
  err << "scheme q=" << c.q << " n=" << c.n << " m=" << c.m << ": " << table.rows.size() << " eigenvalue rows; "
      << (report.passed() ? "passed\n" : "FAILED\n");
  summarize_failures(report, err);
  return report.passed() ? kOk : kFailed;
}

inline int cmd_trees(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_field(c.q);
  require_ambient_range(c.n);
  require_scheme_args(c);
  const BigInt formula = rooted_tree_count(c.n, c.m, c.q);
  Json j{{"formula", formula.str()}, {"oracle", nullptr}, {"match", nullptr}};
  bool ok = true;
  if (c.oracle) {
    const BigInt oracle = matrix_tree_oracle(grassmann_graph(c.n, c.m, c.q));
    ok = oracle == formula;
    j["oracle"] = oracle.str();
    j["match"] = ok;
    err << "trees q=" << c.q << " n=" << c.n << " m=" << c.m << ": " << formula << (ok ? " = " : " != ") << oracle << "\n";
  } else {
    err << "trees q=" << c.q << " n=" << c.n << " m=" << c.m << ": " << formula << "\n";
  }
  write_json(j, c, out);
  return ok ? kOk : kFailed;
}

inline int cmd_johnson(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.n > 12) throw UnsupportedError("johnson needs n <= 12");
  require_scheme_args(c);
  const BigInt formula = johnson_rooted_tree_count(c.n, c.m);
  const BigInt oracle = matrix_tree_oracle(johnson_graph(c.n, c.m));
  Json j{{"n", c.n},
         {"m", c.m},
         {"laplacian_spectrum", spectrum_json(johnson_laplacian_spectrum(c.n, c.m))},
         {"formula", formula.str()},
         {"oracle", oracle.str()},
         {"match", formula == oracle}};
  bool ok = formula == oracle;
  if (c.m >= 1) {
    const CardinalityCheck sides = theorem_jg_sides(c.n, c.m);
    j["cardinality_identity"] = Json{{"lhs", sides.lhs.str()}, {"rhs", sides.rhs.str()}, {"holds", sides.holds()}};
    ok = ok && sides.holds();
  }
  write_json(j, c, out);
  err << "johnson n=" << c.n << " m=" << c.m << ": " << (ok ? "passed\n" : "FAILED\n");
  return ok ? kOk : kFailed;
}

inline int cmd_identities(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_field(c.q);
  const Report report = verify_identities(c.n, c.q);
  Json galois = Json::array();
  for (unsigned k = 0; k <= c.n + 1; ++k) galois.push_back(to_json(galois_number(k, c.q)));
  Json j{{"q", c.q}, {"n", c.n}, {"galois_numbers", std::move(galois)}};
  j.update(to_json(report));
  write_json(j, c, out);
  err << "identities q=" << c.q << " n<=" << c.n << ": " << (report.passed() ? "passed\n" : "FAILED\n");
  summarize_failures(report, err);
  return report.passed() ? kOk : kFailed;
}

}  // namespace detail

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.threads > 0) set_max_threads(c.threads);
  if (c.command == "construct") return detail::cmd_construct(c, out, err);
  if (c.command == "verify") return detail::cmd_verify(c, out, err);
  if (c.command == "decompose") return detail::cmd_decompose(c, out, err);
  if (c.command == "scheme") return detail::cmd_scheme(c, out, err);
  if (c.command == "trees") return detail::cmd_trees(c, out, err);
  if (c.command == "johnson") return detail::cmd_johnson(c, out, err);
  if (c.command == "identities") return detail::cmd_identities(c, out, err);
  throw ArgumentError("unknown command '" + c.command + "'");
}

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 a
/// verification failed, 2 usage or input error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  CLI::App app{"Symmetric Jordan bases of subspace lattices over F_q", "qlattice"};
  app.require_subcommand(1);
  app.add_option("--threads", c.threads, "worker thread cap (QLATTICE_THREADS also works)")->check(CLI::Range(1U, 1024U));

  const std::map<std::string, VerifyMode> modes{{"full", VerifyMode::full}, {"spot", VerifyMode::spot}, {"none", VerifyMode::none}};
  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", c.q, "field size (prime)")->required(); };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", c.n, "ambient dimension")->required()->check(CLI::Range(0U, 64U)); };
  auto add_m = [&](CLI::App* sub) { sub->add_option("--m", c.m, "subspace dimension")->required()->check(CLI::Range(0U, 64U)); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.output_path, "write JSON here instead of stdout"); };
  auto add_mode = [&](CLI::App* sub, const char* help) {
    sub->add_option("--verify", c.verify, help)->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  };

  auto* construct = app.add_subcommand("construct", "build the basis and write it as JSON");
  add_q(construct);
  add_n(construct);
  add_out(construct);
  add_mode(construct, "full | spot | none");

  auto* verify = app.add_subcommand("verify", "re-verify a basis JSON file");
  verify->add_option("file", c.input_path, "basis JSON")->required();
  add_out(verify);
  add_mode(verify, "full | spot");

  auto* decompose = app.add_subcommand("decompose", "check the isotypic decomposition of V(B_q(n+1))");
  add_q(decompose);
  add_n(decompose);
  add_out(decompose);

  auto* scheme = app.add_subcommand("scheme", "eigentable and Laplacian spectrum of the Grassmann scheme");
  add_q(scheme);
  add_n(scheme);
  add_m(scheme);
  add_out(scheme);
  add_mode(scheme, "verification of the basis before use: full | spot");

  auto* trees = app.add_subcommand("trees", "rooted spanning trees of the Grassmann graph");
  add_q(trees);
  add_n(trees);
  add_m(trees);
  add_out(trees);
  trees->add_flag("--oracle", c.oracle, "also count via the matrix-tree theorem");

  auto* johnson = app.add_subcommand("johnson", "Johnson graph tree counts and cardinality identity");
  add_n(johnson);
  add_m(johnson);
  add_out(johnson);

  auto* identities = app.add_subcommand("identities", "check q-binomial and Galois-number identities up to n");
  add_q(identities);
  add_n(identities);
  add_out(identities);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(c, out, err);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qlattice"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qlattice::cli

#endif  // QLATTICE_CLI_HPP
