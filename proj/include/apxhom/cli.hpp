#pragma once

// Subcommand front end. run() never touches global state besides the worker
// cap, and writes reports to `out` (or --output) and diagnostics to `err`.
// Exit codes: 0 ok, 1 usage or input error, 2 a checked inequality failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apxhom/io.hpp"

namespace apxhom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct MapArgs {
  std::string construct;
  std::string map_file;
  std::string g = "[2]";
  int n = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
};

inline GroupSpec spec_arg(const std::string& field, const std::string& text) {
  try {
    return io::parse_spec(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(field + ": " + e.what());
  }
}

inline PointMap build_map(const MapArgs& a) {
  if (!a.map_file.empty()) {
    if (!a.construct.empty()) throw UsageError("--map and --construct are mutually exclusive");
    std::ifstream in(a.map_file);
    if (!in) throw UsageError("--map: cannot open '" + a.map_file + "'");
    try {
      return io::map_from_json(io::json::parse(in));
    } catch (const io::json::exception& e) {
      throw UsageError(std::string("--map: ") + e.what());
    }
  }
  if (a.construct == "binary") {
    if (a.n < 1 || a.n > 24) throw UsageError("--n: must be in [1, 24]");
    auto p = a.p == 0 ? next_prime_above(std::int64_t{1} << a.n) : a.p;
    if (!is_prime(p) || p <= (std::int64_t{1} << a.n)) throw UsageError("--p: must be a prime greater than 2^n");
    return binary_embedding(a.n, p);
  }
  if (a.construct == "unwrap") {
    if (a.p < 3 || !is_prime(a.p)) throw UsageError("--p: must be an odd prime");
    auto q = a.q == 0 ? next_prime_above(a.p) : a.q;
    if (!is_prime(q) || q <= a.p) throw UsageError("--q: must be a prime greater than p");
    return centered_unwrap(a.p, q);
  }
  if (a.construct == "identity") return identity_map(spec_arg("--G", a.g));
  throw UsageError("--construct: expected binary, unwrap or identity (or pass --map FILE)");
}

inline void add_map_options(CLI::App* cmd, MapArgs& a) {
  cmd->add_option("--construct", a.construct, "binary | unwrap | identity");
  cmd->add_option("--map", a.map_file, "JSON map file (domain, codomain, table)");
  cmd->add_option("--n", a.n, "binary: number of bits");
  cmd->add_option("--p", a.p, "binary: target prime (default: next prime above 2^n); unwrap: source prime");
  cmd->add_option("--q", a.q, "unwrap: target prime (default: next prime above p)");
  cmd->add_option("--G", a.g, "identity: group spec");
}

inline std::string row_csv(const io::json& report) {
  std::vector<std::string> header, row;
  for (const auto& [k, v] : report.items()) {
    if (v.is_structured()) continue;
    header.push_back(k);
    row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  return io::emit_csv(header, {row});
}

}  // namespace detail

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate homomorphisms between finite Abelian groups: exact counts, bounds and lemma checks",
               "apxhom"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  std::string output;
  std::string format = "json";
  app.add_option("--threads", threads, "worker cap (0 = hardware concurrency)");
  app.add_option("--output", output, "write the report to this file instead of stdout");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  detail::MapArgs prob_args, construct_args;
  auto* prob = app.add_subcommand("prob", "exact agreement probability of a map");
  detail::add_map_options(prob, prob_args);
  auto* construct = app.add_subcommand("construct", "emit a map as JSON");
  detail::add_map_options(construct, construct_args);

  std::string bound_g, bound_h, bound_r = "auto";
  auto* bound = app.add_subcommand("bound", "evaluate base^alpha for G -> H");
  bound->add_option("--G", bound_g, "domain spec")->required();
  bound->add_option("--H", bound_h, "codomain spec")->required();
  bound->add_option("--r", bound_r, "positive integer, or auto to scan 2..64");

  std::string search_g, search_h, method = "exhaustive", warm, csv_path;
  std::uint64_t iterations = 100'000, seed = 0;
  std::int64_t r_min = 1, r_max = 8;
  auto* search_cmd = app.add_subcommand("search", "maximize agreement over injections G -> H");
  search_cmd->add_option("--G", search_g, "domain spec")->required();
  search_cmd->add_option("--H", search_h, "codomain spec")->required();
  search_cmd->add_option("--method", method, "exhaustive | local")->check(CLI::IsMember({"exhaustive", "local"}));
  search_cmd->add_option("--iterations", iterations, "local search iterations");
  search_cmd->add_option("--seed", seed, "local search seed");
  search_cmd->add_option("--warm-start", warm, "binary | unwrap")->check(CLI::IsMember({"binary", "unwrap"}));
  search_cmd->add_option("--r-min", r_min, "first r in the bound table");
  search_cmd->add_option("--r-max", r_max, "last r in the bound table");
  search_cmd->add_option("--csv", csv_path, "also write the bound comparison table as CSV");

  std::string checker;
  std::uint64_t trials = 1000, fuzz_seed = 0;
  auto* fuzz = app.add_subcommand("fuzz", "randomized campaign against one lemma checker");
  fuzz->add_option("--checker", checker, "claim-a | bukh | bsg | petridis | ruzsa | kernel")->required();
  fuzz->add_option("--trials", trials, "number of trials");
  fuzz->add_option("--seed", fuzz_seed, "campaign seed");

  int d = 0;
  auto* counter = app.add_subcommand("counterexample", "dilation counterexample family in (Z/4)^d x Z");
  counter->add_option("--d", d, "dimension")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const unsigned saved_threads = apxhom::detail::thread_limit_storage().load();
  set_thread_limit(threads);
  std::ostringstream report;
  int status = kExitOk;
  const bool csv = format == "csv";

  try {
    if (prob->parsed()) {
      auto f = detail::build_map(prob_args);
      auto j = io::agreement_json(agreement_probability(f));
      j["domain"] = io::format_spec(f.domain());
      j["codomain"] = io::format_spec(f.codomain());
      j["recipe"] = recipe_name(f.provenance().recipe);
      report << (csv ? detail::row_csv(j) : j.dump() + "\n");
    } else if (construct->parsed()) {
      auto f = detail::build_map(construct_args);
      if (csv) {
        std::vector<std::vector<std::string>> rows;
        for (std::uint64_t k = 0; k < f.table().size(); ++k)
          rows.push_back({io::format_element(unrank(f.domain(), k)), io::format_element(f.at_rank(k))});
        report << io::emit_csv({"x", "f(x)"}, rows);
      } else {
        report << io::map_json(f).dump() + "\n";
      }
    } else if (bound->parsed()) {
      auto g = detail::spec_arg("--G", bound_g);
      auto h = detail::spec_arg("--H", bound_h);
      if (!g.is_finite() || !h.is_finite()) throw UsageError("--G/--H: bounds need finite groups");
      BoundReport b;
      io::json j;
      if (bound_r == "auto") {
        b = best_bound_over_r(g, h, 2, 64);
        j = io::bound_json(b);
        j["scanned"] = {2, 64};
      } else {
        std::int64_t r = 0;
        try {
          std::size_t used = 0;
          r = std::stoll(bound_r, &used);
          if (used != bound_r.size()) r = 0;
        } catch (const std::exception&) {
          r = 0;
        }
        if (r < 1) throw UsageError("--r: expected a positive integer or 'auto', got '" + bound_r + "'");
        b = theorem_bound(g, h, r);
        j = io::bound_json(b);
      }
      report << (csv ? detail::row_csv(j) : j.dump() + "\n");
    } else if (search_cmd->parsed()) {
      auto g = detail::spec_arg("--G", search_g);
      auto h = detail::spec_arg("--H", search_h);
      if (!g.is_finite() || !h.is_finite()) throw UsageError("--G/--H: search needs finite groups");
      if (r_min < 1 || r_max < r_min) throw UsageError("--r-min/--r-max: need 1 <= r-min <= r-max");
      std::optional<search::SearchResult> found;
      if (method == "exhaustive") {
        if (!warm.empty()) throw UsageError("--warm-start: only meaningful with --method local");
        if (search::exhaustive_candidate_count(g, h) > search::kExhaustiveCandidateLimit)
          throw UsageError("--G/--H: instance too large for exhaustive search (more than " +
                           std::to_string(search::kExhaustiveCandidateLimit) + " candidate injections)");
        found = search::exhaustive_max_agreement(g, h);
      } else {
        search::LocalSearchOptions opt;
        opt.iterations = iterations;
        opt.seed = seed;
        if (warm == "binary") {
          int n = static_cast<int>(g.factor_count());
          bool ok = n >= 1 && n <= 24 && h.factor_count() == 1 && is_prime(h.modulus(0)) &&
                    h.modulus(0) > (std::int64_t{1} << n);
          for (std::size_t i = 0; ok && i < g.factor_count(); ++i) ok = g.modulus(i) == 2;
          if (!ok) throw UsageError("--warm-start binary: needs G = [2^n] and H = [p] with p prime > 2^n");
          opt.warm_start = binary_embedding(n, h.modulus(0));
        } else if (warm == "unwrap") {
          bool ok = g.factor_count() == 1 && h.factor_count() == 1 && is_prime(g.modulus(0)) && g.modulus(0) > 2 &&
                    is_prime(h.modulus(0)) && h.modulus(0) > g.modulus(0);
          if (!ok) throw UsageError("--warm-start unwrap: needs G = [p], H = [q] with odd prime p < prime q");
          opt.warm_start = centered_unwrap(g.modulus(0), h.modulus(0));
        }
        found = search::local_search_max_agreement(g, h, opt);
      }
      auto& res = *found;
      auto table = search::bound_comparison_table(g, h, r_min, r_max, res.best_probability);
      res.bound_context.clear();
      for (const auto& row : table) res.bound_context.push_back(row.bound);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw UsageError("--csv: cannot write '" + csv_path + "'");
        f << io::bound_table_csv(table);
      }
      report << (csv ? io::bound_table_csv(table) : io::search_json(res).dump() + "\n");
    } else if (fuzz->parsed()) {
      if (csv) throw UsageError("--format: fuzz emits JSON lines only");
      lab::Checker c;
      try {
        c = lab::parse_checker(checker);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--checker: ") + e.what());
      }
      auto outcomes = lab::run_campaign(c, trials, fuzz_seed);
      std::uint64_t failed = 0, checks = 0;
      for (const auto& t : outcomes) {
        auto j = io::trial_json(c, fuzz_seed, t);
        checks += j["checks"].get<std::uint64_t>();
        if (!t.ok()) ++failed;
        report << j.dump() << "\n";
      }
      io::json summary{{"checker", lab::checker_name(c)},
                       {"seed", fuzz_seed},
                       {"trials", trials},
                       {"checks", checks},
                       {"violating_trials", failed}};
      report << io::json{{"summary", summary}}.dump() << "\n";
      if (failed) status = kExitViolation;
    } else if (counter->parsed()) {
      if (d < 0 || d > lab::kCounterexampleMaxD)
        throw UsageError("--d: must be in [0, " + std::to_string(lab::kCounterexampleMaxD) + "]");
      auto stats = lab::counterexample_family(d);
      auto j = io::counterexample_json(stats);
      report << (csv ? detail::row_csv(j) : j.dump() + "\n");
      if (!stats.checks.ok()) status = kExitViolation;
    }
  } catch (const UsageError& e) {
    set_thread_limit(saved_threads);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lab::InternalConsistencyError& e) {
    set_thread_limit(saved_threads);
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    set_thread_limit(saved_threads);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  set_thread_limit(saved_threads);

  if (output.empty()) {
    out << report.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "error: --output: cannot write '" << output << "'\n";
      return kExitUsage;
    }
    f << report.str();
  }
  return status;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace apxhom::cli
