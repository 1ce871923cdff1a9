#pragma once

// Command-line front end: compute, census, count, sample, verify.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "bockstein/bockstein.hpp"
#include "bockstein/verification.hpp"

namespace bockstein::cli {

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsage = 2, kBudgetExceeded = 3 };

enum class Command { Compute, Census, Count, Sample, Verify };
enum class Format { Json, Csv, Text };

struct CliConfig {
  Command command = Command::Compute;
  std::uint64_t p = 2;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> k;
  std::optional<std::string> matrix;       // --phi for compute, --psi for census/sample
  std::optional<std::string> matrix_file;  // JSON nested array
  bool reduce = false;
  bool unconditional = false;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_dim;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  Format format = Format::Json;
  std::optional<std::string> output;
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Enumeration cap: BOCKSTEIN_BUDGET if set, else the library default.
inline std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("BOCKSTEIN_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0)
        return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("BOCKSTEIN_BUDGET is not a positive integer: ") + env);
  }
  return kDefaultBudget;
}

/// Parses "a,b;c,d" into a matrix over Z/modulus, where modulus is p or p^2 according to
/// the ring R. Entries outside [0, modulus) are errors unless `reduce` is set.
template <Ring R>
Matrix<R> parse_matrix(const std::string& literal, Prime p, std::optional<std::size_t> m,
                       std::optional<std::size_t> n, bool reduce = false) {
  const std::uint64_t modulus = R == Ring::ModP ? p.value() : p.square();
  std::vector<std::vector<std::uint64_t>> rows;
  if (!literal.empty()) {
    std::stringstream rows_in(literal);
    std::string row_text;
    while (std::getline(rows_in, row_text, ';')) {
      std::vector<std::uint64_t> row;
      std::stringstream cells(row_text);
      std::string cell;
      while (std::getline(cells, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t");
        const auto last = cell.find_last_not_of(" \t");
        const std::string token = first == std::string::npos ? "" : cell.substr(first, last - first + 1);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
          throw UsageError("matrix entry '" + token + "' is not a non-negative integer");
        std::uint64_t v = 0;
        try {
          v = std::stoull(token);
        } catch (const std::out_of_range&) {
          throw UsageError("matrix entry '" + token + "' is too large");
        }
        if (v >= modulus) {
          if (!reduce)
            throw UsageError("matrix entry " + token + " is outside [0, " + std::to_string(modulus) +
                             "); pass --reduce to reduce it");
          v %= modulus;
        }
        row.push_back(v);
      }
      if (!row_text.empty() && row_text.back() == ',')
        throw UsageError("trailing ',' in matrix row");
      rows.push_back(std::move(row));
    }
  }
  const std::size_t got_m = rows.size();
  const std::size_t got_n = rows.empty() ? n.value_or(0) : rows.front().size();
  for (const auto& row : rows)
    if (row.size() != got_n)
      throw UsageError("matrix rows have different lengths");
  if ((m && *m != got_m) || (n && *n != got_n && got_m != 0))
    throw UsageError("matrix literal is " + std::to_string(got_m) + "x" + std::to_string(got_n) +
                     ", expected " + std::to_string(m.value_or(got_m)) + "x" +
                     std::to_string(n.value_or(got_n)));
  std::vector<std::uint64_t> entries;
  for (const auto& row : rows)
    entries.insert(entries.end(), row.begin(), row.end());
  return Matrix<R>(p, got_m, got_n, std::move(entries));
}

namespace detail {

inline std::string read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!j.is_array())
    throw UsageError(path + ": expected a nested array of rows");
  std::string literal;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (r)
      literal += ';';
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      if (c)
        literal += ',';
      if (!j[r][c].is_number_unsigned())
        throw UsageError(path + ": entries must be non-negative integers");
      literal += std::to_string(j[r][c].get<std::uint64_t>());
    }
  }
  return literal;
}

template <Ring R>
Matrix<R> input_matrix(const CliConfig& cfg, const char* flag) {
  std::string literal;
  if (cfg.matrix)
    literal = *cfg.matrix;
  else if (cfg.matrix_file)
    literal = read_matrix_file(*cfg.matrix_file);
  else
    throw UsageError(std::string("this command needs ") + flag + " or " + flag + "-file");
  return parse_matrix<R>(literal, Prime(cfg.p), cfg.m, cfg.n, cfg.reduce);
}

inline std::uint64_t seed_or_fresh(const CliConfig& cfg) {
  if (cfg.seed)
    return *cfg.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline void write_text_counts(std::ostream& os, const CountTable& counts) {
  for (const auto& [key, count] : counts)
    os << "  [" << to_literal(BocksteinMatrix::deserialize(key).matrix()) << "]  " << count << '\n';
}

inline int run_compute(const CliConfig& cfg, std::ostream& out) {
  const auto phi = input_matrix<Ring::ModP2>(cfg, "--phi");
  const GammaContext ctx(reduce_mod_p(phi));
  const auto beta = bockstein_of(ctx, phi);
  switch (cfg.format) {
  case Format::Json:
    out << bockstein_report(ctx, phi, beta).dump(2) << '\n';
    break;
  case Format::Csv:
    out << "k,c,beta\n" << beta.kernel_dim() << ',' << beta.coker_dim() << ",\"" << to_literal(beta.matrix())
        << "\"\n";
    break;
  case Format::Text:
    out << "psi  = [" << to_literal(ctx.psi) << "]\n"
        << "k    = " << beta.kernel_dim() << "\nc    = " << beta.coker_dim() << '\n'
        << "beta = [" << to_literal(beta.matrix()) << "]\n";
    break;
  }
  return kPass;
}

inline int run_count(const CliConfig& cfg, std::ostream& out) {
  if (!cfg.m || !cfg.n || !cfg.k)
    throw UsageError("count needs --m, --n and --k");
  CountReport r;
  try {
    r = count_report(Prime(cfg.p), *cfg.m, *cfg.n, *cfg.k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  switch (cfg.format) {
  case Format::Json:
    out << to_json(r).dump(2) << '\n';
    break;
  case Format::Csv:
    out << "p,m,n,k,size_L_psi,hom_size,fiber_size,theorem_probability\n"
        << r.p << ',' << r.m << ',' << r.n << ',' << r.k << ',' << r.size_L_psi << ',' << r.hom_size << ','
        << r.fiber_size << ',' << r.theorem_probability << '\n';
    break;
  case Format::Text:
    out << "|L_psi|        = " << r.size_L_psi << "\n|Hom|          = " << r.hom_size
        << "\nfiber size     = " << r.fiber_size << "\nP(beta | psi)  = " << r.theorem_probability << '\n';
    break;
  }
  return kPass;
}

inline int run_census(const CliConfig& cfg, std::ostream& out) {
  const auto psi = input_matrix<Ring::ModP>(cfg, "--psi");
  const GammaContext ctx(psi);
  const auto census = exhaustive_census(ctx, cfg.budget, cfg.threads);
  switch (cfg.format) {
  case Format::Json:
    out << to_json(census).dump(2) << '\n';
    break;
  case Format::Csv:
    write_counts_csv(out, census.counts);
    break;
  case Format::Text:
    out << describe(psi) << " k=" << census.k << " c=" << census.c << " total=" << census.total
        << "\nexpected fiber size " << census.expected_fiber_size << ", expected distinct beta "
        << census.expected_hom_size << '\n';
    write_text_counts(out, census.counts);
    out << (census.passed() ? "PASS" : "FAIL") << '\n';
    break;
  }
  return census.passed() ? kPass : kVerificationFailed;
}

inline int run_sample(const CliConfig& cfg, std::ostream& out) {
  if (!cfg.trials || *cfg.trials == 0)
    throw UsageError("sample needs --trials >= 1");
  const auto seed = seed_or_fresh(cfg);
  if (cfg.unconditional) {
    if (!cfg.m || !cfg.n)
      throw UsageError("sample --unconditional needs --m and --n");
    const auto joint = sample_unconditional(Prime(cfg.p), *cfg.m, *cfg.n, *cfg.trials, seed, cfg.threads);
    switch (cfg.format) {
    case Format::Json:
      out << to_json(joint).dump(2) << '\n';
      break;
    case Format::Csv:
      write_csv(out, joint);
      break;
    case Format::Text:
      out << "seed " << seed << ", " << joint.trials << " trials, " << joint.bins.size() << " psi observed\n";
      for (const auto& [key, bin] : joint.bins) {
        out << describe(bin.psi) << " k=" << bin.k << " c=" << bin.c << " samples=" << bin.total
            << " expected frequency 1/" << bin.hom_size << '\n';
        write_text_counts(out, bin.counts);
      }
      break;
    }
    return kPass;
  }
  const auto psi = input_matrix<Ring::ModP>(cfg, "--psi");
  const GammaContext ctx(psi);
  const auto report = sample_conditional(ctx, *cfg.trials, seed, cfg.threads);
  switch (cfg.format) {
  case Format::Json:
    out << to_json(report).dump(2) << '\n';
    break;
  case Format::Csv:
    write_counts_csv(out, report.counts);
    break;
  case Format::Text:
    out << describe(psi) << " seed " << seed << ", " << report.trials << " trials over " << report.hom_size
        << " cells\nchi-square " << report.chi_square << " on " << report.degrees_of_freedom
        << " dof, p-value " << report.p_value << '\n';
    write_text_counts(out, report.counts);
    break;
  }
  return kPass;
}

inline constexpr std::uint64_t kLinearitySeed = 0x4c494e45;
inline constexpr std::uint64_t kLiftSeed = 0x4c494654;

/// The full sweep when no scope is given; a census sweep over every psi of every shape up
/// to --max-dim at --p otherwise.
inline std::vector<CheckResult> verification_checks(const CliConfig& cfg) {
  std::vector<CheckResult> checks;
  if (cfg.max_dim) {
    const auto d = *cfg.max_dim;
    std::vector<Shape> shapes;
    for (std::size_t m = 1; m <= d; ++m)
      for (std::size_t n = 1; n <= d; ++n)
        shapes.push_back({cfg.p, m, n});
    const auto psis = all_psis(shapes);
    checks.push_back(check_coset_sizes(shapes));
    checks.push_back(check_fiber_sizes(psis, cfg.threads, cfg.budget));
    checks.push_back(check_surjectivity(psis));
    checks.push_back(check_counting_identity(8));
    return checks;
  }

  std::vector<Shape> small;
  for (std::uint64_t p : {2, 3})
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t n = 1; n <= 2; ++n)
        small.push_back({p, m, n});
  const auto small_psis = all_psis(small);
  checks.push_back(check_coset_sizes(small));

  std::vector<Shape> fiber_shapes;
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {2, 3}, {3, 3}})
    fiber_shapes.push_back({2, m, n});
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 1; n <= 2; ++n)
      fiber_shapes.push_back({3, m, n});
  checks.push_back(check_fiber_sizes(all_psis(fiber_shapes), cfg.threads, cfg.budget));

  checks.push_back(check_conditional_uniformity(cfg.trials.value_or(100000), cfg.threads).first);
  checks.push_back(check_joint_flatness({{2, 1, 1}, {2, 2, 1}, {2, 2, 2}}, cfg.threads));
  checks.push_back(check_surjectivity(small_psis));

  const Prime two(2);
  checks.push_back(check_linearity_exhaustive({MatrixModP(two, 2, 2), MatrixModP(two, {{1, 1}, {1, 1}}),
                                               MatrixModP(two, {{1, 1}, {0, 1}})}));
  checks.push_back(check_linearity_random(3, 4, 1000, kLinearitySeed));
  checks.push_back(check_linearity_random(5, 4, 1000, kLinearitySeed + 1));

  for (std::uint64_t p : {2, 3})
    for (std::size_t n = 1; n <= 2; ++n) {
      checks.push_back(check_kernel_is_image(p, n));
      checks.push_back(check_pV_isomorphism(p, n));
      checks.push_back(check_lifted_bases(p, n));
      for (std::size_t m = 1; m <= 2; ++m)
        checks.push_back(check_coker_isomorphism(p, m, n));
    }
  checks.push_back(check_lift_independence(5, 4, 4, 1000, kLiftSeed));
  checks.push_back(check_counting_identity(8));
  return checks;
}

inline int run_verify(const CliConfig& cfg, std::ostream& out) {
  const auto checks = verification_checks(cfg);
  bool all = true;
  for (const auto& c : checks)
    all = all && c.passed;
  switch (cfg.format) {
  case Format::Json: {
    json arr = json::array();
    for (const auto& c : checks)
      arr.push_back(to_json(c));
    out << json{{"passed", all}, {"checks", arr}}.dump(2) << '\n';
    break;
  }
  case Format::Csv:
    out << "check,passed,detail\n";
    for (const auto& c : checks)
      out << '"' << c.name << "\"," << (c.passed ? "true" : "false") << ",\"" << c.detail << "\"\n";
    break;
  case Format::Text:
    for (const auto& c : checks) {
      out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
      for (const auto& line : c.lines)
        out << "      " << line << '\n';
    }
    out << (all ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    break;
  }
  return all ? kPass : kVerificationFailed;
}

} // namespace detail

/// Executes a parsed command, writing the report to cfg.output or `out`.
inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.output) {
    file.open(*cfg.output);
    if (!file) {
      err << "error: cannot write " << *cfg.output << '\n';
      return kUsage;
    }
    sink = &file;
  }
  try {
    (void)Prime(cfg.p);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    switch (cfg.command) {
    case Command::Compute:
      return detail::run_compute(cfg, *sink);
    case Command::Census:
      return detail::run_census(cfg, *sink);
    case Command::Count:
      return detail::run_count(cfg, *sink);
    case Command::Sample:
      return detail::run_sample(cfg, *sink);
    case Command::Verify:
      return detail::run_verify(cfg, *sink);
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget or BOCKSTEIN_BUDGET)\n";
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

/// Parses argv into a config, or returns the exit code when parsing ends the program
/// (--help, usage errors).
inline std::variant<CliConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                               std::ostream& err) {
  CliConfig cfg;
  try {
    cfg.budget = budget_from_env();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Bockstein homomorphisms of maps between free Z/p^2-modules"};
  app.require_subcommand(1);
  std::string format = "json";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "prime p")->required();
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output,-o", cfg.output, "write the report here instead of stdout");
    sub->add_option("--budget", cfg.budget, "enumeration cap (default 2^24 or BOCKSTEIN_BUDGET)");
    sub->add_option("--threads", cfg.threads, "worker threads");
  };
  auto shape = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "rows (dimension of the target)");
    sub->add_option("--n", cfg.n, "columns (dimension of the source)");
  };

  auto* compute = app.add_subcommand("compute", "Bockstein matrix of a map phi over Z/p^2");
  common(compute);
  shape(compute);
  auto* phi = compute->add_option("--phi", cfg.matrix, "matrix literal, rows ';' entries ','");
  compute->add_option("--phi-file", cfg.matrix_file, "JSON nested array")->excludes(phi);
  compute->add_flag("--reduce", cfg.reduce, "reduce out-of-range entries");

  auto* census = app.add_subcommand("census", "exhaustive fiber census over L_psi");
  common(census);
  shape(census);
  auto* psi = census->add_option("--psi", cfg.matrix, "matrix literal over Z/p");
  census->add_option("--psi-file", cfg.matrix_file, "JSON nested array")->excludes(psi);
  census->add_flag("--reduce", cfg.reduce, "reduce out-of-range entries");

  auto* count = app.add_subcommand("count", "closed-form sizes and probability");
  common(count);
  shape(count);
  count->add_option("--k", cfg.k, "dimension of ker psi");

  auto* sample = app.add_subcommand("sample", "seeded sampling of beta");
  common(sample);
  shape(sample);
  auto* spsi = sample->add_option("--psi", cfg.matrix, "condition on this psi");
  sample->add_option("--psi-file", cfg.matrix_file, "JSON nested array")->excludes(spsi);
  sample->add_flag("--reduce", cfg.reduce, "reduce out-of-range entries");
  sample->add_flag("--unconditional", cfg.unconditional, "draw phi uniformly and bin by psi");
  sample->add_option("--trials", cfg.trials, "number of samples");
  sample->add_option("--seed", cfg.seed, "64-bit seed (generated and recorded when absent)");

  auto* verify = app.add_subcommand("verify", "run the verification sweep");
  verify->add_option("--p", cfg.p, "prime for the scoped sweep");
  verify->add_option("--max-dim", cfg.max_dim, "scope: every psi with 1 <= m, n <= max-dim");
  verify->add_option("--trials", cfg.trials, "samples per psi in the uniformity check");
  verify->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  verify->add_option("--output,-o", cfg.output, "write the report here instead of stdout");
  verify->add_option("--budget", cfg.budget, "enumeration cap");
  verify->add_option("--threads", cfg.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  if (*compute) {
    cfg.command = Command::Compute;
  } else if (*census) {
    cfg.command = Command::Census;
  } else if (*count) {
    cfg.command = Command::Count;
  } else if (*sample) {
    cfg.command = Command::Sample;
  } else {
    cfg.command = Command::Verify;
    if (verify->count("--p") && !cfg.max_dim)
      cfg.max_dim = 2;
  }
  cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;

  if (cfg.command == Command::Compute && !cfg.matrix && !cfg.matrix_file) {
    err << "error: compute needs --phi or --phi-file\n";
    return kUsage;
  }
  if (cfg.command == Command::Sample && !cfg.trials) {
    err << "error: sample needs --trials\n";
    return kUsage;
  }
  return cfg;
}

} // namespace bockstein::cli
