#pragma once

// JSON and CSV encodings of the reports. Big integers are decimal strings, the theorem
// probability is a "num/den" string, and matrices are nested row arrays.

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bockstein/bockstein_map.hpp"
#include "bockstein/distribution.hpp"

namespace bockstein {

using nlohmann::json;

template <Ring R>
json to_nested(const Matrix<R>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    rows.push_back(std::vector<std::uint64_t>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

/// Inverse of to_nested. `cols` is needed because a matrix with no rows has no width.
template <Ring R>
Matrix<R> from_nested(const json& j, Prime p, std::size_t cols) {
  std::vector<std::uint64_t> entries;
  for (const auto& row : j) {
    if (row.size() != cols)
      throw std::invalid_argument("nested matrix row has the wrong width");
    for (const auto& v : row)
      entries.push_back(v.get<std::uint64_t>());
  }
  return Matrix<R>(p, j.size(), cols, std::move(entries));
}

/// Entries as a matrix literal: rows joined by ';', entries by ','.
template <Ring R>
std::string to_literal(const Matrix<R>& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r)
      out += ';';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c)
        out += ',';
      out += std::to_string(m(r, c));
    }
  }
  return out;
}

inline std::string hex(std::string_view bytes) {
  std::ostringstream os;
  for (unsigned char ch : bytes)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(ch);
  return os.str();
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline json counts_to_json(const CountTable& counts) {
  json arr = json::array();
  for (const auto& [key, count] : counts)
    arr.push_back({{"beta", to_nested(BocksteinMatrix::deserialize(key).matrix())}, {"count", count}});
  return arr;
}

inline CountTable counts_from_json(const json& arr, Prime p, std::size_t coker_dim, std::size_t kernel_dim) {
  CountTable out;
  for (const auto& item : arr) {
    auto m = from_nested<Ring::ModP>(item.at("beta"), p, kernel_dim);
    if (m.rows() != coker_dim)
      throw std::invalid_argument("beta has the wrong number of rows");
    out[BocksteinMatrix(std::move(m), 0).serialize()] = item.at("count").get<std::uint64_t>();
  }
  return out;
}

// ---------------------------------------------------------------------------

inline json to_json(const CountReport& r) {
  return {{"p", r.p},
          {"m", r.m},
          {"n", r.n},
          {"k", r.k},
          {"size_L_psi", r.size_L_psi.str()},
          {"hom_size", r.hom_size.str()},
          {"fiber_size", r.fiber_size.str()},
          {"theorem_probability", r.theorem_probability.str()}};
}

inline CountReport count_report_from_json(const json& j) {
  CountReport r;
  r.p = j.at("p");
  r.m = j.at("m");
  r.n = j.at("n");
  r.k = j.at("k");
  r.size_L_psi = BigInt(j.at("size_L_psi").get<std::string>());
  r.hom_size = BigInt(j.at("hom_size").get<std::string>());
  r.fiber_size = BigInt(j.at("fiber_size").get<std::string>());
  r.theorem_probability = BigRational(j.at("theorem_probability").get<std::string>());
  return r;
}

inline json to_json(const FiberCensus& c) {
  return {{"p", c.psi.prime().value()},
          {"m", c.psi.rows()},
          {"n", c.psi.cols()},
          {"psi", to_nested(c.psi)},
          {"k", c.k},
          {"c", c.c},
          {"total", c.total},
          {"counts", counts_to_json(c.counts)},
          {"expected_total", c.expected_total.str()},
          {"expected_fiber_size", c.expected_fiber_size.str()},
          {"expected_hom_size", c.expected_hom_size.str()},
          {"pass", c.passed()}};
}

inline FiberCensus fiber_census_from_json(const json& j) {
  const Prime p(j.at("p").get<std::uint64_t>());
  const std::size_t k = j.at("k"), c = j.at("c");
  FiberCensus out{from_nested<Ring::ModP>(j.at("psi"), p, j.at("n").get<std::size_t>()),
                  k,
                  c,
                  counts_from_json(j.at("counts"), p, c, k),
                  j.at("total").get<std::uint64_t>(),
                  BigInt(j.at("expected_total").get<std::string>()),
                  BigInt(j.at("expected_fiber_size").get<std::string>()),
                  BigInt(j.at("expected_hom_size").get<std::string>())};
  return out;
}

inline json to_json(const SampleReport& s) {
  return {{"p", s.psi.prime().value()},
          {"m", s.psi.rows()},
          {"n", s.psi.cols()},
          {"psi", to_nested(s.psi)},
          {"k", s.k},
          {"c", s.c},
          {"trials", s.trials},
          {"seed", s.seed},
          {"hom_size", s.hom_size},
          {"counts", counts_to_json(s.counts)},
          {"chi_square", s.chi_square},
          {"degrees_of_freedom", s.degrees_of_freedom},
          {"p_value", s.p_value}};
}

inline SampleReport sample_report_from_json(const json& j) {
  const Prime p(j.at("p").get<std::uint64_t>());
  SampleReport s;
  s.psi = from_nested<Ring::ModP>(j.at("psi"), p, j.at("n").get<std::size_t>());
  s.k = j.at("k");
  s.c = j.at("c");
  s.trials = j.at("trials");
  s.seed = j.at("seed");
  s.hom_size = j.at("hom_size");
  s.counts = counts_from_json(j.at("counts"), p, s.c, s.k);
  s.chi_square = j.at("chi_square");
  s.degrees_of_freedom = j.at("degrees_of_freedom");
  s.p_value = j.at("p_value");
  return s;
}

inline json to_json(const JointReport& r) {
  json bins = json::array();
  for (const auto& [key, bin] : r.bins)
    bins.push_back({{"psi", to_nested(bin.psi)},
                    {"k", bin.k},
                    {"c", bin.c},
                    {"hom_size", bin.hom_size},
                    {"total", bin.total},
                    {"flat", bin.flat()},
                    {"counts", counts_to_json(bin.counts)}});
  return {{"p", r.p},
          {"m", r.m},
          {"n", r.n},
          {"trials", r.trials},
          {"seed", r.seed ? json(*r.seed) : json(nullptr)},
          {"bins", bins}};
}

inline JointReport joint_report_from_json(const json& j) {
  JointReport r;
  r.p = j.at("p");
  r.m = j.at("m");
  r.n = j.at("n");
  r.trials = j.at("trials");
  if (!j.at("seed").is_null())
    r.seed = j.at("seed").get<std::uint64_t>();
  const Prime p(r.p);
  for (const auto& b : j.at("bins")) {
    auto psi = from_nested<Ring::ModP>(b.at("psi"), p, r.n);
    std::vector<std::uint64_t> key(psi.entries().begin(), psi.entries().end());
    const std::size_t k = b.at("k"), c = b.at("c");
    r.bins.emplace(std::move(key), PsiBin{std::move(psi), k, c, b.at("hom_size").get<std::uint64_t>(),
                                          b.at("total").get<std::uint64_t>(),
                                          counts_from_json(b.at("counts"), p, c, k)});
  }
  return r;
}

/// beta together with the frame that gives its coordinates meaning.
inline json bockstein_report(const GammaContext& ctx, const MatrixModP2& phi, const BocksteinMatrix& beta) {
  json kernel = json::array();
  for (const auto& v : ctx.frame().kernel_basis)
    kernel.push_back(v);
  return {{"p", ctx.prime().value()},
          {"m", phi.rows()},
          {"n", phi.cols()},
          {"phi", to_nested(phi)},
          {"psi", to_nested(ctx.psi)},
          {"k", beta.kernel_dim()},
          {"c", beta.coker_dim()},
          {"beta", to_nested(beta.matrix())},
          {"kernel_basis", kernel},
          {"coker_rows", ctx.frame().coker_rows},
          {"psi_digest", hex64(beta.psi_digest())},
          {"serialization", hex(beta.serialize())}};
}

// ---------------------------------------------------------------------------
// CSV: one row per beta

inline void write_counts_csv(std::ostream& os, const CountTable& counts) {
  os << "beta,count\n";
  for (const auto& [key, count] : counts)
    os << '"' << to_literal(BocksteinMatrix::deserialize(key).matrix()) << "\"," << count << '\n';
}

inline void write_csv(std::ostream& os, const JointReport& r) {
  os << "psi,k,c,beta,count\n";
  for (const auto& [key, bin] : r.bins)
    for (const auto& [beta, count] : bin.counts)
      os << '"' << to_literal(bin.psi) << "\"," << bin.k << ',' << bin.c << ",\""
         << to_literal(BocksteinMatrix::deserialize(beta).matrix()) << "\"," << count << '\n';
}

} // namespace bockstein
