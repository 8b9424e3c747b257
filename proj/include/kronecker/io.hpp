#pragma once

/**
 * @file io.hpp
 * @brief Text and JSON encodings of sequences, spectra, reports.
 *
 * Sequence record format (line oriented, CSV body):
 *
 *     # kronecker-bda 1
 *     # alpha=2/7
 *     # norm=linf
 *     # q_max=6
 *     # hit_zero=false
 *     q,r_numerator,r_denominator,norm
 *     1,2,7,linf
 *     3,1,7,linf
 *
 * For l2 the r columns hold the squared distance. Extra "# key=value"
 * header lines are allowed and ignored by the reader. Exact numbers are
 * always decimal integers or "p/q" strings; floats appear only in fields
 * whose name ends in "_approx".
 */

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "kronecker/best_approx.hpp"
#include "kronecker/continued_fraction.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/gap_spectrum.hpp"
#include "kronecker/search.hpp"

namespace kronecker {

using json = nlohmann::ordered_json;

inline constexpr const char* sequence_magic = "# kronecker-bda 1";

inline void write_sequence(std::ostream& out, const BestApproxSequence& seq,
                           const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  out << sequence_magic << '\n';
  out << "# alpha=" << to_string(seq.alpha) << '\n';
  out << "# norm=" << to_string(seq.norm) << '\n';
  out << "# q_max=" << seq.q_max << '\n';
  out << "# hit_zero=" << (seq.hit_zero ? "true" : "false") << '\n';
  for (const auto& [k, v] : extra) out << "# " << k << '=' << v << '\n';
  out << "q,r_numerator,r_denominator,norm\n";
  for (const auto& t : seq.terms) {
    out << t.q << ',' << t.r.value.get_num().get_str() << ',' << t.r.value.get_den().get_str()
        << ',' << to_string(t.r.norm) << '\n';
  }
}

namespace detail {

inline std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  const auto s = trim(text);
  require(!s.empty() && is_integer_literal(s) && s.front() != '-' && s.front() != '+',
          what + " must be a nonnegative integer, got '" + std::string(text) + "'");
  const Integer v{std::string(s)};
  require(v.fits_ulong_p(), what + " out of range");
  return v.get_ui();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto at = s.find(sep);
    out.push_back(s.substr(0, at));
    if (at == std::string_view::npos) break;
    s.remove_prefix(at + 1);
  }
  return out;
}

}  // namespace detail

/// Reads the record format written by `write_sequence` and re-checks the
/// sequence invariants (q_1 = 1, q increasing, r decreasing, q <= q_max).
inline BestApproxSequence read_sequence(std::istream& in) {
  std::string line;
  std::map<std::string, std::string> header;
  bool saw_columns = false;
  std::vector<BestApproxTerm> terms;
  std::optional<Norm> norm;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = detail::trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const auto body = detail::trim(s.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        header[std::string(detail::trim(body.substr(0, eq)))] =
            std::string(detail::trim(body.substr(eq + 1)));
      }
      continue;
    }
    if (!saw_columns) {
      detail::require(s == "q,r_numerator,r_denominator,norm",
                      "line " + std::to_string(line_no) + ": expected column header");
      saw_columns = true;
      norm = parse_norm(header.count("norm") ? header["norm"] : "");
      continue;
    }
    const auto cols = detail::split(s, ',');
    detail::require(cols.size() == 4, "line " + std::to_string(line_no) + ": expected 4 fields");
    const auto q = detail::parse_u64(cols[0], "q");
    const Integer num = parse_integer(cols[1]);
    const Integer den = parse_integer(cols[2]);
    detail::require(den > 0, "line " + std::to_string(line_no) + ": denominator must be positive");
    detail::require(parse_norm(cols[3]) == *norm,
                    "line " + std::to_string(line_no) + ": norm differs from header");
    terms.push_back({q, DistanceValue(*norm, Rational(num, den))});
  }
  detail::require(saw_columns, "missing column header in sequence file");
  detail::require(header.count("alpha") && header.count("q_max"),
                  "sequence header needs alpha= and q_max=");
  BestApproxSequence seq{parse_rational_vector(header["alpha"]), *norm,
                         detail::parse_u64(header["q_max"], "q_max"), std::move(terms),
                         header["hit_zero"] == "true"};
  detail::require(!seq.terms.empty(), "sequence file has no terms");
  detail::require(seq.terms.back().q <= seq.q_max, "term beyond q_max");
  try {
    assert_monotone(seq);
  } catch (const invariant_violation& e) {
    detail::fail_validation(std::string("malformed sequence: ") + e.what());
  }
  return seq;
}

inline std::string sequence_to_string(const BestApproxSequence& seq) {
  std::ostringstream os;
  write_sequence(os, seq);
  return os.str();
}

/// One "key=value" header line, then one record per distinct value.
inline void write_spectrum_records(std::ostream& out, const GapSpectrum& s) {
  out << "alpha=" << to_string(s.alpha) << " norm=" << to_string(s.norm) << " N=" << s.n
      << " distinct=" << count_distinct(s) << '\n';
  for (const auto& e : s.entries) {
    out << "value=" << to_string(e.value.value) << " multiplicity=" << e.multiplicity << '\n';
  }
}

struct CountComparisonRow {
  std::uint64_t n;
  std::optional<std::uint64_t> g_fast;
  std::optional<std::uint64_t> g_oracle;

  std::optional<bool> match() const {
    if (!g_fast || !g_oracle) return std::nullopt;
    return *g_fast == *g_oracle;
  }
};

inline void write_count_csv(std::ostream& out, const std::vector<CountComparisonRow>& rows) {
  out << "N,g_fast,g_oracle,match\n";
  for (const auto& r : rows) {
    out << r.n << ',';
    if (r.g_fast) out << *r.g_fast;
    out << ',';
    if (r.g_oracle) out << *r.g_oracle;
    out << ',';
    if (const auto m = r.match()) out << (*m ? "true" : "false");
    out << '\n';
  }
}

inline void write_convergent_csv(std::ostream& out, const ConvergentTable& table) {
  out << "n,a,p,q\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << (i + 1) << ',' << table[i].a.get_str() << ',' << table[i].p.get_str() << ','
        << table[i].q.get_str() << '\n';
  }
}

inline json to_json(const DistanceValue& d) { return to_string(d.value); }

inline json to_json(const BestApproxSequence& seq) {
  json terms = json::array();
  for (const auto& t : seq.terms) terms.push_back({{"q", t.q}, {"r", to_string(t.r.value)}});
  return {{"alpha", to_string(seq.alpha)},
          {"norm", to_string(seq.norm)},
          {"q_max", seq.q_max},
          {"hit_zero", seq.hit_zero},
          {"r_is_squared", seq.norm == Norm::l2},
          {"terms", std::move(terms)}};
}

inline json to_json(const InequalityReport& r) {
  return {{"inequality", r.inequality},
          {"shift", r.shift},
          {"quantifier", to_string(r.quantifier)},
          {"checked_range", {r.first_checked, r.last_checked}},
          {"checked", r.checked_count()},
          {"unchecked", r.unchecked},
          {"violations", r.violations},
          {"witnesses", r.witnesses},
          {"passed", r.passed}};
}

inline json to_json(const GapSpectrum& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"value", to_string(e.value.value)}, {"multiplicity", e.multiplicity}});
  }
  return {{"alpha", to_string(s.alpha)},
          {"norm", to_string(s.norm)},
          {"N", s.n},
          {"value_is_squared", s.norm == Norm::l2},
          {"distinct", count_distinct(s)},
          {"entries", std::move(entries)}};
}

inline json to_json(const CFDescription& cf) {
  json out = {{"cf", to_string(cf)},
              {"kind", cf.periodic() ? "eventually_periodic" : "finite"}};
  if (cf.periodic()) {
    out["limsup_g"] = classify_limsup(cf);
    out["liminf_g"] = classify_liminf(cf);
    out["golden_equivalent"] = golden_equivalent(cf);
  }
  return out;
}

inline json to_json(const ConvergentTable& table) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    rows.push_back({{"n", i + 1},
                    {"a", table[i].a.get_str()},
                    {"p", table[i].p.get_str()},
                    {"q", table[i].q.get_str()}});
  }
  return rows;
}

inline json to_json(const Witness& w) {
  return {{"alpha", to_string(w.alpha)}, {"N", w.n},
          {"norm", to_string(w.norm)},   {"g", w.g},
          {"verified_by_oracle", w.verified_by_oracle}, {"sequence", to_json(w.sequence)}};
}

/// Witness blocks: the sequence record format with N and g added to the
/// header, one block per witness.
inline void write_witnesses(std::ostream& out, const std::vector<Witness>& witnesses) {
  for (const auto& w : witnesses) {
    write_sequence(out, w.sequence,
                   {{"N", std::to_string(w.n)},
                    {"g", std::to_string(w.g)},
                    {"verified_by_oracle", w.verified_by_oracle ? "true" : "false"}});
  }
}

inline json to_json(const SamplingReport& rep) {
  const auto& p = rep.params;
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"index", r.index},
                    {"alpha", to_string(r.alpha)},
                    {"forced", r.forced},
                    {"terms", r.terms},
                    {"checked", r.checked},
                    {"witnesses", r.witnesses}});
  }
  return {{"parameters",
           {{"d", p.d},
            {"norm", to_string(p.norm)},
            {"T", p.shift},
            {"samples", p.samples},
            {"forced", p.forced.size()},
            {"seed", p.seed},
            {"q_max", p.q_max},
            {"prime", p.prime},
            {"distribution", "uniform over {1,...,P-1}/P per coordinate"}}},
          {"rows", std::move(rows)},
          {"summary",
           {{"samples_with_witness", rep.samples_with_witness},
            {"fraction_with_witness_approx", rep.fraction_with_witness},
            {"mean_witness_rate_approx", rep.mean_witness_rate},
            {"note", "finite-horizon frequencies only; no asymptotic claim"}}}};
}

inline void write_sampling_csv(std::ostream& out, const SamplingReport& rep) {
  out << "index,alpha,forced,terms,checked,witnesses\n";
  for (const auto& r : rep.rows) {
    out << r.index << ",\"" << to_string(r.alpha) << "\"," << (r.forced ? "true" : "false") << ','
        << r.terms << ',' << r.checked << ',' << r.witnesses << '\n';
  }
}

}  // namespace kronecker
