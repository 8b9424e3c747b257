#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kronecker/io.hpp"
#include "kronecker/kronecker.hpp"

namespace {

using namespace kronecker;

struct Options {
  std::string alpha;
  std::string input;
  std::string seq_path;
  std::string norm = "linf";
  std::size_t dim = 0;
  std::uint64_t q_max = 100000;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::uint64_t n_max = 2000;
  std::uint64_t seed = 0;
  std::uint64_t shift = 0;
  std::uint64_t target = 3;
  std::uint64_t budget = 200;
  std::uint64_t samples = 10;
  std::uint64_t prime = default_prime;
  std::uint64_t count = 0;
  std::string format = "json";
  std::string out;
  bool check = false;
  bool oracle = false;
  bool no_timestamp = false;
};

struct Output {
  std::string text;
  bool ok = true;
  std::string failure;
};

Output done(std::string text) { return {std::move(text), true, {}}; }

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string emit_json(json body, const Options& o) {
  if (!o.no_timestamp) body["timestamp"] = timestamp();
  return body.dump(2) + "\n";
}

AlphaSpec resolve_alpha(const Options& o) {
  detail::require(!o.alpha.empty(), "--alpha is required");
  return parse_alpha_spec(o.alpha, o.dim ? std::optional<std::size_t>(o.dim) : std::nullopt);
}

Output run_bda(const Options& o) {
  const auto spec = resolve_alpha(o);
  const auto seq = compute_best_approximations(spec.alpha, parse_norm(o.norm), o.q_max);
  if (o.format == "csv") return done(sequence_to_string(seq));
  json body = {{"command", "bda"}, {"alpha_spec", spec.spelling}, {"sequence", to_json(seq)}};
  return done(emit_json(std::move(body), o));
}

Output run_gaps(const Options& o) {
  const auto spec = resolve_alpha(o);
  const Norm norm = parse_norm(o.norm);
  detail::require(o.n_hi >= 1, "--nhi is required");
  const std::uint64_t lo = o.n_lo ? o.n_lo : 1;
  detail::require(lo <= o.n_hi, "--nlo must not exceed --nhi");
  detail::check_spectrum_args(spec.alpha, o.n_hi);

  std::optional<BestApproxSequence> seq;
  if (!o.oracle) seq = compute_best_approximations(spec.alpha, norm, o.n_hi);
  std::vector<CountComparisonRow> rows;
  std::uint64_t mismatched_d = 0;
  visit_orbit(spec.alpha, norm, [&](const auto& orbit) {
    IncrementalSpectrum spectrum(orbit);
    for (std::uint64_t n = 1; n <= o.n_hi; ++n) {
      spectrum.extend();
      if (n < lo) continue;
      CountComparisonRow row{n, std::nullopt, spectrum.distinct()};
      if (seq) row.g_fast = chevallier_count(*seq, n);
      if (o.check && seq) {
        for (std::uint64_t q = 0; q <= n; ++q) {
          if (orbit.to_distance(spectrum.nearest(q)) != nearest_distance_fast(*seq, q, n)) ++mismatched_d;
        }
      }
      rows.push_back(row);
    }
  });

  Output res;
  for (const auto& r : rows) {
    if (r.match() == false) {
      res.ok = false;
      res.failure = "fast and oracle counts differ at N=" + std::to_string(r.n);
      break;
    }
  }
  if (mismatched_d) {
    res.ok = false;
    res.failure = std::to_string(mismatched_d) + " D_q(N) values differ between routes";
  }
  if (o.format == "csv") {
    std::ostringstream os;
    write_count_csv(os, rows);
    res.text = os.str();
    return res;
  }
  json jrows = json::array();
  for (const auto& r : rows) {
    json row = {{"N", r.n}};
    row["g_fast"] = r.g_fast ? json(*r.g_fast) : json(nullptr);
    row["g_oracle"] = r.g_oracle ? json(*r.g_oracle) : json(nullptr);
    row["match"] = r.match() ? json(*r.match()) : json(nullptr);
    jrows.push_back(std::move(row));
  }
  json body = {{"command", "gaps"},
               {"alpha_spec", spec.spelling},
               {"rows", std::move(jrows)},
               {"spectrum", to_json(gap_spectrum(spec.alpha, norm, o.n_hi))}};
  if (o.check) body["d_mismatches"] = mismatched_d;
  res.text = emit_json(std::move(body), o);
  return res;
}

Output run_verify(const Options& o) {
  BestApproxSequence seq = [&] {
    if (!o.seq_path.empty()) {
      std::ifstream in(o.seq_path);
      detail::require(in.good(), "cannot read sequence file '" + o.seq_path + "'");
      return read_sequence(in);
    }
    return compute_best_approximations(resolve_alpha(o).alpha, parse_norm(o.norm), o.q_max);
  }();
  std::uint64_t shift = o.shift;
  if (shift == 0) {
    const auto k = contact_number(seq.norm, seq.alpha.dim());
    shift = k ? *k : (std::uint64_t{1} << seq.alpha.dim());
  }
  const auto sum = verify_sum_inequality(seq, shift, Quantifier::for_all);
  json body = {{"command", "verify"},
               {"alpha", to_string(seq.alpha)},
               {"norm", to_string(seq.norm)},
               {"terms", seq.size()},
               {"doubling_index", doubling_index(seq)},
               {"sum_inequality", to_json(sum)}};
  bool ok = sum.passed;
  if (seq.norm == Norm::linf && seq.size() >= 3) {
    const auto ratio = ratio_floor_check(seq);
    body["ratio_floor"] = to_json(ratio);
    ok = ok && ratio.passed;
  }
  Output res;
  res.ok = ok;
  if (!ok) res.failure = "inequality violated on the checked range";
  if (o.format == "csv") {
    std::ostringstream os;
    os << "check,shift,checked,violations,passed\n";
    os << "sum," << sum.shift << ',' << sum.checked_count() << ',' << sum.violations.size() << ','
       << (sum.passed ? "true" : "false") << '\n';
    if (body.contains("ratio_floor")) {
      const auto& r = body["ratio_floor"];
      os << "ratio_floor,," << r["checked"].get<std::size_t>() << ',' << r["violations"].size()
         << ',' << (r["passed"].get<bool>() ? "true" : "false") << '\n';
    }
    res.text = os.str();
  } else {
    res.text = emit_json(std::move(body), o);
  }
  return res;
}

Output run_cf(const Options& o) {
  const std::string text = !o.input.empty() ? o.input : o.alpha;
  detail::require(!text.empty(), "cf needs an input rational or continued fraction");
  const auto trimmed = std::string(detail::trim(text));
  const CFDescription cf = trimmed.front() == '[' ? parse_cf(trimmed) : cf_of(parse_rational(trimmed));
  std::size_t count = o.count;
  if (count == 0) count = cf.periodic() ? 10 : cf.finite_length();
  ConvergentTable table;
  if (count > 0) table = cf_convergents(cf, count);
  if (o.format == "csv") {
    std::ostringstream os;
    write_convergent_csv(os, table);
    return done(os.str());
  }
  json body = {{"command", "cf"}, {"input", trimmed}};
  body.update(to_json(cf));
  body["convergents"] = to_json(table);
  return done(emit_json(std::move(body), o));
}

Output run_search(const Options& o) {
  SearchParams p;
  p.d = o.dim ? o.dim : 2;
  p.norm = parse_norm(o.norm);
  p.target_g = o.target;
  p.budget = o.budget;
  p.seed = o.seed;
  p.n_max = o.n_max;
  p.prime = o.prime;
  if (!o.alpha.empty()) p.forced.push_back(parse_alpha_spec(o.alpha, p.d).alpha);
  const auto found = search_high_g(p);
  if (o.format == "csv") {
    std::ostringstream os;
    write_witnesses(os, found);
    return done(os.str());
  }
  json ws = json::array();
  for (const auto& w : found) ws.push_back(to_json(w));
  json body = {{"command", "search"},
               {"parameters",
                {{"d", p.d}, {"norm", to_string(p.norm)}, {"target_g", p.target_g},
                 {"budget", p.budget}, {"seed", p.seed}, {"N_max", p.n_max}, {"prime", p.prime}}},
               {"witnesses", std::move(ws)}};
  return done(emit_json(std::move(body), o));
}

Output run_sample(const Options& o) {
  SamplingParams p;
  p.d = o.dim ? o.dim : 1;
  p.norm = parse_norm(o.norm);
  p.shift = o.shift ? o.shift : 1;
  p.samples = o.samples;
  p.seed = o.seed;
  p.q_max = o.q_max;
  p.prime = o.prime;
  if (!o.alpha.empty()) p.forced.push_back(parse_alpha_spec(o.alpha, p.d).alpha);
  const auto rep = sample_doubling_violations(p);
  if (o.format == "csv") {
    std::ostringstream os;
    write_sampling_csv(os, rep);
    return done(os.str());
  }
  json body = {{"command", "sample"}};
  body.update(to_json(rep));
  return done(emit_json(std::move(body), o));
}

void print_config(const CLI::App& app, const std::string& command) {
  std::cerr << "# resolved config\ncommand=" << command << '\n';
  std::istringstream cfg(app.config_to_str(true, false));
  for (std::string line; std::getline(cfg, line);) {
    if (!line.empty() && line.front() != '[') std::cerr << line << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best approximations and gap statistics of Kronecker sequences"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  app.option_defaults()->always_capture_default();

  Options o;
  app.add_option("--alpha", o.alpha, "rationals \"2/7,3/11\", golden:depth=D, sqrt2:depth=D, random:prime=P,seed=S");
  app.add_option("--input", o.input, "rational or continued fraction for cf");
  app.add_option("--seq", o.seq_path, "sequence file for verify");
  app.add_option("--norm", o.norm)->check(CLI::IsMember({"l1", "l2", "linf"}));
  app.add_option("--dim", o.dim);
  app.add_option("--qmax", o.q_max)->check(CLI::PositiveNumber);
  app.add_option("--nlo", o.n_lo);
  app.add_option("--nhi", o.n_hi);
  app.add_option("--nmax", o.n_max)->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed);
  app.add_option("--shift", o.shift, "shift K (verify) or T (sample)");
  app.add_option("--target", o.target);
  app.add_option("--budget", o.budget);
  app.add_option("--samples", o.samples);
  app.add_option("--prime", o.prime);
  app.add_option("--count", o.count, "number of convergents for cf");
  app.add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out);
  app.add_flag("--check", o.check, "run fast and oracle routes and fail on mismatch");
  app.add_flag("--oracle", o.oracle, "use the oracle route only");
  app.add_flag("--no-timestamp", o.no_timestamp);

  const std::pair<const char*, Output (*)(const Options&)> commands[] = {
      {"bda", run_bda},       {"gaps", run_gaps},     {"verify", run_verify},
      {"cf", run_cf},         {"search", run_search}, {"sample", run_sample}};
  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    if (std::string(name) == "cf") sub->add_option("input", o.input);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  print_config(app, command);
  try {
    Output res;
    for (const auto& [name, fn] : commands) {
      if (command == name) res = fn(o);
    }
    if (o.out.empty()) {
      std::cout << res.text;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write output path '" << o.out << "'\n";
        return 2;
      }
      f << res.text;
    }
    if (!res.ok) {
      std::cerr << "error: " << res.failure << '\n';
      return 1;
    }
    return 0;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const invariant_violation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
