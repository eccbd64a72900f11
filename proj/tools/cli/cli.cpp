#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cltlab/approx.hpp"
#include "cltlab/binomial.hpp"
#include "cltlab/decompose.hpp"
#include "cltlab/dist_io.hpp"
#include "cltlab/dml.hpp"
#include "cltlab/error.hpp"
#include "cltlab/lattice.hpp"
#include "cltlab/pipeline.hpp"

namespace cltlab::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// Rethrows a core error with the offending option named in front.
template <class F>
auto for_field(std::string_view field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(field) + ": " + e.message());
  }
}

long parse_long(std::string_view field, std::string_view text) {
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Parse, std::string(field) + ": not an integer '" + std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view field, std::string_view text) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Parse, std::string(field) + ": not a finite number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

enum class Format { Csv, Json };

struct Common {
  std::string format = "csv";
  bool json_flag = false;
  std::uint64_t seed = 0;
  std::string out_path;

  Format fmt() const { return json_flag || format == "json" ? Format::Json : Format::Csv; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--json", c.json_flag, "Shorthand for --format json");
  sub->add_option("--seed", c.seed, "Random seed (default 0)");
  sub->add_option("--out", c.out_path, "Write output to PATH instead of standard output");
}

FiniteDist dist_option(std::string_view text) {
  return for_field("--dist", [&] { return parse_dist_text(text); });
}

// ---- subcommands: each writes its full output into `os` ----

void cmd_decompose(const std::string& dist_text, Format fmt, std::ostream& os) {
  const FiniteDist d = dist_option(dist_text);
  const Mixture m = for_field("--dist", [&] { return decompose(d); });
  if (fmt == Format::Json) {
    os << mixture_to_json(m) << '\n';
    return;
  }
  os << "component,weight,a,b,p_pos\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& c = m.components()[i];
    os << i << ',' << c.weight.str() << ',';
    if (c.component.degenerate()) {
      os << "0,0,\n";
    } else {
      os << c.component.pos().str() << ',' << c.component.neg().str() << ',' << c.component.prob_pos().str()
         << '\n';
    }
  }
}

void cmd_convolve(const std::string& dist_text, long n, const std::string& mode, Format fmt, std::ostream& os) {
  const FiniteDist d = dist_option(dist_text);
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "--n: must be >= 1");
  if (mode == "exact") {
    const FiniteDist law = convolve_power_exact(d, n);
    if (fmt == Format::Json) {
      os << dist_to_json(law) << '\n';
    } else {
      os << "value,prob\n";
      for (const auto& a : law.atoms()) os << a.value.str() << ',' << a.prob.str() << '\n';
    }
    return;
  }
  const LatticeDist law = convolve_power_lattice(d, n);
  if (fmt == Format::Json) {
    json j;
    j["offset"] = law.offset.str();
    j["step"] = law.step.str();
    j["probs"] = law.probs;
    os << j.dump() << '\n';
    return;
  }
  os << "value,prob\n";
  for (std::size_t k = 0; k < law.probs.size(); ++k) {
    if (law.probs[k] == 0.0) continue;
    os << law.value_at(k).str() << ',' << format_double(law.probs[k]) << '\n';
  }
}

void cmd_clt_table(const std::string& dist_text, const std::string& n_list, const std::string& grid,
                   const std::string& mode, Format fmt, std::ostream& os) {
  CltExperiment e;
  e.dist = standardize(dist_option(dist_text));
  e.n_list = parse_n_list(n_list);
  e.x_grid = parse_grid(grid);
  e.mode = mode == "exact" ? ConvolutionMode::Exact : ConvolutionMode::LatticeFloat;
  const std::vector<ConvergenceRow> rows = run_clt_table(e);
  if (fmt == Format::Json) {
    json j;
    j["dist"] = format_dist_text(e.dist);
    j["mode"] = mode;
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back({{"n", r.n}, {"sup_abs_err", r.statistic}});
    os << j.dump() << '\n';
    return;
  }
  os << "n,sup_abs_err\n";
  for (const auto& r : rows) os << r.n << ',' << format_double(r.statistic) << '\n';
}

void cmd_dml_table(const std::string& p_text, const std::string& n_list, Format fmt, std::ostream& os) {
  const Rational p = for_field("--p", [&] { return Rational::parse(p_text); });
  const std::vector<long> ns = parse_n_list(n_list);
  const std::vector<DmlRow> rows = for_field("--p", [&] { return dml_table(p, ns); });
  if (fmt == Format::Json) {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"n", r.n}, {"p", r.p.str()}, {"d_k", r.d_k}, {"stirling_ratio", r.stirling_ratio}});
    }
    os << json{{"rows", j}}.dump() << '\n';
    return;
  }
  os << "n,p,d_k,stirling_ratio\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.p.str() << ',' << format_double(r.d_k) << ',' << format_double(r.stirling_ratio) << '\n';
  }
}

void cmd_stirling(const std::string& n_list, Format fmt, std::ostream& os) {
  const std::vector<long> ns = parse_n_list(n_list);
  if (fmt == Format::Json) {
    json j = json::array();
    for (long n : ns) j.push_back({{"n", n}, {"stirling_ratio", stirling_ratio(n)}});
    os << json{{"rows", j}}.dump() << '\n';
    return;
  }
  os << "n,stirling_ratio\n";
  for (long n : ns) os << n << ',' << format_double(stirling_ratio(n)) << '\n';
}

void cmd_lln_check(const std::string& dist_text, const std::string& weights_text, long n, std::uint64_t seed,
                   Format fmt, std::ostream& os) {
  if (dist_text.empty() == weights_text.empty()) {
    throw Error(ErrorKind::InvalidArgument, "lln-check: give exactly one of --dist or --weights");
  }
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "--n: must be >= 1");
  ThetaFrequencyReport r;
  if (!dist_text.empty()) {
    const FiniteDist d = dist_option(dist_text);
    const Mixture m = for_field("--dist", [&] { return decompose(d); });
    r = verify_theta_lln(m, n, seed);
  } else {
    std::vector<Rational> w;
    for (auto tok : split(weights_text, ',')) {
      w.push_back(for_field("--weights", [&] { return Rational::parse(tok); }));
    }
    // Same validation a mixture applies to its weights.
    std::vector<MixtureComponent> comps;
    for (const auto& x : w) comps.push_back({x, TwoValued::zero()});
    for_field("--weights", [&] { return Mixture::make(comps); });
    r = verify_theta_lln(w, n, seed);
  }
  if (fmt == Format::Json) {
    json comps = json::array();
    for (std::size_t i = 0; i < r.m; ++i) {
      comps.push_back({{"component", i},
                       {"weight", r.weights[i].str()},
                       {"count", r.counts[i]},
                       {"emp_freq", r.frequencies[i]},
                       {"abs_err", std::abs(r.frequencies[i] - r.weights[i].to_double())}});
    }
    os << json{{"n", r.n}, {"seed", seed}, {"max_abs_freq_err", r.max_abs_freq_err}, {"components", comps}}.dump()
       << '\n';
    return;
  }
  os << "component,weight,emp_freq,abs_err\n";
  for (std::size_t i = 0; i < r.m; ++i) {
    os << i << ',' << r.weights[i].str() << ',' << format_double(r.frequencies[i]) << ','
       << format_double(std::abs(r.frequencies[i] - r.weights[i].to_double())) << '\n';
  }
}

ContinuousSource family_option(const std::string& family, double noise) {
  return for_field("--family", [&] { return ContinuousSource::from_name(family, noise); });
}

void cmd_approx(const std::string& family, double noise, double eta, std::size_t max_cells, Format fmt,
                std::ostream& os) {
  const ContinuousSource src = family_option(family, noise);
  const QuantizerResult q = for_field("--eta", [&] { return quantize(src, eta, max_cells); });
  json report;
  report["family"] = src.name();
  report["eta_requested"] = q.eta_requested;
  report["eta_achieved"] = q.eta_achieved;
  report["cells"] = q.cells;
  report["atoms"] = q.simple.size();
  report["mean"] = mean(q.simple).str();
  report["variance_minus_one"] = (variance(q.simple) - Rational(1)).to_double();
  json schedule = json::array();
  for (const auto& [k, v] : q.schedule) schedule.push_back({{"cells", k}, {"error_before_correction", v}});
  report["schedule"] = schedule;
  if (fmt == Format::Json) {
    report["simple"] = format_dist_text(q.simple);
    os << report.dump() << '\n';
    return;
  }
  os << format_dist_text(q.simple) << '\n' << report.dump() << '\n';
}

void cmd_cheby_check(const std::string& family, double noise, const ChebyshevCheckConfig& cfg, Format fmt,
                     std::ostream& os) {
  const ContinuousSource src = family_option(family, noise);
  const ChebyshevReport r = chebyshev_check(src, cfg);
  if (fmt == Format::Json) {
    os << json{{"family", src.name()},     {"delta", cfg.delta},        {"epsilon", cfg.epsilon},
               {"n", cfg.n},               {"samples", cfg.samples},    {"seed", cfg.seed},
               {"eta", r.eta},             {"eta_achieved", r.eta_achieved}, {"cells", r.cells},
               {"bound", r.bound},         {"empirical", r.empirical},  {"mc_band", r.mc_band},
               {"pass", r.pass},           {"x", cfg.x},                {"p_s", r.p_s},
               {"p_t", r.p_t},             {"cdf_gap", r.cdf_gap},      {"cdf_gap_band", r.cdf_gap_band},
               {"cdf_pass", r.cdf_pass}}
              .dump()
       << '\n';
    return;
  }
  os << "bound,empirical,mc_band,pass\n"
     << format_double(r.bound) << ',' << format_double(r.empirical) << ',' << format_double(r.mc_band) << ','
     << (r.pass ? "true" : "false") << '\n';
}

bool cmd_verify(std::uint64_t seed, int trials, Format fmt, std::ostream& os) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials: must be >= 1");
  const std::vector<VerifyOutcome> outcomes = run_verify_suite(seed, trials);
  bool all = true;
  for (const auto& o : outcomes) all = all && o.pass;
  if (fmt == Format::Json) {
    json rows = json::array();
    for (const auto& o : outcomes) rows.push_back({{"property", o.property}, {"pass", o.pass}, {"detail", o.detail}});
    os << json{{"seed", seed}, {"trials", trials}, {"all_pass", all}, {"properties", rows}}.dump() << '\n';
    return all;
  }
  for (const auto& o : outcomes) {
    os << (o.pass ? "PASS " : "FAIL ") << o.property;
    if (!o.detail.empty()) os << " (" << o.detail << ')';
    os << '\n';
  }
  return all;
}

}  // namespace

std::vector<long> parse_n_list(std::string_view text) {
  std::vector<long> ns;
  for (auto tok : split(text, ',')) ns.push_back(parse_long("--n-list", tok));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw Error(ErrorKind::InvalidArgument, "--n-list: entries must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1]) throw Error(ErrorKind::InvalidArgument, "--n-list: must be strictly increasing");
  }
  return ns;
}

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(ErrorKind::Parse, "--grid: expected lo:hi:step");
  const double lo = parse_real("--grid", parts[0]);
  const double hi = parse_real("--grid", parts[1]);
  const double step = parse_real("--grid", parts[2]);
  if (!(step > 0)) throw Error(ErrorKind::InvalidArgument, "--grid: step must be > 0");
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "--grid: lo must not exceed hi");
  return make_grid(lo, hi, step);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and lattice computations around the central limit theorem", "cltlab"};
  app.require_subcommand(1);

  Common common;
  std::string dist_text, weights_text, n_list = "16,64,256,1024,4096", grid = "-4:4:0.05", mode = "lattice";
  std::string p_text = "1/2", family = "uniform";
  long n = 1;
  double eta = 0.01, noise = 0.0;
  std::size_t max_cells = kMaxQuantizerCells;
  int trials = 200;
  ChebyshevCheckConfig cheby;

  auto* decompose_cmd = app.add_subcommand("decompose", "Split a mean-zero simple law into two-valued components");
  decompose_cmd->add_option("--dist", dist_text, "Law as v:p,v:p,...")->required();

  auto* convolve_cmd = app.add_subcommand("convolve", "Law of the sum of n i.i.d. copies");
  convolve_cmd->add_option("--dist", dist_text, "Law as v:p,v:p,...")->required();
  convolve_cmd->add_option("--n", n, "Number of copies")->required();
  convolve_cmd->add_option("--mode", mode, "exact | lattice")->check(CLI::IsMember({"exact", "lattice"}));

  auto* clt_cmd = app.add_subcommand("clt-table", "sup |P(S_n/sqrt(n) <= x) - Phi(x)| over a grid, per n");
  clt_cmd->add_option("--dist", dist_text, "Law as v:p,v:p,... (standardized first)")->required();
  clt_cmd->add_option("--n-list", n_list, "Comma-separated increasing n");
  clt_cmd->add_option("--grid", grid, "lo:hi:step");
  clt_cmd->add_option("--mode", mode, "exact | lattice")->check(CLI::IsMember({"exact", "lattice"}));

  auto* dml_cmd = app.add_subcommand("dml-table", "Kolmogorov distance of the standardized binomial to Phi");
  dml_cmd->add_option("--p", p_text, "Success probability, rational");
  dml_cmd->add_option("--n-list", n_list, "Comma-separated increasing n");

  auto* stirling_cmd = app.add_subcommand("stirling", "n! / (sqrt(2 pi n) (n/e)^n)");
  stirling_cmd->add_option("--n-list", n_list, "Comma-separated increasing n");

  auto* lln_cmd = app.add_subcommand("lln-check", "Empirical component frequencies of the selector");
  lln_cmd->add_option("--dist", dist_text, "Mean-zero law; its decomposition supplies the weights");
  lln_cmd->add_option("--weights", weights_text, "Comma-separated rational weights");
  lln_cmd->add_option("--n", n, "Number of draws")->required();

  auto* approx_cmd = app.add_subcommand("approx", "Quantize a continuous source to a simple law");
  approx_cmd->add_option("--family", family, "uniform | exp | laplace | two-point");
  approx_cmd->add_option("--noise", noise, "Noise half-width for two-point");
  approx_cmd->add_option("--eta", eta, "Target E[(X - Y)^2]");
  approx_cmd->add_option("--max-cells", max_cells, "Cell budget");

  auto* cheby_cmd = app.add_subcommand("cheby-check", "Monte Carlo check of the Chebyshev coupling bound");
  cheby_cmd->add_option("--family", family, "uniform | exp | laplace | two-point");
  cheby_cmd->add_option("--noise", noise, "Noise half-width for two-point");
  cheby_cmd->add_option("--delta", cheby.delta, "Coupling tolerance");
  cheby_cmd->add_option("--epsilon", cheby.epsilon, "Target probability");
  cheby_cmd->add_option("--n", cheby.n, "Terms per replication");
  cheby_cmd->add_option("--samples", cheby.samples, "Replications");
  cheby_cmd->add_option("--x", cheby.x, "Probe point for the CDF comparison");

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite and print pass/fail per property");
  verify_cmd->add_option("--trials", trials, "Random instances per property");

  for (auto* sub : app.get_subcommands({})) add_common(sub, common);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << target->help();
    return kExitInvalid;
  }

  const Format fmt = common.fmt();
  std::ostringstream buffer;
  bool ok = true;
  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "decompose") {
      cmd_decompose(dist_text, fmt, buffer);
    } else if (name == "convolve") {
      cmd_convolve(dist_text, n, mode, fmt, buffer);
    } else if (name == "clt-table") {
      cmd_clt_table(dist_text, n_list, grid, mode, fmt, buffer);
    } else if (name == "dml-table") {
      cmd_dml_table(p_text, n_list, fmt, buffer);
    } else if (name == "stirling") {
      cmd_stirling(n_list, fmt, buffer);
    } else if (name == "lln-check") {
      cmd_lln_check(dist_text, weights_text, n, common.seed, fmt, buffer);
    } else if (name == "approx") {
      cmd_approx(family, noise, eta, max_cells, fmt, buffer);
    } else if (name == "cheby-check") {
      cheby.seed = common.seed;
      cmd_cheby_check(family, noise, cheby, fmt, buffer);
    } else if (name == "verify") {
      ok = cmd_verify(common.seed, trials, fmt, buffer);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_budget() ? kExitBudget : kExitInvalid;
  }

  if (common.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(common.out_path, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "error: --out: cannot write '" << common.out_path << "'\n";
      return kExitInvalid;
    }
  }
  return ok ? kExitOk : kExitInvalid;
}

}  // namespace cltlab::cli
