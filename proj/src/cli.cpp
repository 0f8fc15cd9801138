#include "edgelat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "edgelat/batch.hpp"
#include "edgelat/chvatal.hpp"
#include "edgelat/exactprob.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace edgelat {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using ordered_json = nlohmann::ordered_json;

int default_precision_bits(std::ostream& err) {
  const char* env = std::getenv(kPrecisionEnvVar);
  if (env == nullptr) return 192;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 64) {
    err << "warning: ignoring invalid " << kPrecisionEnvVar << "='" << env << "'\n";
    return 192;
  }
  return static_cast<int>(v);
}

void apply_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

ordered_json summary_to_json(const ChvatalSummary& s) {
  ordered_json j;
  j["n"] = s.n;
  j["argmin"] = s.argmin_m;
  j["target"] = s.target_m;
  j["unimodal"] = s.unimodal;
  j["matches"] = s.matches_conjecture;
  j["sign_changes"] = s.sign_changes;
  return j;
}

std::string summary_to_csv(const ChvatalSummary& s) {
  std::ostringstream os;
  os << s.n << ',' << s.argmin_m << ',' << s.target_m << ',' << (s.unimodal ? 1 : 0) << ','
     << (s.matches_conjecture ? 1 : 0) << ',';
  for (size_t i = 0; i < s.sign_changes.size(); ++i) {
    if (i) os << ';';
    os << s.sign_changes[i];
  }
  return os.str();
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  apply_jobs(cfg.jobs);
  RangeVerification v = verify_chvatal_range(cfg.n_lo, cfg.n_hi, true);
  if (cfg.format == OutputFormat::json) {
    for (const auto& s : v.reports) out << summary_to_json(s).dump() << '\n';
  } else {
    out << "n,argmin,target,unimodal,matches,sign_changes\n";
    for (const auto& s : v.reports) out << summary_to_csv(s) << '\n';
  }
  if (!v.all_match || !v.all_unimodal) {
    const auto& bad = *std::find_if(v.reports.begin(), v.reports.end(), [](const auto& s) {
      return !s.matches_conjecture || !s.unimodal;
    });
    err << "counterexample at n=" << bad.n << ": argmin=" << bad.argmin_m
        << " target=" << bad.target_m << " unimodal=" << (bad.unimodal ? 1 : 0) << '\n';
    return kExitCounterexample;
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto rows = scan_fixed_n(cfg.n, cfg.grid_points);
  out << "p,cdf_le,cdf_lt,rp_approx,rp_residual\n";
  for (const auto& r : rows) {
    out << rational_to_string(r.p) << ',' << rational_to_string(r.cdf_le) << ','
        << rational_to_string(r.cdf_lt) << ',' << format_double(r.rp_approx) << ','
        << format_double(r.rp_residual) << '\n';
  }
  return kExitOk;
}

int cmd_residual(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  apply_jobs(cfg.jobs);
  StudyDistribution sd = StudyDistribution::bernoulli(BigRational(1, 2));
  if (cfg.dist == "poisson1") {
    sd = StudyDistribution::poisson1();
  } else if (cfg.dist.rfind("bernoulli:", 0) == 0) {
    sd = StudyDistribution::bernoulli(rational_from_string(cfg.dist.substr(10)));
    if (sd.p <= 0 || sd.p >= 1) throw CLI::ValidationError("--dist p must lie in (0,1)");
  } else {
    throw CLI::ValidationError("--dist must be bernoulli:<num/den> or poisson1");
  }
  GridSpec grid;
  grid.points = cfg.grid_points;
  ResidualStudy study =
      residual_study(sd, cfg.k, cfg.n_list, grid, cfg.precision_bits, true);
  out << "n,sup_residual,in_guarantee\n";
  for (const auto& r : study.rows)
    out << r.n << ',' << format_double(r.sup_residual) << ',' << (r.in_guarantee ? 1 : 0)
        << '\n';
  if (study.slope.has_value()) {
    out << "slope," << format_double(*study.slope) << ",\n";
  } else {
    err << "warning: fewer than 3 qualified n values; slope omitted\n";
  }
  return kExitOk;
}

int cmd_poisson(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  apply_jobs(cfg.jobs);
  PoissonMonotonicityReport rep = poisson_chain(cfg.m_max, cfg.precision_bits, true);
  out << "m_max=" << rep.m_max << " precision_bits=" << rep.precision_bits
      << " pairs_checked=" << rep.pairs_checked << '\n';
  out << "all_hold=" << (rep.all_hold ? 1 : 0)
      << " all_certified=" << (rep.all_certified ? 1 : 0) << '\n';
  for (const auto& c : rep.problems) {
    out << "problem m=" << c.m << " strict_increasing=" << c.strict_increasing
        << " nonstrict_decreasing=" << c.nonstrict_decreasing
        << " strict_below_half=" << c.strict_below_half
        << " nonstrict_above_half=" << c.nonstrict_above_half
        << " certified=" << c.certified << '\n';
  }
  if (!rep.all_certified) {
    err << "uncertified comparisons; increase --precision-bits\n";
    return kExitUncertified;
  }
  if (!rep.all_hold) {
    err << "certified violation of the monotonicity chains\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice-corrected Edgeworth expansions and exact binomial tail verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.precision_bits = default_precision_bits(err);

  auto* verify = app.add_subcommand("verify", "Verify the binomial tail minimum over a range of n");
  long n_max = 0;
  std::string n_range;
  verify->add_option("--n-max", n_max, "Verify all 2 <= n <= N");
  verify->add_option("--n-range", n_range, "Verify A..B");
  verify->add_option("--jobs", cfg.jobs, "Worker threads (0 = default)");
  std::string format = "csv";
  verify->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", cfg.out_path, "Output file (default stdout)");

  auto* scan = app.add_subcommand("scan", "Exact sawtooth scan of P(Bi(n,p) <= np) over p");
  scan->add_option("--n", cfg.n, "Number of trials")->required();
  scan->add_option("--grid-points", cfg.grid_points, "Uniform grid points in (0,1)");
  scan->add_option("--out", cfg.out_path, "Output file (default stdout)");

  auto* residual = app.add_subcommand("residual", "Expansion residual study over a list of n");
  residual->add_option("--dist", cfg.dist, "bernoulli:<num/den> or poisson1");
  residual->add_option("--k", cfg.k, "Expansion order")->check(CLI::Range(1, 8));
  residual->add_option("--n-list", cfg.n_list, "Comma-separated n values")
      ->required()
      ->delimiter(',');
  residual->add_option("--grid-points", cfg.grid_points, "Scan grid points");
  residual->add_option("--precision-bits", cfg.precision_bits, "Oracle precision");
  residual->add_option("--jobs", cfg.jobs, "Worker threads (0 = default)");
  residual->add_option("--out", cfg.out_path, "Output file (default stdout)");

  auto* poisson = app.add_subcommand("poisson", "Certify Poisson median monotonicity chains");
  poisson->add_option("--m-max", cfg.m_max, "Largest mean checked")->required();
  poisson->add_option("--precision-bits", cfg.precision_bits, "Certification precision");
  poisson->add_option("--jobs", cfg.jobs, "Worker threads (0 = default)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);

    if (verify->parsed()) {
      if (n_max > 0 && !n_range.empty())
        throw CLI::ValidationError("use either --n-max or --n-range");
      if (n_max > 0) {
        cfg.n_lo = 2;
        cfg.n_hi = n_max;
      } else if (!n_range.empty()) {
        auto dots = n_range.find("..");
        if (dots == std::string::npos)
          throw CLI::ValidationError("--n-range must look like A..B");
        cfg.n_lo = std::stol(n_range.substr(0, dots));
        cfg.n_hi = std::stol(n_range.substr(dots + 2));
      } else {
        throw CLI::ValidationError("verify needs --n-max or --n-range");
      }
      if (cfg.n_lo < 2 || cfg.n_hi < cfg.n_lo)
        throw CLI::ValidationError("verify range must satisfy 2 <= A <= B");
    }
    if (scan->parsed() && cfg.n < 2) throw CLI::ValidationError("--n must be >= 2");
    if (scan->parsed() && cfg.grid_points < 2)
      throw CLI::ValidationError("--grid-points must be >= 2");
    if (poisson->parsed() && cfg.m_max < 1)
      throw CLI::ValidationError("--m-max must be >= 1");
    if (cfg.precision_bits < 64)
      throw CLI::ValidationError("--precision-bits must be >= 64");
    cfg.format = (format == "json") ? OutputFormat::json : OutputFormat::csv;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path, std::ios::binary);
      if (!file) {
        err << "cannot open output file: " << cfg.out_path << '\n';
        return kExitUsage;
      }
      sink = &file;
    }

    if (verify->parsed()) return cmd_verify(cfg, *sink, err);
    if (scan->parsed()) return cmd_scan(cfg, *sink, err);
    if (residual->parsed()) return cmd_residual(cfg, *sink, err);
    if (poisson->parsed()) return cmd_poisson(cfg, *sink, err);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace edgelat
