#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "edgelat/rational.hpp"

namespace edgelat {

// Exit codes: 0 success, 1 mathematical counterexample, 2 usage error,
// 3 uncertified comparison (insufficient precision).
inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUncertified = 3;

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  long n_lo = 0, n_hi = 0;   // verify range
  long n = 0;                // scan
  long m_max = 0;            // poisson
  std::vector<long> n_list;  // residual
  int grid_points = 401;
  int k = 1;
  std::string dist = "bernoulli:1/2";
  BigRational p;
  int precision_bits = 192;
  int jobs = 0;  // 0 = library default
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty = stdout
};

// Parses argv (without the program name) and runs the requested command.
// All regular output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Environment variable consulted for the default precision.
inline constexpr const char* kPrecisionEnvVar = "EDGELAT_PRECISION_BITS";

// 17-significant-digit formatting used for every CSV numeric field.
std::string format_double(double v);

}  // namespace edgelat
