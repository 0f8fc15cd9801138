// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce identical results while at it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "edgelat/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

void report(const char* kernel, double serial_s, double parallel_s, bool identical) {
  std::printf("%-24s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  identical %s\n", kernel,
              serial_s, parallel_s, serial_s / parallel_s, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  long verify_max = argc > 1 ? std::atol(argv[1]) : 300;
  long poisson_max = argc > 2 ? std::atol(argv[2]) : 1500;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  {
    edgelat::RangeVerification rs, rp;
    double ts = timed([&] { rs = edgelat::verify_chvatal_range_serial(2, verify_max); });
    double tp = timed([&] { rp = edgelat::verify_chvatal_range(2, verify_max, true); });
    bool same = rs.reports.size() == rp.reports.size();
    for (size_t i = 0; same && i < rs.reports.size(); ++i)
      same = rs.reports[i].argmin_m == rp.reports[i].argmin_m &&
             rs.reports[i].unimodal == rp.reports[i].unimodal;
    report("verify range", ts, tp, same);
  }

  {
    edgelat::PoissonMonotonicityReport rs, rp;
    double ts = timed([&] { rs = edgelat::poisson_chain_serial(poisson_max, 192); });
    double tp = timed([&] { rp = edgelat::poisson_chain(poisson_max, 192, true); });
    bool same = rs.all_hold == rp.all_hold && rs.all_certified == rp.all_certified &&
                rs.problems.size() == rp.problems.size();
    report("poisson chain", ts, tp, same);
  }

  {
    std::vector<long> ns = {256, 512, 1024, 2048, 4096};
    auto dist = edgelat::StudyDistribution::bernoulli(edgelat::BigRational(1, 2));
    edgelat::GridSpec grid;
    edgelat::ResidualStudy ss, sp;
    double ts = timed([&] { ss = edgelat::residual_study(dist, 4, ns, grid, 192, false); });
    double tp = timed([&] { sp = edgelat::residual_study(dist, 4, ns, grid, 192, true); });
    bool same = ss.rows.size() == sp.rows.size();
    for (size_t i = 0; same && i < ss.rows.size(); ++i)
      same = ss.rows[i].sup_residual == sp.rows[i].sup_residual;
    report("residual study", ts, tp, same);
  }
  return 0;
}
