// Acceptance runner: `acceptance N` checks criterion N and prints exactly one
// PASS/FAIL line with the measured values. Exit status 0 on PASS.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lmeasure/cli.hpp"
#include "lmeasure/densities.hpp"
#include "lmeasure/estimator.hpp"
#include "lmeasure/gaussian_baseline.hpp"
#include "lmeasure/laplace.hpp"
#include "lmeasure/mellin.hpp"
#include "lmeasure/processes.hpp"
#include "lmeasure/special_functions.hpp"
#include "lmeasure/stats.hpp"
#include "oracle_values.hpp"

using namespace lmeasure;

namespace {

// Tolerances and budgets.
constexpr double kSigmas = 3.0;
constexpr double kC1StderrMax = 0.002;
constexpr double kC1Seconds = 30.0;
constexpr double kC2ExactTol = 1e-12;
constexpr int kC2Pairs = 20;
constexpr int kC2MinMcPass = 18;
constexpr double kC4KsAlpha = 1e-3;
constexpr double kC4CorrSigmas = 4.0;
constexpr double kC5Tol = 1e-10;
constexpr double kC6Tol = 1e-8;
constexpr double kC7RatioTol = 1e-6;
constexpr double kC7K0Tol = 1e-8;
constexpr double kC7Seconds = 60.0;
constexpr double kC8DigammaTol = 1e-12;
constexpr double kC8GapAt40 = 0.03;
constexpr double kC9MinRate = 0.01;
constexpr double kC9RelGap = 0.25;  // |gap(n_max)| <= this fraction of |L|
constexpr double kC10GapAt100 = 0.02;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Verdict c1() {
  const auto t0 = std::chrono::steady_clock::now();
  McOptions opt;
  opt.plan = StreamPlan{1000000, 1, 1};
  const PositiveReal theta(1.0);
  const auto f = StepFunction::constant(2.0);
  const auto r = mc_laplace(theta, f, opt);
  const double secs = seconds_since(t0);
  const double exact = analytic_laplace(theta, f);
  const double z = (r.estimate - 0.5) / r.std_error;
  const bool pass = exact == 0.5 && std::abs(z) <= kSigmas && r.std_error < kC1StderrMax &&
                    secs < kC1Seconds;
  return {pass, fmt("estimate=%.6f stderr=%.2e z=%.2f analytic=%.17g time=%.1fs", r.estimate,
                    r.std_error, z, exact, secs)};
}

Verdict c2() {
  RngStream rng(2024, 0);
  double worst_residual = 0.0;
  int mc_pass = 0;
  double worst_z = 0.0;
  for (int i = 0; i < kC2Pairs; ++i) {
    std::vector<double> log_a(4), fv(4);
    for (auto& v : log_a) v = -0.3 + 0.6 * rng.uniform();
    double mean = 0.0;
    for (double v : log_a) mean += v / 4;
    std::vector<double> av(4);
    for (int k = 0; k < 4; ++k) av[k] = std::exp(log_a[k] - mean);  // centred: a in M_0
    for (auto& v : fv) v = 1.2 + 1.8 * rng.uniform();
    const auto a = StepFunction::uniform_pieces(av);
    const auto f = StepFunction::uniform_pieces(fv);
    McOptions opt;
    opt.plan = StreamPlan{100000, static_cast<std::uint64_t>(100 + i), 4};
    const auto rep = quasi_invariance_check(PositiveReal(1.0), a, f, opt);
    const double residual = std::abs(analytic_laplace(PositiveReal(1.0), a * f) -
                                     analytic_laplace(PositiveReal(1.0), f));
    worst_residual = std::max({worst_residual, residual, rep.exact_residual});
    if (std::abs(rep.z_score) <= kSigmas) ++mc_pass;
    worst_z = std::max(worst_z, std::abs(rep.z_score));
  }
  const bool pass = worst_residual <= kC2ExactTol && mc_pass >= kC2MinMcPass;
  return {pass, fmt("max_exact_residual=%.2e mc_within_3sigma=%d/%d max|z|=%.2f", worst_residual,
                    mc_pass, kC2Pairs, worst_z)};
}

Verdict c3() {
  const std::vector<std::vector<double>> configs{{1.0}, {1.0, 1.0}, {0.5, 1.5}};
  const std::vector<double> sides{0.5, 1.0, 2.0};
  bool pass = true;
  double worst_z = 0.0;
  std::ostringstream detail;
  std::uint64_t seed = 31;
  for (const auto& w : configs) {
    const PartitionSpec spec(w);
    const auto res = estimate_box_mass(spec, sides, StreamPlan{1000000, seed++, 8});
    for (std::size_t i = 0; i < sides.size(); ++i) {
      const double exact = box_mass_L(spec, sides[i]);
      const double z = (res[i].estimate - exact) / res[i].std_error;
      worst_z = std::max(worst_z, std::abs(z));
      if (!(std::abs(z) <= kSigmas)) {
        pass = false;
        detail << " miss(n=" << w.size() << ",b=" << sides[i] << ",z=" << z << ")";
      }
    }
  }
  return {pass, fmt("9 boxes, max|z|=%.2f", worst_z) + detail.str()};
}

Verdict c4() {
  const PartitionSpec spec({0.5, 1.0, 1.5});
  const std::vector<double> breaks{0.0, 0.5 / 3.0, 1.5 / 3.0, 1.0};
  const StreamPlan plan{100000, 44, 4};
  bool pass = true;
  std::ostringstream detail;
  for (const char* route : {"marking", "intervals"}) {
    const bool marking = std::string(route) == "marking";
    const auto draws = collect_draws(plan, 3, [&](RngStream& rng, std::span<double> out) {
      const auto s = sample_gamma_process(PositiveReal(spec.theta()), kDefaultTailEps, rng);
      const auto parts = marking ? partition_sums(s, spec, rng) : aggregate_masses(s, breaks);
      std::copy(parts.begin(), parts.end(), out.begin());
    });
    double min_p = 1.0, max_corr_sigma = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double shape = spec.weights()[i];
      const auto ks = stats::ks_test(draws[i], [shape](double x) { return gamma_p(shape, x); });
      min_p = std::min(min_p, ks.p_value);
      for (int j = i + 1; j < 3; ++j) {
        const double r = stats::correlation(draws[i], draws[j]);
        max_corr_sigma = std::max(max_corr_sigma, std::abs(r) * std::sqrt(double(plan.n_samples)));
      }
    }
    pass = pass && min_p >= kC4KsAlpha && max_corr_sigma <= kC4CorrSigmas;
    detail << route << ": min_ks_p=" << fmt("%.3g", min_p)
           << " max|corr|/sigma=" << fmt("%.2f", max_corr_sigma) << "  ";
  }
  return {pass, detail.str()};
}

Verdict c5() {
  RngStream rng(55, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    std::vector<double> w(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = std::exp(-2.0 + 4.0 * rng.uniform());  // 0.14 .. 7.4
      x[i] = std::exp(-5.0 + 8.0 * rng.uniform());  // 0.007 .. 20
    }
    worst = std::max(worst, lemma1_pointwise_check(PartitionSpec(w), OrthantPoint(x)));
  }
  return {worst <= kC5Tol, fmt("1000 cases, max residual=%.2e", worst)};
}

Verdict c6() {
  const double grid[] = {0.3, 0.5, 1.0, 2.5};
  double worst = 0.0;
  for (double t1 : grid) {
    for (double t2 : grid) {
      worst = std::max(worst, semigroup_convolution_check(PositiveReal(t1), PositiveReal(t2)));
    }
  }
  return {worst <= kC6Tol, fmt("16 shape pairs, max error=%.2e", worst)};
}

Verdict c7() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_ratio = 0.0, worst_k0 = 0.0;
  for (int n : {2, 3}) {
    for (double lam : {0.5, 1.0, 2.0}) {
      const double ratio = F_contour(n, PositiveReal(lam)) / F_direct(n, PositiveReal(lam));
      worst_ratio = std::max(worst_ratio, std::abs(ratio - 1.0));
      if (n == 2) {
        const double k0 = 2.0 * bessel_k0(2.0 * lam);
        worst_k0 = std::max(worst_k0, std::abs(F_direct(2, PositiveReal(lam)) / k0 - 1.0));
        worst_k0 = std::max(worst_k0, std::abs(F_contour(2, PositiveReal(lam)) / k0 - 1.0));
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_ratio <= kC7RatioTol && worst_k0 <= kC7K0Tol && secs < kC7Seconds;
  return {pass, fmt("max|contour/direct-1|=%.2e max|F2/2K0-1|=%.2e time=%.2fs", worst_ratio,
                    worst_k0, secs)};
}

Verdict c8() {
  double worst_psi = 0.0;
  for (int k = -12; k <= 12; ++k) {
    const double lam = std::pow(10.0, k / 4.0);
    const auto s = solve_saddle(PositiveReal(lam));
    worst_psi = std::max(worst_psi, std::abs(digamma(s.gamma) - std::log(lam)));
  }
  bool envelope = true;
  double worst_gap40 = 0.0;
  std::ostringstream detail;
  for (double lam : {0.5, 1.0, 2.0}) {
    const auto study = L_limit_study(PositiveReal(lam), 40);
    envelope = envelope && study.envelope_ok;
    const double gap = study.rows.back().gap;
    worst_gap40 = std::max(worst_gap40, std::abs(gap));
    detail << fmt(" lambda=%g: C=%.3f gap40=%.4f", lam, study.fitted_C, gap);
  }
  const bool pass = worst_psi <= kC8DigammaTol && envelope && worst_gap40 < kC8GapAt40;
  return {pass, fmt("max|psi(gamma)-ln lambda|=%.1e envelope=%s max|gap40|=%.4f (limit %.2f);",
                    worst_psi, envelope ? "ok" : "violated", worst_gap40, kC8GapAt40) +
                    detail.str()};
}

Verdict c9() {
  bool pass = true;
  std::ostringstream detail;
  for (double lam : {0.05, 3.0, 10.0}) {
    const auto rows = divergence_experiment(PositiveReal(lam), RadiusSchedule::constant(1.0), 2, 60);
    const auto& last = rows.back();
    const auto& mid = rows[18];  // n = 20
    const double rate = std::abs(last.L);
    const bool ok = rate > kC9MinRate && std::abs(last.gap) <= kC9RelGap * rate &&
                    std::abs(last.gap) < std::abs(mid.gap) &&
                    std::signbit(last.log_D_over_n) == std::signbit(last.L);
    pass = pass && ok;
    detail << fmt(" lambda=%g: L=%.4f lnD60/60=%.4f gap20=%.4f gap60=%.4f;", lam, last.L,
                  last.log_D_over_n, mid.gap, last.gap);
  }
  return {pass, detail.str()};
}

Verdict c10() {
  const auto table = mp_convergence_table(uniform_grid(3.0, 61), {5, 10, 20, 50, 100, 200});
  double gap100 = 0.0;
  double worst_oracle = 0.0;
  std::ostringstream detail;
  for (const auto& row : table.rows) {
    if (row.n == 100) gap100 = row.sup_gap;
    for (const auto& o : oracle::kSphereSupGap) {
      if (static_cast<int>(o.x) == row.n) {
        worst_oracle = std::max(worst_oracle, std::abs(row.sup_gap / o.y - 1.0));
      }
    }
    detail << fmt(" %d:%.4g", row.n, row.sup_gap);
  }
  const bool pass = table.strictly_decreasing && gap100 <= kC10GapAt100;
  return {pass, fmt("decreasing=%s gap(100)=%.5f slope=%.3f max_rel_vs_oracle=%.1e; sup:",
                    table.strictly_decreasing ? "yes" : "no", gap100, table.loglog_slope,
                    worst_oracle) +
                    detail.str()};
}

Verdict c11() {
  const std::vector<std::vector<std::string>> runs = {
      {"sample", "--samples", "20", "--streams", "3", "--process", "lebesgue"},
      {"laplace", "--samples", "20000", "--streams", "8", "--seed", "5"},
      {"partition-sums", "--samples", "20000", "--streams", "8", "--format", "json"},
      {"box-mass", "--samples", "20000", "--streams", "6", "--partition", "0.5,1.5"},
      {"saddle", "--nmax", "20"},
      {"mp-demo", "--n", "5,20", "--samples", "2000", "--streams", "4"},
  };
  int identical = 0;
  for (const auto& args : runs) {
    std::ostringstream o1, o2, e1, e2;
    const int r1 = cli::run(args, o1, e1);
    const int r2 = cli::run(args, o2, e2);
    if (r1 == 0 && r2 == 0 && o1.str() == o2.str() && !o1.str().empty()) ++identical;
  }
  const int total = static_cast<int>(runs.size());
  return {identical == total, fmt("%d/%d subcommand runs byte-identical on repeat", identical, total)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{c1, c2, c3, c4, c5, c6,
                                                       c7, c8, c9, c10, c11};
  const int which = argc > 1 ? std::atoi(argv[1]) : 0;
  if (which < 1 || which > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "usage: acceptance N   (N = 1..%zu)\n", criteria.size());
    return 2;
  }
  Verdict v{false, ""};
  try {
    v = criteria[which - 1]();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s c%d: %s\n", v.pass ? "PASS" : "FAIL", which, v.detail.c_str());
  return v.pass ? 0 : 1;
}
