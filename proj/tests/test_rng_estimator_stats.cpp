#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "lmeasure/errors.hpp"
#include "lmeasure/estimator.hpp"
#include "lmeasure/rng.hpp"
#include "lmeasure/special_functions.hpp"
#include "lmeasure/stats.hpp"

using namespace lmeasure;

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    firsts.insert(x);
  }
  CHECK(firsts.size() == 100);
  CHECK(RngStream(42, 3).next() != c.next());
  CHECK(RngStream(42, 3).next() != d.next());
}

TEST_CASE("uniform stays in the open unit interval and normal has unit variance") {
  RngStream rng(7, 0);
  std::vector<double> u(200000), z(200000);
  for (auto& x : u) {
    x = rng.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  for (auto& x : z) x = rng.normal();
  CHECK(std::abs(stats::mean(u) - 0.5) < 5 * std::sqrt(1.0 / 12 / u.size()));
  CHECK(std::abs(stats::mean(z)) < 5 / std::sqrt(static_cast<double>(z.size())));
  CHECK(std::abs(stats::variance(z) - 1.0) < 5 * std::sqrt(2.0 / z.size()));
  const auto ks = stats::ks_test(z, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
  CHECK(ks.p_value > 1e-3);
}

TEST_CASE("stream plan splits samples") {
  StreamPlan plan{10, 1, 3};
  CHECK(plan.count_for(0) == 4);
  CHECK(plan.count_for(1) == 3);
  CHECK(plan.count_for(2) == 3);
  CHECK_THROWS_AS((StreamPlan{0, 1, 1}.validate()), DomainError);
  CHECK_THROWS_AS((StreamPlan{10, 1, 0}.validate()), DomainError);
}

TEST_CASE("estimates depend only on seed, streams and sample count") {
  auto draw = [](RngStream& rng) { return rng.uniform(); };
  const StreamPlan plan{100000, 9, 4};
  const auto r1 = estimate_mean(plan, draw);
  const auto r2 = estimate_mean(plan, draw);
  CHECK(r1.estimate == r2.estimate);
  CHECK(r1.std_error == r2.std_error);
  CHECK(r1.n_samples == 100000);
  CHECK(std::abs(r1.estimate - 0.5) < 4 * r1.std_error);
  CHECK(r1.std_error == doctest::Approx(std::sqrt(1.0 / 12 / 1e5)).epsilon(0.02));
}

TEST_CASE("estimate_means and collect_draws see the same draws") {
  auto draw = [](RngStream& rng, std::span<double> out) {
    const double u = rng.uniform();
    out[0] = u;
    out[1] = u * u;
  };
  const StreamPlan plan{5001, 3, 3};
  const auto means = estimate_means(plan, 2, draw);
  const auto raw = collect_draws(plan, 2, draw);
  REQUIRE(raw.size() == 2);
  REQUIRE(raw[0].size() == 5001);
  CHECK(stats::mean(raw[0]) == doctest::Approx(means[0].estimate).epsilon(1e-13));
  CHECK(stats::mean(raw[1]) == doctest::Approx(means[1].estimate).epsilon(1e-13));
  CHECK(std::abs(means[1].estimate - 1.0 / 3) < 4 * means[1].std_error);
}

TEST_CASE("moment accumulator merges like one pass") {
  std::vector<double> v;
  RngStream rng(1, 0);
  for (int i = 0; i < 1000; ++i) v.push_back(rng.normal() * 3 + 1e6);
  MomentAccumulator whole, left, right;
  whole.add_block(v);
  left.add_block(std::span(v).first(317));
  right.add_block(std::span(v).subspan(317));
  left.merge(right);
  CHECK(left.count() == whole.count());
  CHECK(left.mean() == doctest::Approx(whole.mean()).epsilon(1e-15));
  CHECK(left.variance() == doctest::Approx(whole.variance()).epsilon(1e-10));
  CHECK(whole.variance() == doctest::Approx(stats::variance(v)).epsilon(1e-10));
}

TEST_CASE("Kolmogorov distribution and KS tests") {
  CHECK(stats::kolmogorov_q(0.0) == 1.0);
  CHECK(stats::kolmogorov_q(1.3580986393225507) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(stats::kolmogorov_q(1.6276236115189) == doctest::Approx(0.01).epsilon(1e-6));

  RngStream rng(5, 0);
  std::vector<double> g, e;
  for (int i = 0; i < 20000; ++i) g.push_back(-std::log(rng.uniform()));
  for (int i = 0; i < 20000; ++i) e.push_back(rng.uniform());
  auto exp_cdf = [](double x) { return 1.0 - std::exp(-x); };
  CHECK(stats::ks_test(g, exp_cdf).p_value > 1e-3);
  CHECK(stats::ks_test(e, exp_cdf).p_value < 1e-10);
  CHECK(stats::ks_test_two_sample(g, e).p_value < 1e-10);
  std::vector<double> g2;
  for (int i = 0; i < 20000; ++i) g2.push_back(-std::log(rng.uniform()));
  CHECK(stats::ks_test_two_sample(g, g2).p_value > 1e-3);
}

TEST_CASE("correlation") {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{2, 4, 6, 8, 10}, c{5, 4, 3, 2, 1};
  CHECK(stats::correlation(a, b) == doctest::Approx(1.0));
  CHECK(stats::correlation(a, c) == doctest::Approx(-1.0));
}
