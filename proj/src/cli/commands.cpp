#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "lmeasure/gaussian_baseline.hpp"
#include "lmeasure/laplace.hpp"
#include "lmeasure/mellin.hpp"
#include "lmeasure/processes.hpp"
#include "lmeasure/serialize.hpp"
#include "lmeasure/special_functions.hpp"
#include "lmeasure/stats.hpp"
#include "writer.hpp"

namespace lmeasure::cli {
namespace {

using json = nlohmann::ordered_json;

Cell I(std::int64_t v) { return v; }
Cell S(std::string v) { return v; }

StreamPlan plan_of(const RunConfig& c) { return {c.samples, c.seed, c.streams}; }

double z_of(double estimate, double exact, double std_error) {
  return std_error > 0.0 ? (estimate - exact) / std_error : 0.0;
}

void cmd_sample(const RunConfig& c, RecordWriter& w) {
  const PositiveReal theta(c.theta, "theta");
  const StreamPlan plan = plan_of(c);
  std::vector<std::vector<WeightedAtomSeries>> per_stream(plan.streams);
  for_each_stream(plan.streams, [&](std::uint32_t s) {
    RngStream rng(plan.seed, s);
    for (std::uint64_t i = 0; i < plan.count_for(s); ++i) {
      if (c.process == "dirichlet") {
        per_stream[s].push_back(sample_dirichlet_process(theta, c.eps, rng));
      } else if (c.process == "gamma") {
        per_stream[s].push_back(sample_gamma_process(theta, c.eps, rng));
      } else {
        per_stream[s].push_back(sample_lebesgue_weighted(theta, c.eps, rng));
      }
    }
  });
  if (c.format == Format::json) {
    for (const auto& stream : per_stream) {
      for (const auto& series : stream) w.record("series", to_json(series));
    }
    return;
  }
  w.columns({"sample", "stream_id", "k", "mass", "location", "total_mass", "tail_bound",
             "log_weight"});
  std::int64_t index = 0;
  for (const auto& stream : per_stream) {
    for (const auto& s : stream) {
      for (std::size_t k = 0; k < s.masses.size(); ++k) {
        w.row({I(index), I(static_cast<std::int64_t>(s.stream_id)), I(static_cast<std::int64_t>(k)),
               s.masses[k], s.locations[k], s.total(), s.tail_bound, s.log_weight});
      }
      ++index;
    }
  }
}

McOptions mc_options(const RunConfig& c) {
  McOptions opt;
  opt.plan = plan_of(c);
  opt.eps = c.eps;
  opt.allow_infinite_variance = c.allow_infinite_variance;
  return opt;
}

void cmd_laplace(const RunConfig& c, RecordWriter& w) {
  const PositiveReal theta(c.theta, "theta");
  const StepFunction f = parse_step_function(c.f);
  const EstimatorResult r = mc_laplace(theta, f, mc_options(c));
  const double exact = analytic_laplace(theta, f);
  w.columns({"theta", "f", "estimate", "stderr", "analytic", "z_score", "n_samples", "seed",
             "streams"});
  w.row({c.theta, S(f.to_string()), r.estimate, r.std_error, exact,
         z_of(r.estimate, exact, r.std_error), I(static_cast<std::int64_t>(r.n_samples)),
         I(static_cast<std::int64_t>(r.seed)), I(r.streams)});
}

void cmd_invariance(const RunConfig& c, RecordWriter& w) {
  const PositiveReal theta(c.theta, "theta");
  const StepFunction a = parse_step_function(c.a);
  const StepFunction f = parse_step_function(c.f);
  const QuasiInvarianceReport r = quasi_invariance_check(theta, a, f, mc_options(c));
  w.columns({"theta", "a", "f", "phi_a", "analytic_f", "analytic_af", "exact_residual", "mc_af",
             "stderr", "z_score", "exact_ok", "mc_ok"});
  w.row({c.theta, S(a.to_string()), S(f.to_string()), r.phi_a, r.analytic_f, r.analytic_af,
         r.exact_residual, r.mc_af.estimate, r.mc_af.std_error, r.z_score, r.exact_ok, r.mc_ok});
}

void cmd_partition_sums(const RunConfig& c, RecordWriter& w) {
  const PartitionSpec spec(parse_real_list(c.partition, "partition"));
  const PositiveReal theta(spec.theta(), "partition total");
  const std::vector<double> p = spec.probabilities();
  std::vector<double> breakpoints{0.0};
  for (std::size_t i = 0; i + 1 < p.size(); ++i) breakpoints.push_back(breakpoints.back() + p[i]);
  breakpoints.push_back(1.0);
  const bool marking = c.route == "marking";
  const auto draws = collect_draws(plan_of(c), spec.size(), [&](RngStream& rng,
                                                               std::span<double> out) {
    const WeightedAtomSeries s = sample_gamma_process(theta, c.eps, rng);
    const std::vector<double> sums =
        marking ? partition_sums(s, spec, rng) : aggregate_masses(s, breakpoints);
    std::copy(sums.begin(), sums.end(), out.begin());
  });
  w.columns({"part", "theta_i", "mean", "variance", "ks_statistic", "ks_p_value"});
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double ti = spec.weights()[i];
    const auto ks = stats::ks_test(draws[i], [ti](double x) { return x > 0 ? gamma_p(ti, x) : 0.0; });
    w.row({I(static_cast<std::int64_t>(i)), ti, stats::mean(draws[i]), stats::variance(draws[i]),
           ks.statistic, ks.p_value});
  }
  const double root_n = std::sqrt(static_cast<double>(c.samples));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      const double r = stats::correlation(draws[i], draws[j]);
      json fields;
      fields["part_i"] = i;
      fields["part_j"] = j;
      fields["correlation"] = r;
      fields["z_score"] = r * root_n;
      w.record("correlation", fields);
    }
  }
}

void cmd_box_mass(const RunConfig& c, RecordWriter& w) {
  const PartitionSpec spec(parse_real_list(c.partition, "partition"));
  const std::vector<double> sides = parse_real_list(c.b, "b");
  const auto estimates = estimate_box_mass(spec, sides, plan_of(c), c.eps);
  w.columns({"b", "estimate", "stderr", "exact", "z_score"});
  for (std::size_t i = 0; i < sides.size(); ++i) {
    const double exact = box_mass_L(spec, sides[i]);
    w.row({sides[i], estimates[i].estimate, estimates[i].std_error, exact,
           z_of(estimates[i].estimate, exact, estimates[i].std_error)});
  }
}

void cmd_mellin(const RunConfig& c, RecordWriter& w) {
  const PositiveReal lambda(c.lambda, "lambda");
  const std::vector<int> ns = parse_int_list(c.n, "n");
  w.columns({"n", "lambda", "log_F_contour", "F_contour", "F_direct", "rel_diff"});
  for (int n : ns) {
    const double log_f = log_F_contour(n, lambda);
    const double f = std::exp(log_f);
    if (n <= 4) {
      const double direct = F_direct(n, lambda);
      w.row({I(n), c.lambda, log_f, f, direct, f / direct - 1.0});
    } else {
      w.row({I(n), c.lambda, log_f, f, S(""), S("")});
    }
  }
}

void cmd_saddle(const RunConfig& c, RecordWriter& w) {
  const SaddleSolution s = solve_saddle(PositiveReal(c.lambda, "lambda"));
  w.columns({"lambda", "gamma", "L", "L_ratio", "curvature", "residual"});
  w.row({s.lambda, s.gamma, s.L_value, s.L_ratio(), s.curvature,
         digamma(s.gamma) - std::log(s.lambda)});
  if (c.nmax >= 2) {
    // Convergence of ln F_n / n towards L, emitted as a second table.
    const LimitStudy study = L_limit_study(PositiveReal(c.lambda), c.nmax);
    for (const auto& row : study.rows) {
      json fields;
      fields["n"] = row.n;
      fields["lnFn_over_n"] = row.log_F_over_n;
      fields["gap"] = row.gap;
      fields["envelope"] = row.envelope;
      w.record("limit", fields);
    }
    json summary;
    summary["fitted_C"] = study.fitted_C;
    summary["envelope_ok"] = study.envelope_ok;
    summary["monotone_from_5"] = study.monotone_from_5;
    summary["extrapolated"] = study.extrapolated;
    summary["extrapolation_gap"] = study.extrapolation_gap;
    summary["ratio_form_gap"] = study.ratio_form_gap;
    summary["L_zero_lambda"] = limit_rate_zero();
    w.summary(summary);
  }
}

RadiusSchedule schedule_of(const RunConfig& c) {
  return c.schedule == "sqrt_n" ? RadiusSchedule::sqrt_n(c.scale) : RadiusSchedule::constant(c.scale);
}

void cmd_divergence(const RunConfig& c, RecordWriter& w) {
  const PositiveReal lambda(c.lambda, "lambda");
  const int n_min = parse_int_list(c.n, "n").front();
  const auto rows = divergence_experiment(lambda, schedule_of(c), n_min, c.nmax);
  w.columns({"n", "lambda", "r", "gamma", "L", "lnFn_over_n", "gap"});
  for (const auto& r : rows) w.row({I(r.n), r.lambda, r.r, r.gamma, r.L, r.log_D_over_n, r.gap});
  const auto& last = rows.back();
  json summary;
  summary["n"] = last.n;
  summary["ln_D_n"] = last.log_D_over_n * last.n;
  summary["target_ln"] = -c.theta * std::log(c.lambda);
  summary["L_zero_lambda"] = limit_rate_zero();
  w.summary(summary);
}

void cmd_mp_demo(const RunConfig& c, RecordWriter& w) {
  const std::vector<int> ns = parse_int_list(c.n, "n");
  const std::vector<double> grid = uniform_grid(c.smax, static_cast<std::size_t>(c.points));
  const StreamPlan plan = plan_of(c);
  w.columns({"n", "s", "quad", "mc", "stderr", "gauss", "gap"});
  for (int n : ns) {
    const SphereConfig cfg = SphereConfig::standard(n);
    double sup = 0.0;
    for (double s : grid) {
      const double quad = sphere_charfun_quad(cfg, s);
      const EstimatorResult mc = sphere_charfun_mc(cfg, s, plan);
      const double gauss = gaussian_charfun(s);
      const double gap = std::abs(quad - gauss);
      sup = std::max(sup, gap);
      w.row({I(n), s, quad, mc.estimate, mc.std_error, gauss, gap});
    }
    json summary;
    summary["n"] = n;
    summary["sup_gap"] = sup;
    w.summary(summary);
  }
}

const std::map<std::string, std::function<void(const RunConfig&, RecordWriter&)>>& commands() {
  static const std::map<std::string, std::function<void(const RunConfig&, RecordWriter&)>> table = {
      {"sample", cmd_sample},         {"laplace", cmd_laplace},
      {"invariance", cmd_invariance}, {"partition-sums", cmd_partition_sums},
      {"box-mass", cmd_box_mass},     {"mellin", cmd_mellin},
      {"saddle", cmd_saddle},         {"divergence", cmd_divergence},
      {"mp-demo", cmd_mp_demo},
  };
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (v == a) return true;
  }
  return false;
}

}  // namespace

void RunConfig::validate() const {
  require(commands().count(command) == 1, "unknown command '" + command + "'");
  require(theta > 0.0 && std::isfinite(theta), "--theta must be positive");
  require(eps > 0.0 && eps < 1.0, "--eps must lie in (0, 1)");
  require(samples >= 1, "--samples must be at least 1");
  require(streams >= 1, "--streams must be at least 1");
  require(lambda > 0.0 && std::isfinite(lambda), "--lambda must be positive");
  require(nmax >= 1 && nmax <= 60, "--nmax must lie in [1, 60]");
  require(smax >= 0.0 && std::isfinite(smax), "--smax must be non-negative");
  require(points >= 2, "--points must be at least 2");
  require(scale > 0.0 && std::isfinite(scale), "--scale must be positive");
  require(one_of(process, {"dirichlet", "gamma", "lebesgue"}),
          "--process must be dirichlet, gamma or lebesgue");
  require(one_of(route, {"marking", "intervals"}), "--route must be marking or intervals");
  require(one_of(schedule, {"constant", "sqrt_n"}), "--schedule must be constant or sqrt_n");
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  try {
    config.validate();
    RecordWriter writer(buffer, config);
    commands().at(config.command)(config, writer);
  } catch (const VarianceError& e) {
    err << "error: " << e.what() << " (--allow-infinite-variance)\n";
    return kValidationError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  // Written only after success, so a failed run leaves no partial table.
  out << buffer.str();
  out.flush();
  return kSuccess;
}

}  // namespace lmeasure::cli
