#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "lmeasure/cli.hpp"

namespace lmeasure::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Monte Carlo and quadrature experiments on infinite-dimensional Lebesgue measures",
               "lmeasure"};
  app.set_config("--config", "", "key=value file pre-populating flags (flags win)");
  app.set_version_flag("--version", std::string(LMEASURE_VERSION));
  app.require_subcommand(1);

  std::string format = "csv";
  app.add_option("--theta", c.theta, "total mass theta of the base measure")->capture_default_str();
  app.add_option("--eps", c.eps, "stick-breaking tail tolerance")->capture_default_str();
  app.add_option("--samples", c.samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--streams", c.streams, "independent RNG streams")->capture_default_str();
  app.add_option("--out", c.out, "output file (default: standard output)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--f", c.f, "test function, \"v1@b0:b1,v2@b1:b2,...\"")->capture_default_str();
  app.add_option("--a", c.a, "multiplicator, same format as --f")->capture_default_str();
  app.add_flag("--allow-infinite-variance", c.allow_infinite_variance,
               "run Laplace estimators even when min f <= 1/2");
  app.add_option("--process", c.process, "sample: dirichlet, gamma or lebesgue")
      ->capture_default_str();
  app.add_option("--partition", c.partition, "partition weights theta_i, comma separated")
      ->capture_default_str();
  app.add_option("--route", c.route, "partition-sums: marking or intervals")->capture_default_str();
  app.add_option("--b", c.b, "box sides, comma separated")->capture_default_str();
  app.add_option("--lambda", c.lambda, "argument of F_n and L")->capture_default_str();
  app.add_option("--n", c.n, "dimension(s), comma separated; divergence: first n")
      ->capture_default_str();
  app.add_option("--nmax", c.nmax, "largest n for limit and divergence tables")
      ->capture_default_str();
  app.add_option("--smax", c.smax, "mp-demo: largest |s|")->capture_default_str();
  app.add_option("--points", c.points, "mp-demo: grid points on [0, smax]")->capture_default_str();
  app.add_option("--schedule", c.schedule, "divergence: constant or sqrt_n")->capture_default_str();
  app.add_option("--scale", c.scale, "divergence: radius (constant) or factor of sqrt(n)")
      ->capture_default_str();

  const std::pair<const char*, const char*> subcommands[] = {
      {"sample", "draw Dirichlet, gamma or weighted Lebesgue series"},
      {"laplace", "Monte Carlo Laplace transform against the closed form"},
      {"invariance", "quasi-invariance of the Laplace transform under a multiplicator"},
      {"partition-sums", "marginals of partition sums: KS tests and correlations"},
      {"box-mass", "weighted box masses of partition sums against the exact value"},
      {"mellin", "F_n(lambda) by contour integral and direct quadrature"},
      {"saddle", "saddle point gamma(lambda), L(lambda) and the ln F_n / n table"},
      {"divergence", "ln D_n / n along a radius schedule"},
      {"mp-demo", "sphere characteristic functions against exp(-s^2/2)"},
  };
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kValidationError;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? Format::json : Format::csv;

  if (c.out.empty()) return execute(c, out, err);
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot write to '" << c.out << "'\n";
    return kValidationError;
  }
  const int code = execute(c, file, err);
  file.close();
  if (code == kSuccess && !file) {
    err << "error: writing '" << c.out << "' failed\n";
    return kValidationError;
  }
  return code;
}

}  // namespace lmeasure::cli
