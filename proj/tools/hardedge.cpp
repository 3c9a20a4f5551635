// hardedge: gap probabilities of the Jacobi unitary ensemble and the
// Bessel-kernel determinant, with cross-route validation.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hardedge/cli.hpp"

namespace {

constexpr const char* kGridHelp =
    "Grids are lo:hi:count[:log] (inclusive, linear unless ':log'), or a single value.";

struct GridFlags {
  std::string t;
  std::string s;
  std::string b;
};

void add_common(CLI::App* sub, hardedge::cli::RunConfig& c, GridFlags& g, std::string& format) {
  sub->add_option("--alpha", c.alpha, "Exponent of x in the weight");
  sub->add_option("--beta", c.beta, "Exponent of (1-x) in the weight");
  sub->add_option("--n", c.n, "Matrix size");
  sub->add_option("--bits", c.bits, "Working precision in bits (0: per-route default)");
  sub->add_option("--out", c.out, "Report path (default: stdout)");
  sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "Monte Carlo seed");
  sub->add_option("--t", g.t, "t grid");
  sub->add_option("--s", g.s, "s grid");
  sub->add_option("--b", g.b, "b grid (symmetric gap half-width)");
  sub->add_option("--m", c.m, "Quadrature points (0: default)");
  sub->add_option("--ode-tol", c.ode_tol, "Painleve local error tolerance (0: precision-driven)");
  sub->add_option("--samples", c.samples, "Monte Carlo sample count");
  sub->add_option("--threads", c.threads, "Worker threads");
  sub->add_option("--tol", c.tol, "Override the pass threshold");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap probabilities at the hard edge of the Jacobi unitary ensemble"};
  app.footer(kGridHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("hardedge ") + hardedge::cli::kVersion);

  hardedge::cli::RunConfig config;
  GridFlags grids;
  std::string format = "csv";

  auto* finite = app.add_subcommand("finite", "log P(t) and H_n(t) from the Hankel determinant");
  auto* painleve = app.add_subcommand("painleve", "Integrate the Painleve VI equation and compare H_n with the Hankel route");
  auto* fredholm = app.add_subcommand("fredholm", "log det(I - K_Bessel) on (0, s) by Nystrom quadrature");
  auto* asymptotic = app.add_subcommand("asymptotic", "Evaluate a large-parameter expansion against its exact route");
  auto* mc = app.add_subcommand("mc", "Monte Carlo survival estimate (integer alpha, beta)");
  auto* constant = app.add_subcommand("constant", "Extract the constant log G(alpha+1) - (alpha/2) log 2pi");
  auto* validate = app.add_subcommand("validate", "Run a cross-route validation suite");
  for (auto* sub : {finite, painleve, fredholm, asymptotic, mc, constant, validate}) {
    add_common(sub, config, grids, format);
    sub->footer(kGridHelp);
  }
  finite->add_flag("--largest", config.largest, "Report log P(all eigenvalues <= t) instead");
  painleve->add_option("--seed-mode", config.seed_mode, "series_at_zero or large_n_seed");
  fredholm->add_flag("--check-doubling", config.check_doubling, "Also evaluate with 2m points");
  asymptotic->add_option("--series", config.series, "logdet, sym-gap, logp-near-one, logp-large-n, hn, wn");
  validate
      ->add_option("--suite", config.suite,
                   "painleve-vs-hankel, identities, alpha-zero, closed-form, hard-edge, sym-gap, mc, barnes")
      ->required();

  try {
    app.parse(argc, argv);
    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = format == "json" ? hardedge::cli::Format::json : hardedge::cli::Format::csv;
    if (!grids.t.empty()) config.t = hardedge::cli::GridSpec::parse(grids.t);
    if (!grids.s.empty()) config.s = hardedge::cli::GridSpec::parse(grids.s);
    if (!grids.b.empty()) config.b = hardedge::cli::GridSpec::parse(grids.b);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const hardedge::cli::UsageError& e) {
    std::cerr << "hardedge: " << e.what() << '\n';
    return 2;
  }
  return hardedge::cli::run(config);
}
