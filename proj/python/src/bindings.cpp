#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardedge/asymptotics.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/finite_n.hpp"
#include "hardedge/fredholm.hpp"
#include "hardedge/mc.hpp"
#include "hardedge/painleve.hpp"
#include "hardedge/specfun.hpp"

namespace py = pybind11;
using namespace hardedge;

namespace {

// Values cross into Python as doubles; the work is done at `bits`.
template <class F>
double at_precision(int bits, F&& f) {
  const PrecisionCtx ctx(bits);
  PrecisionScope scope(ctx.guarded());
  return f(ctx).to_double();
}

int finite_bits(int bits, int n, double t) { return bits > 0 ? bits : finite_n::default_bits(n, t); }
int fredholm_bits(int bits, double s) { return bits > 0 ? bits : fredholm::default_bits(s); }

py::tuple expansion(const asymptotics::ExpansionResult& e) {
  return py::make_tuple(e.value.to_double(), e.budget.to_double(), e.order);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gap probabilities of the Jacobi unitary ensemble at the hard edge";

  py::register_exception<SingularityError>(m, "SingularityError", PyExc_RuntimeError);
  py::register_exception<DiscretizationError>(m, "DiscretizationError", PyExc_RuntimeError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_RuntimeError);

  m.def(
      "log_prob_smallest",
      [](double t, double alpha, double beta, int n, int bits) {
        const finite_n::EnsembleParams p(alpha, beta, n);
        return at_precision(finite_bits(bits, n, t),
                            [&](const PrecisionCtx& c) { return finite_n::log_prob_smallest(Real(t), p, c); });
      },
      py::arg("t"), py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("bits") = 0,
      "log P(smallest eigenvalue >= t)");
  m.def(
      "log_prob_largest",
      [](double t, double alpha, double beta, int n, int bits) {
        const finite_n::EnsembleParams p(alpha, beta, n);
        return at_precision(finite_bits(bits, n, 1 - t),
                            [&](const PrecisionCtx& c) { return finite_n::log_prob_largest(Real(t), p, c); });
      },
      py::arg("t"), py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("bits") = 0);
  m.def(
      "hn_exact",
      [](double t, double alpha, double beta, int n, int bits) {
        const finite_n::EnsembleParams p(alpha, beta, n);
        return at_precision(finite_bits(bits, n, t),
                            [&](const PrecisionCtx& c) { return finite_n::hn_exact(Real(t), p, c); });
      },
      py::arg("t"), py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("bits") = 0);

  m.def(
      "integrate_w",
      [](double alpha, double beta, int n, const std::vector<double>& grid, const std::string& seed_mode, int bits) {
        const finite_n::EnsembleParams p(alpha, beta, n);
        const PrecisionCtx ctx(bits > 0 ? bits : finite_n::default_bits(n));
        PrecisionScope scope(ctx.guarded());
        painleve::SeedMode mode = painleve::SeedMode::series_at_zero;
        if (seed_mode == "large_n_seed") {
          mode = painleve::SeedMode::large_n_seed;
        } else if (seed_mode != "series_at_zero") {
          throw DomainError("seed_mode must be series_at_zero or large_n_seed");
        }
        const auto traj = painleve::integrate_w(p, std::vector<Real>(grid.begin(), grid.end()), mode, {}, ctx);
        py::list w, wp, h;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          w.append(traj.w[i].to_double());
          wp.append(traj.wp[i].to_double());
          h.append(painleve::hn_from_w(traj.grid[i], traj.w[i], traj.wp[i], p).to_double());
        }
        py::dict out;
        out["w"] = w;
        out["wp"] = wp;
        out["h_n"] = h;
        out["steps"] = traj.diagnostics.steps;
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("grid"), py::arg("seed_mode") = "series_at_zero",
      py::arg("bits") = 0, "Painleve VI trajectory of W_n with H_n on the grid");

  m.def(
      "log_fredholm_det",
      [](double s, double alpha, int m_points, int bits) {
        return at_precision(fredholm_bits(bits, s),
                            [&](const PrecisionCtx& c) { return fredholm::log_fredholm_det(Real(s), alpha, m_points, c); });
      },
      py::arg("s"), py::arg("alpha"), py::arg("m") = 0, py::arg("bits") = 0, "log det(I - K_Bessel) on (0, s)");

  m.def(
      "logdet_series",
      [](double s, double alpha, int bits) {
        const PrecisionCtx ctx(fredholm_bits(bits, s));
        PrecisionScope scope(ctx.guarded());
        return expansion(asymptotics::logdet_series(Real(s), Real(alpha), ctx));
      },
      py::arg("s"), py::arg("alpha"), py::arg("bits") = 0, "(value, budget, order) of the large-s expansion");
  m.def(
      "sym_gap_series",
      [](double b, int bits) {
        const PrecisionCtx ctx(bits);
        PrecisionScope scope(ctx.guarded());
        return expansion(asymptotics::sym_gap_series(Real(b), ctx));
      },
      py::arg("b"), py::arg("bits") = 128);

  m.def(
      "log_barnes_g",
      [](double z, int bits) {
        return at_precision(bits, [&](const PrecisionCtx& c) { return specfun::log_barnes_g(Real(z), c); });
      },
      py::arg("z"), py::arg("bits") = 128);
  m.def(
      "zeta_prime_minus_one",
      [](int bits) { return at_precision(bits, [](const PrecisionCtx& c) { return specfun::zeta_prime_minus_one(c); }); },
      py::arg("bits") = 128);

  m.def(
      "sample_spectrum",
      [](int n, int alpha, int beta, std::uint64_t seed, std::uint64_t stream) {
        return mc::sample_spectrum(n, alpha, beta, {seed, stream}).eigenvalues;
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 1, py::arg("stream") = 0);
  m.def(
      "survival_estimate",
      [](long samples, double t, int n, int alpha, int beta, std::uint64_t seed, int threads) {
        mc::SurvivalEstimate e;
        {
          py::gil_scoped_release release;
          e = mc::survival_estimate(samples, t, n, alpha, beta, seed, threads);
        }
        return py::make_tuple(e.p_hat, e.se);
      },
      py::arg("samples"), py::arg("t"), py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 1,
      py::arg("threads") = 1, "(p_hat, se) for P(smallest eigenvalue >= t)");
}
