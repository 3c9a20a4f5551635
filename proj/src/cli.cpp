#include "hardedge/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "hardedge/asymptotics.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/finite_n.hpp"
#include "hardedge/fredholm.hpp"
#include "hardedge/mc.hpp"
#include "hardedge/painleve.hpp"
#include "hardedge/specfun.hpp"
#include "json.hpp"

namespace hardedge::cli {

namespace {

using nlohmann::json;

// |value - reference| <= kBudgetFactor * budget for the asymptotic rows.
constexpr double kBudgetFactor = 10.0;

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw UsageError("not a number: '" + text + "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c, int digits) {
  switch (c.kind) {
    case Cell::Kind::real:
      return c.real.str(digits);
    case Cell::Kind::number:
      return format_double(c.number);
    case Cell::Kind::integer:
      return std::to_string(c.integer);
    case Cell::Kind::flag:
      return c.flag ? "true" : "false";
    case Cell::Kind::text:
      break;
  }
  return c.text;
}

json cell_json(const Cell& c, int digits) {
  switch (c.kind) {
    case Cell::Kind::real:
      return c.real.str(digits);
    case Cell::Kind::number:
      return std::isfinite(c.number) ? json(c.number) : json(format_double(c.number));
    case Cell::Kind::integer:
      return c.integer;
    case Cell::Kind::flag:
      return c.flag;
    case Cell::Kind::text:
      break;
  }
  return c.text;
}

// Rows are computed by `threads` workers and stored by index, so the report
// does not depend on completion order.
std::vector<ReportRow> parallel_rows(std::size_t count, int threads,
                                     const std::function<ReportRow(std::size_t)>& make) {
  std::vector<ReportRow> rows(count);
  auto guarded = [&](std::size_t i) {
    try {
      rows[i] = make(i);
    } catch (const std::exception& e) {
      rows[i].pass = false;
      rows[i].error = e.what();
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
    return rows;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(threads)) guarded(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

// A failed row still carries its leading input cells.
void backfill_inputs(std::vector<ReportRow>& rows, const std::vector<double>& inputs) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].cells.empty()) rows[i].cells.push_back(Cell::of(inputs[i]));
}

double threshold(const RunConfig& c, double fallback) { return c.tol > 0.0 ? c.tol : fallback; }

std::vector<double> grid_or(const std::optional<GridSpec>& g, const char* fallback) {
  return (g ? *g : GridSpec::parse(fallback)).values();
}

finite_n::EnsembleParams params_of(const RunConfig& c) { return finite_n::EnsembleParams(c.alpha, c.beta, c.n); }

int finite_bits(const RunConfig& c, double t) { return c.bits > 0 ? c.bits : finite_n::default_bits(c.n, t); }

int fredholm_bits(const RunConfig& c, double s) { return c.bits > 0 ? c.bits : fredholm::default_bits(s); }

// x_n'(t) by a central difference of the exact x_n at step 2^(-bits/3).
Real xn_derivative(const Real& t, const finite_n::EnsembleParams& p, const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  const Real h = ldexp(Real(1), -ctx.bits / 3);
  const Real up = finite_n::aux_exact(t + h, p, ctx).x;
  const Real down = finite_n::aux_exact(t - h, p, ctx).x;
  return (up - down) / (2 * h);
}

Report finite_report(const RunConfig& c) {
  const auto p = params_of(c);
  const auto ts = grid_or(c.t, "0.1:0.9:9");
  Report r;
  r.digits = report_digits(finite_bits(c, ts.back()));
  if (c.largest) {
    r.columns = {"t", "log_p_largest"};
  } else {
    r.columns = {"t", "log_p", "h_n"};
  }
  r.rows = parallel_rows(ts.size(), c.threads, [&](std::size_t i) {
    const PrecisionCtx ctx(finite_bits(c, c.largest ? 1.0 - ts[i] : ts[i]));
    PrecisionScope scope(ctx.guarded());
    const Real t = ts[i];
    ReportRow row;
    row.cells.push_back(Cell::of(ts[i]));
    if (c.largest) {
      const Real lp = finite_n::log_prob_largest(t, p, ctx);
      row.cells.push_back(Cell::of(lp));
      row.pass = lp.is_finite();
    } else {
      const Real lp = finite_n::log_prob_smallest(t, p, ctx);
      const Real h = finite_n::hn_exact(t, p, ctx);
      row.cells.push_back(Cell::of(lp));
      row.cells.push_back(Cell::of(h));
      row.pass = lp.is_finite() && h.is_finite();
    }
    return row;
  });
  backfill_inputs(r.rows, ts);
  return r;
}

Report painleve_report(const RunConfig& c, double tol) {
  const auto p = params_of(c);
  const auto ts = grid_or(c.t, "0.05:0.9:18");
  const int bits = c.bits > 0 ? c.bits : finite_n::default_bits(c.n);
  const PrecisionCtx ctx(bits);
  PrecisionScope scope(ctx.guarded());
  Report r;
  r.digits = report_digits(bits);
  r.columns = {"t", "w", "wp", "x_n", "y_n", "r_n", "h_n_painleve", "h_n_exact", "diff_h", "rel_diff_h"};

  std::vector<Real> grid(ts.begin(), ts.end());
  painleve::IntegrateOptions opts;
  opts.tol = c.ode_tol;
  opts.verify_seed = true;
  painleve::SeedMode mode = painleve::SeedMode::series_at_zero;
  if (c.seed_mode == "large_n_seed") mode = painleve::SeedMode::large_n_seed;

  std::optional<painleve::PainleveTrajectory> traj;
  try {
    traj.emplace(painleve::integrate_w(p, grid, mode, opts, ctx));
  } catch (const std::exception& e) {
    r.rows.resize(ts.size());
    for (auto& row : r.rows) {
      row.pass = false;
      row.error = e.what();
    }
    backfill_inputs(r.rows, ts);
    return r;
  }
  r.rows = parallel_rows(ts.size(), c.threads, [&](std::size_t i) {
    PrecisionScope inner(ctx.guarded());
    const Real& t = traj->grid[i];
    const Real& w = traj->w[i];
    const Real& wp = traj->wp[i];
    ReportRow row;
    const Real hp = painleve::hn_from_w(t, w, wp, p);
    const auto aux = painleve::aux_from_w(t, w, wp, p);
    const Real he = finite_n::hn_exact(t, p, ctx);
    const Real diff = hp - he;
    const Real rel = abs(diff) / abs(he);
    for (const Real* v : {&t, &w, &wp, &aux.x, &aux.y, &aux.r, &hp, &he, &diff, &rel}) row.cells.push_back(Cell::of(*v));
    row.pass = rel.to_double() <= tol;
    return row;
  });
  backfill_inputs(r.rows, ts);
  return r;
}

Report fredholm_report(const RunConfig& c) {
  const auto ss = grid_or(c.s, "25");
  const double tol = threshold(c, 1e-10);
  Report r;
  r.digits = report_digits(fredholm_bits(c, ss.front()));
  r.columns = {"s", "alpha", "m", "log_det"};
  if (c.check_doubling) {
    r.columns.push_back("log_det_2m");
    r.columns.push_back("diff_doubling");
  }
  r.rows = parallel_rows(ss.size(), c.threads, [&](std::size_t i) {
    const PrecisionCtx ctx(fredholm_bits(c, ss[i]));
    PrecisionScope scope(ctx.guarded());
    const int m = c.m > 0 ? c.m : fredholm::default_points(ss[i]);
    ReportRow row;
    const Real d = fredholm::log_fredholm_det(Real(ss[i]), c.alpha, m, ctx);
    row.cells = {Cell::of(ss[i]), Cell::of(c.alpha), Cell::of_int(m), Cell::of(d)};
    if (c.check_doubling) {
      const Real d2 = fredholm::log_fredholm_det(Real(ss[i]), c.alpha, 2 * m, ctx);
      const Real diff = d2 - d;
      row.cells.push_back(Cell::of(d2));
      row.cells.push_back(Cell::of(diff));
      row.pass = abs(diff).to_double() <= tol;
    }
    return row;
  });
  backfill_inputs(r.rows, ss);
  return r;
}

Report asymptotic_report(const RunConfig& c) {
  const std::string& kind = c.series;
  Report r;
  r.columns = {"x", "series", "reference", "diff", "budget", "order"};
  std::vector<double> xs;
  std::function<ReportRow(std::size_t)> make;

  auto finish = [&](double x, const asymptotics::ExpansionResult& e, const Real& ref) {
    ReportRow row;
    const Real diff = e.value - ref;
    row.cells = {Cell::of(x), Cell::of(e.value), Cell::of(ref), Cell::of(diff), Cell::of(e.budget), Cell::of_text(e.order)};
    row.pass = abs(diff) <= kBudgetFactor * e.budget;
    return row;
  };

  if (kind == "logdet") {
    xs = grid_or(c.s, "400:900:5:log");
    r.digits = report_digits(fredholm_bits(c, xs.back()));
    make = [&](std::size_t i) {
      const PrecisionCtx ctx(fredholm_bits(c, xs[i]));
      PrecisionScope scope(ctx.guarded());
      const Real s = xs[i];
      return finish(xs[i], asymptotics::logdet_series(s, Real(c.alpha), ctx),
                    fredholm::log_fredholm_det(s, c.alpha, c.m, ctx));
    };
  } else if (kind == "sym-gap") {
    xs = grid_or(c.b, "20:30:3");
    r.digits = report_digits(fredholm_bits(c, xs.back() * xs.back()));
    make = [&](std::size_t i) {
      const double s = xs[i] * xs[i];
      const PrecisionCtx ctx(fredholm_bits(c, s));
      PrecisionScope scope(ctx.guarded());
      const Real product = fredholm::log_fredholm_det(Real(s), 0.5, c.m, ctx) +
                           fredholm::log_fredholm_det(Real(s), -0.5, c.m, ctx);
      return finish(xs[i], asymptotics::sym_gap_series(Real(xs[i]), ctx), product);
    };
  } else if (kind == "logp-near-one" || kind == "logp-large-n" || kind == "hn" || kind == "wn") {
    const auto p = params_of(c);
    xs = grid_or(c.t, kind == "logp-near-one" ? "0.9:0.99:4" : "0.1:0.9:9");
    r.digits = report_digits(finite_bits(c, xs.back()));
    make = [&, p](std::size_t i) {
      const PrecisionCtx ctx(finite_bits(c, xs[i]));
      PrecisionScope scope(ctx.guarded());
      const Real t = xs[i];
      if (kind == "logp-near-one") return finish(xs[i], asymptotics::logp_near_one(t, p, ctx), finite_n::log_prob_smallest(t, p, ctx));
      if (kind == "logp-large-n") return finish(xs[i], asymptotics::logp_large_n(t, p, ctx), finite_n::log_prob_smallest(t, p, ctx));
      if (kind == "hn") return finish(xs[i], asymptotics::hn_series(t, p), finite_n::hn_exact(t, p, ctx));
      const Real w = 1 - (1 - t) * finite_n::aux_exact(t, p, ctx).x / Real(p.a_n());
      return finish(xs[i], asymptotics::wn_series(t, p), w);
    };
  } else {
    throw UsageError("unknown series '" + kind + "' (logdet, sym-gap, logp-near-one, logp-large-n, hn, wn)");
  }
  r.rows = parallel_rows(xs.size(), c.threads, make);
  backfill_inputs(r.rows, xs);
  return r;
}

void require_integer_params(const RunConfig& c) {
  if (c.alpha != std::floor(c.alpha) || c.beta != std::floor(c.beta) || c.alpha < 0 || c.beta < 0) {
    throw UsageError("mc requires non-negative integer --alpha and --beta");
  }
}

Report mc_report(const RunConfig& c) {
  require_integer_params(c);
  const auto p = params_of(c);
  const auto ts = grid_or(c.t, "0.05");
  Report r;
  r.digits = 17;
  r.columns = {"t", "p_hat", "se", "exact", "diff", "z"};
  // Sampling is parallelized inside each row, so rows run sequentially.
  r.rows = parallel_rows(ts.size(), 1, [&](std::size_t i) {
    const auto est = mc::survival_estimate(c.samples, ts[i], c.n, static_cast<int>(c.alpha), static_cast<int>(c.beta),
                                           c.seed, c.threads);
    const PrecisionCtx ctx(finite_bits(c, ts[i]));
    PrecisionScope scope(ctx.guarded());
    const double exact = exp(finite_n::log_prob_smallest(Real(ts[i]), p, ctx)).to_double();
    const double diff = est.p_hat - exact;
    ReportRow row;
    row.cells = {Cell::of(ts[i]), Cell::of(est.p_hat), Cell::of(est.se), Cell::of(exact), Cell::of(diff),
                 Cell::of(est.se > 0 ? diff / est.se : 0.0)};
    row.pass = std::abs(diff) <= 4.0 * est.se;
    return row;
  });
  backfill_inputs(r.rows, ts);
  return r;
}

Report constant_report(const RunConfig& c) {
  const GridSpec g = c.s ? *c.s : GridSpec::parse("400:900:5:log");
  const double tol = threshold(c, 1e-3);
  const int bits = fredholm_bits(c, g.hi);
  Report r;
  r.digits = report_digits(bits);
  r.columns = {"alpha", "s_lo", "s_hi", "points", "c_hat", "c_exact", "diff"};
  r.rows = parallel_rows(1, 1, [&](std::size_t) {
    const auto est = constant_extract(c.alpha, g.lo, g.hi, g.count, c.m, PrecisionCtx(bits));
    PrecisionScope scope(PrecisionCtx(bits).guarded());
    ReportRow row;
    const Real diff = est.c_hat - est.c_exact;
    row.cells = {Cell::of(c.alpha), Cell::of(g.lo), Cell::of(g.hi), Cell::of_int(g.count),
                 Cell::of(est.c_hat), Cell::of(est.c_exact), Cell::of(diff)};
    row.pass = abs(diff).to_double() <= tol;
    return row;
  });
  backfill_inputs(r.rows, {c.alpha});
  return r;
}

// --- validation suites ---------------------------------------------------

Report identities_report(const RunConfig& c) {
  const auto p = params_of(c);
  const auto ts = grid_or(c.t, "0.05:0.9:18");
  const double tol = threshold(c, 1e-10);
  const int bits = c.bits > 0 ? c.bits : finite_n::default_bits(c.n);
  Report r;
  r.digits = report_digits(bits);
  r.columns = {"t", "res_ynxn", "res_rnxnyn", "res_hnxnyn", "res_hnyr", "res_hnwn"};
  r.rows = parallel_rows(ts.size(), c.threads, [&](std::size_t i) {
    const PrecisionCtx ctx(bits);
    PrecisionScope scope(ctx.guarded());
    const Real t = ts[i];
    const auto aux = finite_n::aux_exact(t, p, ctx);
    const Real xp = xn_derivative(t, p, ctx);
    const Real he = finite_n::hn_exact(t, p, ctx);
    const Real an = p.a_n();
    const Real w = 1 - (1 - t) * aux.x / an;
    const Real wp = (aux.x - (1 - t) * xp) / an;
    const Real res[] = {
        painleve::yn_from_xn(t, aux.x, xp, p) - aux.y,
        painleve::rn_from_xn_yn(t, aux.x, xp, aux.y, p) - aux.r,
        painleve::hn_from_xn_yn(t, aux.x, xp, aux.y, p) - he,
        painleve::hn_from_yn_rn(t, aux.y, aux.r, p) - he,
        painleve::hn_from_w(t, w, wp, p) - he,
    };
    ReportRow row;
    row.cells.push_back(Cell::of(ts[i]));
    for (const auto& v : res) {
      row.cells.push_back(Cell::of(v));
      row.pass = row.pass && abs(v).to_double() <= tol;
    }
    return row;
  });
  backfill_inputs(r.rows, ts);
  return r;
}

Report alpha_zero_report(const RunConfig& c) {
  const auto ts = grid_or(c.t, "0.1:0.9:9");
  const double tol = threshold(c, 1e-30);
  const finite_n::EnsembleParams p(0.0, c.beta, c.n);
  const int bits = c.bits > 0 ? c.bits : 256;
  Report r;
  r.digits = report_digits(bits);
  r.columns = {"t", "log_p", "exact", "diff"};
  r.rows = parallel_rows(ts.size(), c.threads, [&](std::size_t i) {
    const PrecisionCtx ctx(bits);
    PrecisionScope scope(ctx.guarded());
    const Real t = ts[i];
    const Real lp = finite_n::log_prob_smallest(t, p, ctx);
    const Real exact = Real(c.n) * (c.n + c.beta) * log1p(-t);
    ReportRow row;
    row.cells = {Cell::of(ts[i]), Cell::of(lp), Cell::of(exact), Cell::of(lp - exact)};
    row.pass = abs(lp - exact).to_double() <= tol;
    return row;
  });
  backfill_inputs(r.rows, ts);
  return r;
}

Report closed_form_report(const RunConfig& c) {
  const double tol = threshold(c, 1e-30);
  const int bits = c.bits > 0 ? c.bits : 256;
  Report r;
  r.digits = report_digits(bits);
  r.columns = {"n", "log_dn_cholesky", "log_dn_barnes", "diff"};
  std::vector<double> ns;
  for (int n = 1; n <= c.n; ++n) ns.push_back(n);
  r.rows = parallel_rows(ns.size(), c.threads, [&](std::size_t i) {
    const PrecisionCtx ctx(bits);
    PrecisionScope scope(ctx.guarded());
    const finite_n::EnsembleParams p(c.alpha, c.beta, static_cast<int>(ns[i]));
    const Real a = finite_n::log_dn(Real(0), p, ctx);
    const Real b = finite_n::log_dn_closed_form(p, ctx);
    ReportRow row;
    row.cells = {Cell::of_int(p.n), Cell::of(a), Cell::of(b), Cell::of(a - b)};
    row.pass = abs(a - b).to_double() <= tol;
    return row;
  });
  backfill_inputs(r.rows, ns);
  return r;
}

Report hard_edge_report(const RunConfig& c) {
  const double s = c.s ? c.s->lo : 25.0;
  const std::vector<double> ns = {8, 16, 32};
  Report r;
  r.columns = {"n", "s", "log_p", "log_det", "diff", "ratio"};
  const int fbits = fredholm_bits(c, s);
  r.digits = report_digits(fbits);
  Real det;
  {
    const PrecisionCtx ctx(fbits);
    PrecisionScope scope(ctx.guarded());
    det = fredholm::log_fredholm_det(Real(s), c.alpha, c.m, ctx);
  }
  std::vector<ReportRow> rows = parallel_rows(ns.size(), c.threads, [&](std::size_t i) {
    const int n = static_cast<int>(ns[i]);
    const finite_n::EnsembleParams p(c.alpha, c.beta, n);
    const double t = s / (4.0 * n * n);
    const PrecisionCtx ctx(c.bits > 0 ? c.bits : finite_n::default_bits(n, t));
    PrecisionScope scope(ctx.guarded());
    const Real lp = finite_n::log_prob_smallest(Real(s) / (4 * n * n), p, ctx);
    ReportRow row;
    row.cells = {Cell::of_int(n), Cell::of(s), Cell::of(lp), Cell::of(det), Cell::of(lp - det)};
    return row;
  });
  // Discrepancies must fall monotonically at a rate consistent with O(1/n).
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error.empty()) continue;
    if (i == 0 || !rows[i - 1].error.empty()) {
      rows[i].cells.push_back(Cell::of_text(""));
      continue;
    }
    const Real prev = abs(rows[i - 1].cells[4].real);
    const Real cur = abs(rows[i].cells[4].real);
    const double ratio = (prev / cur).to_double();
    rows[i].cells.push_back(Cell::of(ratio));
    rows[i].pass = cur < prev && ratio >= 1.5 && ratio <= 2.8;
  }
  r.rows = std::move(rows);
  backfill_inputs(r.rows, ns);
  return r;
}

Report sym_gap_report(RunConfig c) {
  c.series = "sym-gap";
  if (c.tol <= 0.0) c.tol = 1e-3;
  Report r = asymptotic_report(c);
  for (auto& row : r.rows) {
    if (!row.error.empty()) continue;
    row.pass = abs(row.cells[3].real).to_double() <= c.tol;
  }
  return r;
}

Report barnes_report(const RunConfig& c) {
  const int bits = c.bits > 0 ? c.bits : 256;
  const double tol = threshold(c, 1e-10);
  Report r;
  r.digits = report_digits(bits);
  r.columns = {"z", "recursion", "splice", "diff"};
  const std::vector<double> zs = {10.3, 30.7, 100.1, 0.5};
  r.rows = parallel_rows(zs.size(), c.threads, [&](std::size_t i) {
    const PrecisionCtx ctx(bits);
    PrecisionScope scope(ctx.guarded());
    const Real z = zs[i];
    const Real a = specfun::log_barnes_g(z, ctx);
    Real b;
    double limit = tol;
    if (zs[i] > 1.0) {
      b = specfun::log_barnes_g_expansion(z - 1, 10, ctx);
    } else {
      // G(1/2) closed form.
      b = Real(3) / 2 * specfun::zeta_prime_minus_one(ctx) - log(pi()) / 4 + log(Real(2)) / 24;
      limit = std::min(tol, 1e-12);
    }
    ReportRow row;
    row.cells = {Cell::of(zs[i]), Cell::of(a), Cell::of(b), Cell::of(a - b)};
    row.pass = abs(a - b).to_double() <= limit;
    return row;
  });
  backfill_inputs(r.rows, zs);
  return r;
}

Report validate_report(const RunConfig& c) {
  const std::string& s = c.suite;
  if (s == "painleve-vs-hankel") return painleve_report(c, threshold(c, 1e-6));
  if (s == "identities") return identities_report(c);
  if (s == "alpha-zero") return alpha_zero_report(c);
  if (s == "closed-form") return closed_form_report(c);
  if (s == "hard-edge") return hard_edge_report(c);
  if (s == "sym-gap") return sym_gap_report(c);
  if (s == "mc") return mc_report(c);
  if (s == "barnes") return barnes_report(c);
  throw UsageError("unknown suite '" + s +
                   "' (painleve-vs-hankel, identities, alpha-zero, closed-form, hard-edge, sym-gap, mc, barnes)");
}

}  // namespace

// --- GridSpec ------------------------------------------------------------

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  GridSpec g;
  if (parts.size() == 1) {
    g.lo = g.hi = parse_double(parts[0]);
    g.count = 1;
    return g;
  }
  if (parts.size() != 3 && parts.size() != 4) throw UsageError("grid must be lo:hi:count[:log], got '" + text + "'");
  g.lo = parse_double(parts[0]);
  g.hi = parse_double(parts[1]);
  const double count = parse_double(parts[2]);
  if (count != std::floor(count) || count < 1 || count > 1e6) throw UsageError("grid count must be a positive integer");
  g.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] != "lin" && parts[3] != "linear") {
      throw UsageError("grid spacing must be 'log' or 'lin', got '" + parts[3] + "'");
    }
  }
  if (!(g.lo < g.hi) && g.count > 1) throw UsageError("grid needs lo < hi");
  if (!(g.lo <= g.hi)) throw UsageError("grid needs lo <= hi");
  if (g.log && !(g.lo > 0)) throw UsageError("log grid needs lo > 0");
  return g;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v;
  if (count == 1) return {lo};
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    double x = hi;
    if (i < count - 1) x = log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    // Snap to 15 significant digits so 0.1:0.9:9 yields 0.3, not 0.30000000000000004.
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
    v.push_back(parse_double(std::string(buf, res.ptr)));
  }
  return v;
}

std::string GridSpec::str() const {
  if (count == 1 && lo == hi) return format_double(lo);
  return format_double(lo) + ":" + format_double(hi) + ":" + std::to_string(count) + (log ? ":log" : "");
}

// --- RunConfig -----------------------------------------------------------

void RunConfig::validate() const {
  static const std::vector<std::string> known = {"finite", "painleve", "fredholm", "asymptotic",
                                                  "mc",     "constant", "validate"};
  if (std::find(known.begin(), known.end(), subcommand) == known.end()) {
    throw UsageError("unknown subcommand '" + subcommand + "'");
  }
  if (bits != 0 && bits < 53) throw UsageError("--bits must be >= 53");
  if (!(alpha > -1.0)) throw UsageError("--alpha must be > -1");
  if (!(beta > -1.0)) throw UsageError("--beta must be > -1");
  if (n < 1) throw UsageError("--n must be >= 1");
  if (m != 0 && m < 4) throw UsageError("--m must be >= 4");
  if (ode_tol < 0.0) throw UsageError("--ode-tol must be >= 0");
  if (samples < 100) throw UsageError("--samples must be >= 100");
  if (threads < 1) throw UsageError("--threads must be >= 1");
  if (subcommand == "validate" && suite.empty()) throw UsageError("validate requires --suite");
  if (seed_mode != "series_at_zero" && seed_mode != "large_n_seed") {
    throw UsageError("--seed-mode must be series_at_zero or large_n_seed");
  }
  for (const auto* g : {&t, &s, &b}) {
    if (*g && (*g)->count < 1) throw UsageError("grid count must be >= 1");
  }
  if (t) {
    for (double v : t->values())
      if (!(v > 0.0 && v < 1.0)) throw UsageError("--t values must lie in (0, 1)");
  }
  if (s && !(s->lo > 0.0)) throw UsageError("--s values must be > 0");
  if (b && !(b->lo > 0.0)) throw UsageError("--b values must be > 0");
  if (subcommand == "constant" && s && s->lo < 100.0) throw UsageError("constant requires s >= 100");
  if (subcommand == "mc" || (subcommand == "validate" && suite == "mc")) require_integer_params(*this);
}

std::string RunConfig::to_json() const {
  json j;
  j["subcommand"] = subcommand;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["n"] = n;
  if (t) j["t"] = t->str();
  if (s) j["s"] = s->str();
  if (b) j["b"] = this->b->str();
  j["bits"] = bits;
  j["m"] = m;
  j["ode_tol"] = ode_tol;
  j["seed"] = seed;
  j["samples"] = samples;
  j["format"] = format == Format::csv ? "csv" : "json";
  j["threads"] = threads;
  if (!suite.empty()) j["suite"] = suite;
  if (subcommand == "asymptotic") j["series"] = series;
  if (check_doubling) j["check_doubling"] = true;
  if (largest) j["largest"] = true;
  if (subcommand == "painleve") j["seed_mode"] = seed_mode;
  if (tol > 0.0) j["tol"] = tol;
  return j.dump();
}

// --- Cell / Report -------------------------------------------------------

Cell Cell::of(const Real& v) {
  Cell c;
  c.kind = Kind::real;
  c.real = v;
  return c;
}

Cell Cell::of(double v) {
  Cell c;
  c.kind = Kind::number;
  c.number = v;
  return c;
}

Cell Cell::of_int(long long v) {
  Cell c;
  c.kind = Kind::integer;
  c.integer = v;
  return c;
}

Cell Cell::of_text(std::string v) {
  Cell c;
  c.kind = Kind::text;
  c.text = std::move(v);
  return c;
}

Cell Cell::of_flag(bool v) {
  Cell c;
  c.kind = Kind::flag;
  c.flag = v;
  return c;
}

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass && r.error.empty(); });
}

void Report::write(std::ostream& os, const RunConfig& config) const {
  if (config.format == Format::json) {
    json doc;
    doc["tool"] = "hardedge";
    doc["version"] = kVersion;
    doc["config"] = json::parse(config.to_json());
    doc["columns"] = columns;
    json out_rows = json::array();
    for (const auto& row : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i)
        o[columns[i]] = i < row.cells.size() ? cell_json(row.cells[i], digits) : json(nullptr);
      o["pass"] = row.pass && row.error.empty();
      if (!row.error.empty()) o["error"] = row.error;
      out_rows.push_back(std::move(o));
    }
    doc["rows"] = std::move(out_rows);
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# hardedge v" << kVersion << " config=" << config.to_json() << '\n';
  for (const auto& c : columns) os << c << ',';
  os << "pass,error\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i < row.cells.size()) os << csv_escape(cell_text(row.cells[i], digits));
      os << ',';
    }
    os << ((row.pass && row.error.empty()) ? "true" : "false") << ',' << csv_escape(row.error) << '\n';
  }
}

Report build_report(const RunConfig& config) {
  config.validate();
  const std::string& sc = config.subcommand;
  if (sc == "finite") return finite_report(config);
  if (sc == "painleve") return painleve_report(config, threshold(config, 1e-6));
  if (sc == "fredholm") return fredholm_report(config);
  if (sc == "asymptotic") return asymptotic_report(config);
  if (sc == "mc") return mc_report(config);
  if (sc == "constant") return constant_report(config);
  return validate_report(config);
}

int run(const RunConfig& config) {
  Report report;
  try {
    report = build_report(config);
  } catch (const UsageError& e) {
    std::cerr << "hardedge: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "hardedge: " << e.what() << '\n';
    return 2;
  }
  if (config.out.empty()) {
    report.write(std::cout, config);
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      std::cerr << "hardedge: cannot open " << config.out << '\n';
      return 2;
    }
    report.write(file, config);
  }
  for (const auto& row : report.rows)
    if (!row.error.empty()) std::cerr << "hardedge: " << row.error << '\n';
  return report.all_pass() ? 0 : 1;
}

ConstantEstimate constant_extract(double alpha, double s_lo, double s_hi, int points, int m, const PrecisionCtx& ctx) {
  if (!(s_lo >= 100.0)) throw DomainError("constant_extract: s_lo must be >= 100");
  if (!(s_hi >= s_lo)) throw DomainError("constant_extract: s_hi must be >= s_lo");
  if (points < 1) throw DomainError("constant_extract: points must be >= 1");
  PrecisionScope scope(ctx.guarded());
  GridSpec g{s_lo, s_hi, points, true};
  if (s_hi == s_lo) g.count = 1;
  ConstantEstimate est;
  Real sum = 0;
  const Real a = alpha;
  for (double s : g.values()) {
    const int mm = m > 0 ? m : fredholm::default_points(s);
    const auto det = fredholm::log_fredholm_det_verified(Real(s), alpha, mm, 1e-8, ctx);
    sum += det.value - asymptotics::logdet_series_nonconstant(Real(s), a, ctx);
    est.s_values.push_back(s);
    est.points.push_back(mm);
  }
  est.c_hat = sum / static_cast<long>(est.s_values.size());
  est.c_exact = asymptotics::logdet_constant(a, ctx);
  est.error = abs(est.c_hat - est.c_exact);
  return est;
}

int report_digits(int bits) { return std::max(1, std::min(30, static_cast<int>(bits / 3.3))); }

}  // namespace hardedge::cli
