#include "hardedge/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "hardedge/errors.hpp"

namespace hardedge::mc {

namespace {

std::mt19937_64 make_engine(RngSpec rng, std::uint32_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng.seed), static_cast<std::uint32_t>(rng.seed >> 32),
                    static_cast<std::uint32_t>(rng.stream), static_cast<std::uint32_t>(rng.stream >> 32), attempt};
  return std::mt19937_64(seq);
}

// Unit-variance complex Gaussian matrix (real and imaginary parts N(0, 1/2)).
Eigen::MatrixXcd ginibre(int rows, int cols, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      m(i, j) = {re, im};
    }
  return m;
}

bool draw(int n, int alpha, int beta, std::mt19937_64& engine, std::vector<double>& out) {
  const Eigen::MatrixXcd x = ginibre(n, n + alpha, engine);
  const Eigen::MatrixXcd y = ginibre(n, n + beta, engine);
  const Eigen::MatrixXcd w1 = x * x.adjoint();
  const Eigen::MatrixXcd w2 = y * y.adjoint();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w1, w1 + w2, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  const auto& ev = solver.eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  for (auto& v : out) v = std::clamp(v, 0.0, 1.0);
  return std::adjacent_find(out.begin(), out.end()) == out.end();
}

}  // namespace

SpectrumSample sample_spectrum(int n, int alpha, int beta, RngSpec rng) {
  if (n < 1) throw DomainError("sample_spectrum: n must be >= 1");
  if (alpha < 0 || beta < 0) throw DomainError("sample_spectrum: alpha and beta must be non-negative integers");
  SpectrumSample s;
  for (std::uint32_t attempt = 0;; ++attempt) {
    auto engine = make_engine(rng, attempt);
    if (draw(n, alpha, beta, engine, s.eigenvalues)) return s;
    ++s.resamples;
    if (attempt > 1000) throw ConvergenceError("sample_spectrum: repeated eigensolver failure");
  }
}

SurvivalEstimate survival_estimate(long samples, double t, int n, int alpha, int beta, std::uint64_t seed,
                                   int threads) {
  if (samples < 100) throw DomainError("survival_estimate: samples must be >= 100");
  if (!(t > 0.0 && t < 1.0)) throw DomainError("survival_estimate: t must lie in (0, 1)");
  if (n < 1) throw DomainError("survival_estimate: n must be >= 1");
  if (alpha < 0 || beta < 0) throw DomainError("survival_estimate: alpha and beta must be non-negative integers");
  threads = std::max(1, threads);

  struct Tally {
    long hits = 0;
    long resamples = 0;
  };
  std::vector<Tally> tallies(static_cast<std::size_t>(threads));
  auto work = [&](int w) {
    Tally& tally = tallies[static_cast<std::size_t>(w)];
    for (long i = w; i < samples; i += threads) {
      const auto s = sample_spectrum(n, alpha, beta, {seed, static_cast<std::uint64_t>(i)});
      if (s.eigenvalues.front() >= t) ++tally.hits;
      tally.resamples += s.resamples;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  SurvivalEstimate est;
  est.samples = samples;
  long hits = 0;
  for (const auto& tally : tallies) {
    hits += tally.hits;
    est.resamples += tally.resamples;
  }
  est.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  est.se = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  return est;
}

}  // namespace hardedge::mc
