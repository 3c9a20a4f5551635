#pragma once

// Monte Carlo sampler of JUE spectra for integer (alpha, beta).
//
// Eigenvalues of W1 (W1 + W2)^-1 with W1, W2 complex Wishart of shapes
// n x (n + alpha) and n x (n + beta) follow the density
// prod x^alpha (1-x)^beta |Vandermonde|^2 on [0, 1]^n.

#include <cstdint>
#include <vector>

namespace hardedge::mc {

/// Sample `stream` of a run keyed by `seed`. Equal specs give bit-identical
/// samples independent of thread count.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct SpectrumSample {
  std::vector<double> eigenvalues;  // ascending, in [0, 1]
  int resamples = 0;                // draws rejected for ties or solver failure
};

SpectrumSample sample_spectrum(int n, int alpha, int beta, RngSpec rng);

struct SurvivalEstimate {
  double p_hat = 0.0;
  double se = 0.0;
  long samples = 0;
  long resamples = 0;
};

/// Fraction of spectra with smallest eigenvalue >= t. Sample i uses stream i.
SurvivalEstimate survival_estimate(long samples, double t, int n, int alpha, int beta, std::uint64_t seed,
                                   int threads = 1);

}  // namespace hardedge::mc
