#include "hardedge/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "hardedge/errors.hpp"

namespace hardedge::linalg {

bool cholesky(const Matrix& a, Matrix& lower) {
  const std::size_t n = a.rows();
  lower = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Real diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= lower(j, k) * lower(j, k);
    if (!(diag > 0)) return false;
    const Real ljj = sqrt(diag);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Real s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / ljj;
    }
  }
  return true;
}

std::vector<Real> forward_substitute(const Matrix& lower, std::span<const Real> b) {
  const std::size_t n = lower.rows();
  std::vector<Real> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Real s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * y[k];
    y[i] = s / lower(i, i);
  }
  return y;
}

std::vector<Real> back_substitute_transposed(const Matrix& lower, std::span<const Real> y) {
  const std::size_t n = lower.rows();
  std::vector<Real> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Real s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower(k, ii) * x[k];
    x[ii] = s / lower(ii, ii);
  }
  return x;
}

Matrix invert_lower(const Matrix& lower) {
  const std::size_t n = lower.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = Real(1) / lower(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      Real s = 0;
      for (std::size_t k = j; k < i; ++k) s -= lower(i, k) * inv(k, j);
      inv(i, j) = s / lower(i, i);
    }
  }
  return inv;
}

Real bilinear(std::span<const Real> x, const Matrix& a, std::span<const Real> y) {
  Real total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Real row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row += a(i, j) * y[j];
    total += x[i] * row;
  }
  return total;
}

namespace {

Real hypot(const Real& a, const Real& b) { return sqrt(a * a + b * b); }

}  // namespace

void tridiagonal_eigen(std::vector<Real>& d, std::vector<Real>& e, std::vector<Real>* first_row) {
  const std::size_t n = d.size();
  if (e.size() < n) e.resize(n);
  if (n == 0) return;
  e[n - 1] = 0;
  if (first_row) {
    first_row->assign(n, Real(0));
    (*first_row)[0] = 1;
  }
  const Real eps = ldexp(Real(1), -(working_bits() - 2));
  const int max_iter = 60 + 4 * working_bits();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const Real dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iter) {
          throw ConvergenceError("tridiagonal eigensolver: no convergence for eigenvalue " + std::to_string(l));
        }
        Real g = (d[l + 1] - d[l]) / (2 * e[l]);
        Real r = hypot(g, Real(1));
        g = d[m] - d[l] + e[l] / (g + (g.sign() >= 0 ? abs(r) : -abs(r)));
        Real s = 1;
        Real c = 1;
        Real p = 0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          const Real f = s * e[i];
          const Real b = c * e[i];
          r = hypot(f, g);
          e[i + 1] = r;
          if (r.is_zero()) {
            d[i + 1] -= p;
            e[m] = 0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (first_row) {
            auto& z = *first_row;
            const Real zf = z[i + 1];
            z[i + 1] = s * z[i] + c * zf;
            z[i] = c * z[i] - s * zf;
          }
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0;
      }
    } while (m != l);
  }
}

std::vector<Real> symmetric_eigenvalues(Matrix z) {
  const std::size_t n = z.rows();
  std::vector<Real> d(n), e(n);
  if (n == 0) return d;
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    Real h = 0;
    if (l > 0) {
      Real scale = 0;
      for (std::size_t k = 0; k <= l; ++k) scale += abs(z(i, k));
      if (scale.is_zero()) {
        e[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        Real f = z(i, l);
        Real g = f.sign() >= 0 ? -sqrt(h) : sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const Real hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = z(i, i);
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0;
  tridiagonal_eigen(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace hardedge::linalg
