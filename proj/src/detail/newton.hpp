#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

namespace satflux::detail {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
double inf_norm(const Vec<N>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
template <std::size_t N>
std::optional<Vec<N>> solve_linear(std::array<Vec<N>, N> A, Vec<N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    if (!(std::abs(A[piv][col]) > 0.0) || !std::isfinite(A[piv][col])) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double m = A[r][col] / A[col][col];
      for (std::size_t c = col; c < N; ++c) A[r][c] -= m * A[col][c];
      b[r] -= m * b[col];
    }
  }
  Vec<N> x{};
  for (std::size_t i = N; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < N; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

/// Central-difference Jacobian of F: R^M -> R^K (one-sided where a neighbour
/// leaves the domain). Row-major: J[k][j] = dF_k / dz_j.
template <std::size_t K, std::size_t M, class F>
std::optional<std::array<Vec<M>, K>> fd_jacobian(F&& f, const Vec<M>& z, const Vec<K>& fz,
                                                 const Vec<M>& steps) {
  std::array<Vec<M>, K> J{};
  for (std::size_t j = 0; j < M; ++j) {
    const double h = steps[j];
    Vec<M> zp = z;
    Vec<M> zm = z;
    zp[j] += h;
    zm[j] -= h;
    const std::optional<Vec<K>> fp = f(zp);
    const std::optional<Vec<K>> fm = f(zm);
    for (std::size_t k = 0; k < K; ++k) {
      if (fp && fm) {
        J[k][j] = ((*fp)[k] - (*fm)[k]) / (2.0 * h);
      } else if (fp) {
        J[k][j] = ((*fp)[k] - fz[k]) / h;
      } else if (fm) {
        J[k][j] = (fz[k] - (*fm)[k]) / h;
      } else {
        return std::nullopt;
      }
    }
  }
  return J;
}

template <std::size_t N>
struct NewtonResult {
  bool converged = false;
  Vec<N> z{};
  Vec<N> residual{};
  int iterations = 0;
};

/// Damped Newton with a finite-difference Jacobian. `f` returns nullopt
/// outside its domain; the line search backtracks out of such points.
template <std::size_t N, class F>
NewtonResult<N> damped_newton(F&& f, Vec<N> z, const Vec<N>& steps, double tol, int max_iter) {
  NewtonResult<N> out;
  std::optional<Vec<N>> r = f(z);
  if (!r) return out;
  double norm = inf_norm(*r);
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    if (!std::isfinite(norm)) return out;
    if (norm <= tol) {
      out.converged = true;
      break;
    }
    const auto J = fd_jacobian<N, N>(f, z, *r, steps);
    if (!J) break;
    Vec<N> rhs;
    for (std::size_t i = 0; i < N; ++i) rhs[i] = -(*r)[i];
    const std::optional<Vec<N>> delta = solve_linear<N>(*J, rhs);
    if (!delta) break;
    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      Vec<N> trial = z;
      for (std::size_t i = 0; i < N; ++i) trial[i] += t * (*delta)[i];
      const std::optional<Vec<N>> rt = f(trial);
      if (!rt) continue;
      const double nt = inf_norm(*rt);
      if (nt < (1.0 - 1e-4 * t) * norm) {
        z = trial;
        r = rt;
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Stagnation at the rounding floor still counts as convergence.
      out.converged = norm <= 1e3 * tol;
      break;
    }
  }
  if (norm <= tol) out.converged = true;
  out.z = z;
  out.residual = *r;
  return out;
}

}  // namespace satflux::detail
