#include "qgrnn/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <type_traits>

namespace qgrnn {
namespace {

double conj_of(double x) { return x; }
std::complex<double> conj_of(std::complex<double> x) { return std::conj(x); }
double real_of(double x) { return x; }
double real_of(std::complex<double> x) { return x.real(); }

template <typename T>
Eigensystem<T> jacobi(const Matrix<T>& input, const JacobiOptions& options) {
  const std::size_t n = input.rows();
  if (n == 0 || input.cols() != n) throw std::invalid_argument("eigendecompose: matrix must be square");

  double frob = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      frob += std::norm(std::complex<double>(input(r, c)));
      if (std::abs(input(r, c) - conj_of(input(c, r))) > options.hermitian_tolerance) {
        throw std::invalid_argument("eigendecompose: matrix is not Hermitian");
      }
    }
  }
  const double threshold = options.tolerance * std::max(1.0, std::sqrt(frob));

  // Work on the symmetrized copy so round-off in the input cannot bias it.
  Matrix<T> a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = T(real_of(input(r, r)));
    for (std::size_t c = r + 1; c < n; ++c) {
      a(r, c) = (input(r, c) + conj_of(input(c, r))) * 0.5;
      a(c, r) = conj_of(a(r, c));
    }
  }
  Matrix<T> v = Matrix<T>::identity(n);

  auto max_off = [&] {
    double m = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) m = std::max(m, std::abs(a(r, c)));
    return m;
  };

  int sweep = 0;
  for (; sweep < options.max_sweeps && max_off() >= threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        const double g = std::abs(apq);
        if (g < threshold * 1e-3) continue;
        const T u = apq / g;  // unit phase
        const double app = real_of(a(p, p));
        const double aqq = real_of(a(q, q));
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        // J restricted to (p, q): col p = (c, -s conj(u)), col q = (s, c conj(u)).
        const T uc = conj_of(u);
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * cs - akq * (sn * uc);
          a(k, q) = akp * sn + akq * (cs * uc);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = apk * cs - aqk * (sn * u);
          a(q, k) = apk * sn + aqk * (cs * u);
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = T(app - t * g);
        a(q, q) = T(aqq + t * g);
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * cs - vkq * (sn * uc);
          v(k, q) = vkp * sn + vkq * (cs * uc);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return real_of(a(x, x)) < real_of(a(y, y)); });

  Eigensystem<T> out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix<T>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = real_of(a(order[k], order[k]));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace

Eigensystem<std::complex<double>> hermitian_eigendecompose(const Matrix<std::complex<double>>& h,
                                                           const JacobiOptions& options) {
  return jacobi(h, options);
}

Eigensystem<double> symmetric_eigendecompose(const Matrix<double>& a, const JacobiOptions& options) {
  return jacobi(a, options);
}

}  // namespace qgrnn
