#pragma once

// Cyclic Jacobi eigensolver for Hermitian (complex) and symmetric (real)
// matrices. Sweeps until the largest off-diagonal magnitude drops below
// tol * max(1, ||A||_F) or max_sweeps is reached.

#include <complex>
#include <vector>

#include "qgrnn/matrix.hpp"

namespace qgrnn {

template <typename T>
struct Eigensystem {
  std::vector<double> values;  // ascending
  Matrix<T> vectors;           // column k pairs with values[k]; columns orthonormal
  int sweeps = 0;
};

struct JacobiOptions {
  double tolerance = 1e-12;
  int max_sweeps = 100;
  // Input must satisfy |A(r,c) - conj(A(c,r))| <= hermitian_tolerance.
  double hermitian_tolerance = 1e-10;
};

Eigensystem<std::complex<double>> hermitian_eigendecompose(const Matrix<std::complex<double>>& h,
                                                           const JacobiOptions& options = {});

Eigensystem<double> symmetric_eigendecompose(const Matrix<double>& a,
                                             const JacobiOptions& options = {});

}  // namespace qgrnn
