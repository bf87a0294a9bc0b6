#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spdc/execution.hpp"

// Hot loops shared by the JSA and HOM code. Each kernel has a serial
// reference and an OpenMP path; tests hold them against each other.
namespace spdc::kernels {

using Matrix = Eigen::MatrixXcd;

// out(j, k) = f(j, k). Entries are independent, so both paths produce
// identical matrices.
template <class F>
void fill(Matrix& out, F&& f, Execution exec) {
  const Eigen::Index rows = out.rows();
  const Eigen::Index cols = out.cols();
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < cols; ++k) {
      for (Eigen::Index j = 0; j < rows; ++j) out(j, k) = f(j, k);
    }
  } else {
    for (Eigen::Index k = 0; k < cols; ++k) {
      for (Eigen::Index j = 0; j < rows; ++j) out(j, k) = f(j, k);
    }
  }
}

/// Direct evaluation of
///   C(tau) = sum_{j,k} f(j,k) conj(f(k,j)) exp(-i (j - k) d_omega tau)
/// for a square matrix. O(n^2) per delay; the reference for hom_series.
std::vector<std::complex<double>> hom_series_direct(const Matrix& f, double d_omega,
                                                    const std::vector<double>& tau);

/// Diagonal sums G_d = sum_{j - k = d} f(j,k) conj(f(k,j)), d = -(n-1)..n-1,
/// stored at index d + n - 1.
std::vector<std::complex<double>> exchange_diagonals(const Matrix& f);

/// Same quantity as hom_series_direct, via the diagonal sums: O(n) per delay.
/// Delays are independent and each is reduced in a fixed order, so the
/// serial and parallel paths agree bit for bit.
std::vector<std::complex<double>> hom_series(const Matrix& f, double d_omega, const std::vector<double>& tau,
                                             Execution exec);

}  // namespace spdc::kernels
