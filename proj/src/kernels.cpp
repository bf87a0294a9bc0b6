#include "spdc/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace spdc::kernels {

namespace {

void require_square(const Matrix& f) {
  if (f.rows() != f.cols() || f.rows() == 0) {
    throw std::invalid_argument("exchange sums need a non-empty square matrix");
  }
}

std::complex<double> series_at(const std::vector<std::complex<double>>& g, Eigen::Index n, double d_omega,
                               double tau) {
  // Pairs +d and -d so the result is real to rounding for symmetric inputs.
  std::complex<double> acc = g[n - 1];
  for (Eigen::Index d = 1; d < n; ++d) {
    const double phase = static_cast<double>(d) * d_omega * tau;
    const std::complex<double> e(std::cos(phase), -std::sin(phase));
    acc += g[n - 1 + d] * e + g[n - 1 - d] * std::conj(e);
  }
  return acc;
}

}  // namespace

std::vector<std::complex<double>> hom_series_direct(const Matrix& f, double d_omega,
                                                    const std::vector<double>& tau) {
  require_square(f);
  const Eigen::Index n = f.rows();
  std::vector<std::complex<double>> out(tau.size());
  for (std::size_t t = 0; t < tau.size(); ++t) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double phase = static_cast<double>(j - k) * d_omega * tau[t];
        acc += f(j, k) * std::conj(f(k, j)) * std::complex<double>(std::cos(phase), -std::sin(phase));
      }
    }
    out[t] = acc;
  }
  return out;
}

std::vector<std::complex<double>> exchange_diagonals(const Matrix& f) {
  require_square(f);
  const Eigen::Index n = f.rows();
  std::vector<std::complex<double>> g(static_cast<std::size_t>(2 * n - 1), 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) g[j - k + n - 1] += f(j, k) * std::conj(f(k, j));
  }
  return g;
}

std::vector<std::complex<double>> hom_series(const Matrix& f, double d_omega, const std::vector<double>& tau,
                                             Execution exec) {
  const auto g = exchange_diagonals(f);
  const Eigen::Index n = f.rows();
  const auto count = static_cast<long>(tau.size());
  std::vector<std::complex<double>> out(tau.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < count; ++t) out[t] = series_at(g, n, d_omega, tau[t]);
  } else {
    for (long t = 0; t < count; ++t) out[t] = series_at(g, n, d_omega, tau[t]);
  }
  return out;
}

}  // namespace spdc::kernels
