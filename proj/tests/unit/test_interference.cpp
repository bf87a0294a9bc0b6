#include <cmath>
#include <complex>

#include <doctest.h>

#include "fixtures.hpp"
#include "spdc/error.hpp"
#include "spdc/interference.hpp"
#include "spdc/kernels.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {

// Normalized JSA on a symmetric grid from an arbitrary matrix.
JointSpectralAmplitude from_matrix(const Eigen::MatrixXcd& m, double half_span = 1e13) {
  JointSpectralAmplitude jsa;
  jsa.grid = SpectralGrid::square(1e15, half_span, static_cast<std::size_t>(m.rows()));
  jsa.values = m;
  jsa.values /= std::sqrt(jsa.norm_squared());
  jsa.normalized = true;
  jsa.meta.pump = {1000.0, 1.0};
  return jsa;
}

Eigen::MatrixXcd gaussian_blob(int n, double cs, double ci, double w) {
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m(j, k) = std::exp(-((j - cs) * (j - cs) + (k - ci) * (k - ci)) / (w * w));
  }
  return m;
}

JointSpectralAmplitude cta_jsa(double temp, std::size_t points = 512) {
  const auto m = fixtures::db().medium(Crystal::CTA);
  const auto d = gvm1_design(m, 20.0);
  return compute_jsa_auto(m, {30.0, d.poling_period_um, temp}, {d.lambda_p_nm, 0.87}, {points});
}

}  // namespace

TEST_SUITE("interference") {
  TEST_CASE("exchange-symmetric JSA gives zero coincidences at zero delay") {
    const auto jsa = from_matrix(gaussian_blob(48, 20.0, 20.0, 6.0));
    CHECK(hom_probability(jsa, 0.0) < 1e-12);
  }

  TEST_CASE("exchange-antisymmetric JSA gives certain coincidence at zero delay") {
    const Eigen::MatrixXcd b = gaussian_blob(48, 18.0, 28.0, 5.0);
    const auto jsa = from_matrix(b - b.transpose());
    CHECK(hom_probability(jsa, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("far delays approach one half") {
    const auto jsa = from_matrix(gaussian_blob(64, 31.5, 31.5, 8.0));
    // Coherence time ~ 1 / (w d_omega); stay inside the alias period.
    const double dw = jsa.grid.d_omega_s();
    const double tau = 0.4 * units::kTwoPi / dw;
    CHECK(hom_probability(jsa, tau) == doctest::Approx(0.5).epsilon(1e-3));
  }

  TEST_CASE("diagonal-grouped series matches the direct double sum") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(40, 40);
    std::vector<double> tau;
    for (int k = -10; k <= 10; ++k) tau.push_back(k * 1.3e-14);
    const double dw = 2.1e11;
    const auto direct = kernels::hom_series_direct(m, dw, tau);
    const auto fast = kernels::hom_series(m, dw, tau, Execution::Serial);
    const auto par = kernels::hom_series(m, dw, tau, Execution::Parallel);
    for (std::size_t k = 0; k < tau.size(); ++k) {
      CHECK(std::abs(direct[k] - fast[k]) < 1e-10 * m.squaredNorm());
      CHECK(fast[k] == par[k]);
    }
  }

  TEST_CASE("serial and parallel traces agree") {
    const auto jsa = cta_jsa(25.0, 256);
    HomOptions serial;
    serial.exec = Execution::Serial;
    const auto a = hom_trace(jsa, serial);
    const auto b = hom_trace(jsa);
    REQUIRE(a.p.size() == b.p.size());
    for (std::size_t k = 0; k < a.p.size(); ++k) CHECK(a.p[k] == doctest::Approx(b.p[k]).epsilon(1e-10));
    CHECK(a.dip_count == b.dip_count);
  }

  TEST_CASE("trace symmetry, bounds and transposition") {
    const auto jsa = cta_jsa(25.0, 256);
    const auto trace = hom_trace(jsa);
    const std::size_t n = trace.p.size();
    REQUIRE(n == 513);
    CHECK(trace.tau_s[n / 2] == 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(trace.tau_s[k] == -trace.tau_s[n - 1 - k]);
      CHECK(std::abs(trace.p[k] - trace.p[n - 1 - k]) < 1e-12);
      CHECK(trace.p[k] >= 0.0);
      CHECK(trace.p[k] <= 1.0);
    }
    auto transposed = jsa;
    transposed.values = jsa.values.transpose();
    const auto t2 = hom_trace(transposed);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(t2.p[k] - trace.p[n - 1 - k]) < 1e-12);
    CHECK(trace.baseline == doctest::Approx(0.5).epsilon(5e-3));
  }

  TEST_CASE("degenerate design gives a single full-visibility dip") {
    const auto trace = hom_trace(cta_jsa(20.0));
    CHECK(trace.visibility == doctest::Approx(1.0).epsilon(0.02));
    CHECK(trace.dip_count == 1);
    const auto lowest = std::min_element(trace.p.begin(), trace.p.end()) - trace.p.begin();
    CHECK(static_cast<std::size_t>(lowest) == trace.p.size() / 2);
  }

  TEST_CASE("detuned grating lowers visibility and splits the dip") {
    const auto m = fixtures::db().medium(Crystal::CTA);
    const auto d = gvm1_design(m, 20.0);
    // Grating that phase matches signal 6 nm below degeneracy.
    const double ls = d.lambda_deg_nm - 6.0;
    const double li = 1.0 / (1.0 / d.lambda_p_nm - 1.0 / ls);
    const double mismatch = -phase_mismatch(m, {Crystal::CTA, {}, d.lambda_p_nm, 1e12, 20.0}, ls, li);
    const auto jsa = compute_jsa_auto(m, {30.0, units::kTwoPi / mismatch, 20.0}, {d.lambda_p_nm, 0.87});
    const auto trace = hom_trace(jsa);
    CHECK(trace.visibility < 0.1);
    CHECK(trace.dip_count > 2);
  }

  TEST_CASE("visibility, baseline and dip counting on fixtures") {
    CHECK(visibility(std::vector<double>(10, 0.5)) == 0.0);
    CHECK(visibility({0.5, 0.0, 0.5}) == 1.0);
    CHECK(visibility({0.5, 0.25, 0.5}) == doctest::Approx(1.0 / 3.0));

    std::vector<double> monotone(101);
    for (int k = 0; k < 101; ++k) monotone[k] = 0.3 + 0.002 * k;
    CHECK(count_dips(monotone, 0.5) == 0);

    std::vector<double> triangle(101, 0.5);
    for (int k = 40; k <= 60; ++k) triangle[k] = 0.5 - 0.4 * (1.0 - std::abs(k - 50) / 10.0);
    CHECK(count_dips(triangle, baseline(triangle)) == 1);

    std::vector<double> plateau = triangle;
    for (int k = 48; k <= 52; ++k) plateau[k] = 0.1;
    CHECK(count_dips(plateau, 0.5) == 1);

    std::vector<double> shallow(101, 0.5);
    shallow[50] = 0.495;
    CHECK(count_dips(shallow, 0.5) == 0);

    std::vector<double> flat(200, 0.5);
    flat[0] = flat[199] = 0.6;
    CHECK(baseline(flat) == doctest::Approx(0.51));
  }

  TEST_CASE("preconditions") {
    auto jsa = from_matrix(gaussian_blob(32, 15.5, 15.5, 4.0));
    HomOptions even;
    even.steps = 100;
    CHECK_THROWS_AS(hom_trace(jsa, even), std::invalid_argument);
    HomOptions aliased;
    aliased.tau_max_s = units::kTwoPi / jsa.grid.d_omega_s();
    CHECK_THROWS_AS(hom_trace(jsa, aliased), GridError);
    jsa.grid.omega_i[0] *= 0.999;
    CHECK_THROWS_AS(hom_probability(jsa, 0.0), GridError);
  }

  TEST_CASE("CSV layout") {
    const auto jsa = cta_jsa(20.0, 256);
    const auto trace = hom_trace(jsa);
    const auto csv = hom_to_csv(trace, jsa);
    CHECK(csv.find("# visibility: ") != std::string::npos);
    CHECK(csv.find("# dip_count: 1\n") != std::string::npos);
    CHECK(csv.find("\ntau_fs,p\n") != std::string::npos);
    CHECK(csv.find("\n0.000,0.0") != std::string::npos);
  }
}
