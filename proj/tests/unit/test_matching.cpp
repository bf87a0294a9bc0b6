#include <cmath>

#include <doctest.h>

#include "fixtures.hpp"
#include "spdc/error.hpp"
#include "spdc/matching.hpp"
#include "spdc/roots.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {

// Group index from a numerical dk/domega; independent of the analytic path.
double group_index_fd(const DispersionModel& m, double lambda_um, double temp_c) {
  const double w = units::omega_from_um(lambda_um);
  const double dw = 1e-5 * w;
  const auto k = [&](double omega) { return wave_number(m, units::um_from_omega(omega), temp_c); };
  return (k(w + dw) - k(w - dw)) / (2 * dw) * units::kSpeedOfLightUm;
}

double gvm1_oracle(const Medium& medium, double temp_c) {
  const auto f = [&](double l_nm) {
    const double l = l_nm * 1e-3;
    return 2 * group_index_fd(medium[Axis::y], l / 2, temp_c) - group_index_fd(medium[Axis::y], l, temp_c) -
           group_index_fd(medium[Axis::z], l, temp_c);
  };
  double lo = 1000.0;
  double hi = 2300.0;
  // Coarse scan for the sign change, then plain bisection.
  for (double x = lo; x < hi; x += 1.0) {
    if ((f(x) > 0) != (f(x + 1.0) > 0)) {
      lo = x;
      hi = x + 1.0;
      break;
    }
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0) == (f(lo) > 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("roots") {
  TEST_CASE("bracket scan finds every sign change") {
    const auto f = [](double x) { return std::sin(x); };
    const auto b = roots::scan_brackets(f, 0.5, 10.0, 0.1);
    REQUIRE(b.size() == 3);
    CHECK(roots::bisect(f, b[0], 1e-12) == doctest::Approx(units::kPi).epsilon(1e-12));
    CHECK(roots::bisect(f, b[2], 1e-12) == doctest::Approx(3 * units::kPi).epsilon(1e-12));
  }

  TEST_CASE("exact zero on a node gives a degenerate bracket") {
    const auto b = roots::scan_brackets([](double x) { return x - 1.0; }, 0.0, 2.0, 0.5);
    REQUIRE(b.size() == 1);
    CHECK(b[0].lo == 1.0);
    CHECK(b[0].hi == 1.0);
  }

  TEST_CASE("unique_root reports missing and multiple roots") {
    CHECK_THROWS_AS(roots::unique_root([](double x) { return x * x + 1; }, -1.0, 1.0, 0.1, 1e-9, "f"), SolverError);
    CHECK_THROWS_AS(roots::unique_root([](double x) { return std::cos(x); }, 0.0, 10.0, 0.1, 1e-9, "f"), SolverError);
    CHECK(roots::unique_root([](double x) { return x * x - 2; }, 0.0, 3.0, 0.1, 1e-13, "f") ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_SUITE("matching") {
  TEST_CASE("GVM1 agrees with a finite-difference group-index oracle") {
    for (Crystal c : kAllCrystals) {
      const auto m = fixtures::db().medium(c);
      for (double temp : {20.0, 120.0}) {
        CAPTURE(to_string(c));
        CHECK(gvm1_wavelength(m, temp).lambda_nm == doctest::Approx(gvm1_oracle(m, temp)).epsilon(2e-7));
      }
    }
  }

  TEST_CASE("GVM residuals vanish at the solutions") {
    const auto m = fixtures::db().medium(Crystal::KTP);
    const auto g1 = gvm1_wavelength(m, 40.0);
    CHECK(std::abs(g1.residual) < 1e-6);
    CHECK(std::abs(gvm1_residual(m, g1.lambda_nm, 40.0)) < 1e-6);
    const auto g2 = gvm2_wavelength(m, 40.0, Photon::Idler);
    CHECK(std::abs(gvm2_residual(m, g2.lambda_nm, 40.0, Photon::Idler)) < 1e-6);
    CHECK(g2.condition == GvmCondition::GVM2_idler);
  }

  TEST_CASE("solver failures are SolverErrors naming the condition") {
    const auto m = fixtures::db().medium(Crystal::KTP);
    try {
      gvm2_wavelength(m, 20.0, Photon::Signal);
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(std::string(e.what()).find("gvm2-signal") != std::string::npos);
    }
    CHECK_THROWS_AS(gvm1_wavelength(m, 20.0, SolverWindow{1000.0, 1200.0, 0.5, 1e-4}), SolverError);
  }

  TEST_CASE("GVM3 keeps one sign for type-II") {
    for (Crystal c : kAllCrystals) {
      const auto m = fixtures::db().medium(c);
      const bool s = gvm3_residual(m, 1200.0, 20.0) > 0;
      for (double l = 1200.0; l <= 2100.0; l += 25.0) CHECK((gvm3_residual(m, l, 80.0) > 0) == s);
    }
  }

  TEST_CASE("degenerate grating phase matches the design point") {
    const auto m = fixtures::db().medium(Crystal::KTA);
    const double deg = gvm1_wavelength(m, 20.0).lambda_nm;
    const double period = degenerate_poling_period(m, deg, 20.0);
    CHECK(period > 0.0);
    const PhaseMatchSpec spec{Crystal::KTA, {}, deg / 2, period, 20.0};
    CHECK(std::abs(phase_mismatch(m, spec, deg, deg)) < 1e-9);
    const auto pair = phase_matched_pair(m, spec);
    CHECK(pair.degenerate);
    CHECK(pair.signal_nm == pair.idler_nm);
  }

  TEST_CASE("off-degenerate pairs conserve energy and phase match") {
    const auto m = fixtures::db().medium(Crystal::KTP);
    const double deg = gvm1_wavelength(m, 20.0).lambda_nm;
    const PhaseMatchSpec spec{Crystal::KTP, {}, deg / 2, degenerate_poling_period(m, deg, 20.0), 80.0};
    const auto pair = phase_matched_pair(m, spec);
    CHECK_FALSE(pair.degenerate);
    CHECK(std::abs(pair.residual) < 1e-9);
    CHECK(std::abs(1 / pair.signal_nm + 1 / pair.idler_nm - 2 / deg) * deg < 1e-13);
    CHECK(std::abs(phase_mismatch(m, spec, pair.signal_nm, pair.idler_nm)) < 1e-9);
  }

  TEST_CASE("swapping the photon axes swaps the pair") {
    const auto m = fixtures::db().medium(Crystal::KTP);
    const double deg = gvm1_wavelength(m, 20.0).lambda_nm;
    const double period = degenerate_poling_period(m, deg, 20.0);
    const TypeIIAssignment a;
    const auto p1 = phase_matched_pair(m, {Crystal::KTP, a, deg / 2, period, 70.0});
    const auto p2 = phase_matched_pair(m, {Crystal::KTP, a.swapped(), deg / 2, period, 70.0});
    CHECK(p1.signal_nm == doctest::Approx(p2.idler_nm).epsilon(1e-12));
    CHECK(p1.idler_nm == doctest::Approx(p2.signal_nm).epsilon(1e-12));
  }

  TEST_CASE("invalid phase-matching inputs") {
    const auto m = fixtures::db().medium(Crystal::KTP);
    CHECK_THROWS_AS(phase_mismatch(m, {Crystal::KTP, {}, 790.0, -1.0, 20.0}, 1580.0, 1580.0), std::invalid_argument);
    CHECK_THROWS_AS(phase_matched_pair(m, {Crystal::RTP, {}, 790.0, 45.0, 20.0}), std::invalid_argument);
  }

  TEST_CASE("parallel and serial scans are identical") {
    const auto m = fixtures::db().medium(Crystal::CTA);
    for (auto cond : {ScanCondition::GVM1, ScanCondition::GVM2_idler, ScanCondition::PhaseMatch}) {
      const auto a = scan_over_temperature(m, cond, 20.0, 120.0, 41, Execution::Serial);
      const auto b = scan_over_temperature(m, cond, 20.0, 120.0, 41, Execution::Parallel);
      CHECK(a.rows == b.rows);
      CHECK(a.to_csv() == b.to_csv());
    }
  }

  TEST_CASE("scan table layout") {
    const auto m = fixtures::db().medium(Crystal::RTP);
    const auto t = scan_over_temperature(m, ScanCondition::PhaseMatch, 20.0, 30.0, 3);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].temperature_c == 20.0);
    CHECK(t.rows[2].temperature_c == 30.0);
    CHECK(t.rows[0].values_nm[0] == t.rows[0].values_nm[1]);
    REQUIRE(t.pump_nm);
    CHECK(*t.pump_nm == doctest::Approx(gvm1_wavelength(m, 20.0).lambda_nm / 2));
    const auto csv = t.to_csv();
    CHECK(csv.rfind("temperature_c,lambda_signal_nm,lambda_idler_nm\n20.000,", 0) == 0);
    CHECK_THROWS_AS(scan_over_temperature(m, ScanCondition::GVM1, 20.0, 30.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(scan_over_temperature(m, ScanCondition::GVM1, 30.0, 20.0, 5), std::invalid_argument);
  }

  TEST_CASE("scan failures carry the temperature") {
    const auto m = fixtures::db().medium(Crystal::KTP);
    try {
      scan_over_temperature(m, ScanCondition::GVM2_signal, 20.0, 40.0, 3);
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(std::string(e.what()).find("20.000 C") != std::string::npos);
    }
  }
}
