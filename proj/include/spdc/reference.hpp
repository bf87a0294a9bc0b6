#pragma once

#include <array>
#include <string_view>

#include "spdc/dispersion.hpp"

// Literature comparison values for the five crystals at 20 C and the
// 20-120 C shifts, with the tolerances the table1 report applies. Shifts use
// Delta lambda = lambda(20 C) - lambda(120 C). GVM2 refers to the idler
// (z-polarized) branch. Phase-matching shifts are for the signal.
namespace spdc::reference {

struct CrystalRow {
  Crystal crystal;
  double gvm1_nm;
  double gvm1_shift_nm;
  double gvm2_nm;
  double gvm2_shift_nm;
  double pm_shift_nm;
};

inline constexpr std::array<CrystalRow, 5> kTable = {{
    {Crystal::KTP, 1584.6, 6.4, 1225.2, 7.3, 4.4},
    {Crystal::RTP, 1643.2, 1.2, 1282.0, -2.4, -0.4},
    {Crystal::KTA, 1680.9, 8.9, 1288.1, -2.1, -1.2},
    {Crystal::RTA, 1786.6, 25.6, 1379.7, 22.4, 29.1},
    {Crystal::CTA, 1972.5, 6.3, 1577.2, 5.4, 59.5},
}};

inline constexpr double kWavelengthTolNm = 1.0;
inline constexpr double kShiftTolNm = 0.5;
inline constexpr double kPmShiftTolNm = 1.0;

inline constexpr double kLowTempC = 20.0;
inline constexpr double kHighTempC = 120.0;

}  // namespace spdc::reference
