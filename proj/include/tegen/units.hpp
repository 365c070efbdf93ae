#pragma once

// Internal unit system: lengths in centimeters, resistivity in ohm-centimeters,
// resistance in ohms, voltage in volts, Seebeck coefficients in volts per
// kelvin, temperature differences in kelvin, power in watts.

namespace tegen::units {

inline constexpr double micrometer = 1e-4;      // cm
inline constexpr double millimeter = 1e-1;      // cm
inline constexpr double micro_ohm_cm = 1e-6;    // ohm*cm
inline constexpr double kilo_ohm = 1e3;         // ohm
inline constexpr double millivolt = 1e-3;       // V
inline constexpr double microvolt_per_kelvin = 1e-6;  // V/K
inline constexpr double microwatt = 1e-6;       // W

}  // namespace tegen::units

namespace tegen::literals {

constexpr double operator""_cm(long double v) { return static_cast<double>(v); }
constexpr double operator""_cm(unsigned long long v) { return static_cast<double>(v); }
constexpr double operator""_mm(long double v) { return static_cast<double>(v) * units::millimeter; }
constexpr double operator""_mm(unsigned long long v) { return static_cast<double>(v) * units::millimeter; }
constexpr double operator""_um(long double v) { return static_cast<double>(v) * units::micrometer; }
constexpr double operator""_um(unsigned long long v) { return static_cast<double>(v) * units::micrometer; }
constexpr double operator""_uohm_cm(long double v) { return static_cast<double>(v) * units::micro_ohm_cm; }
constexpr double operator""_uohm_cm(unsigned long long v) { return static_cast<double>(v) * units::micro_ohm_cm; }
constexpr double operator""_kohm(long double v) { return static_cast<double>(v) * units::kilo_ohm; }
constexpr double operator""_kohm(unsigned long long v) { return static_cast<double>(v) * units::kilo_ohm; }
constexpr double operator""_mV(long double v) { return static_cast<double>(v) * units::millivolt; }
constexpr double operator""_mV(unsigned long long v) { return static_cast<double>(v) * units::millivolt; }
constexpr double operator""_uV_per_K(long double v) { return static_cast<double>(v) * units::microvolt_per_kelvin; }
constexpr double operator""_uV_per_K(unsigned long long v) { return static_cast<double>(v) * units::microvolt_per_kelvin; }
constexpr double operator""_uW(long double v) { return static_cast<double>(v) * units::microwatt; }
constexpr double operator""_uW(unsigned long long v) { return static_cast<double>(v) * units::microwatt; }

}  // namespace tegen::literals
