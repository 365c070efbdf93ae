#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tegen/electro.hpp"
#include "tegen/reference.hpp"

using namespace tegen;
using namespace tegen::literals;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DeviceModel reference_model(std::size_t idx, AnnealState state, double ds = 42.8_uV_per_K) {
  const auto& d = reference::kDevices[idx];
  const MaterialSet mats;
  return {reference::geometry(d), reference::published_layout(d), resistivity(mats.bismuth, state),
          resistivity(mats.antimony, state), std::nullopt, ds};
}

// Values below were evaluated by hand from the closed forms before the
// implementation existed and are frozen here.
constexpr double kRg20Bulk = 17852.272727272728;
constexpr double kRg40Laser = 61306.81818181817;
constexpr double kRg40Bulk = 5926.954545454545;

}  // namespace

TEST_CASE("global resistance", "[electro]") {
  CHECK_THAT(global_resistance(reference_model(0, AnnealState::bulk_reference)), WithinRel(kRg20Bulk, 1e-12));
  CHECK_THAT(global_resistance(reference_model(2, AnnealState::laser_annealed)), WithinRel(kRg40Laser, 1e-12));
  CHECK_THAT(global_resistance(reference_model(2, AnnealState::bulk_reference)), WithinRel(kRg40Bulk, 1e-12));
  DeviceModel unit{DeviceGeometry{1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, {2, 1}, 1.0, 1.0, std::nullopt, 1.0};
  CHECK(global_resistance(unit) == 2.0);
}

TEST_CASE("metal term", "[electro]") {
  auto m = reference_model(0, AnnealState::laser_annealed);
  const double without = global_resistance(m);
  m.metal = MetalTerm{2.4e-6, 40.0_um, 20.0_um * 0.5_um};
  const double with = global_resistance(m);
  CHECK(with > without);
  const double per_pair_metal = 2.0 * 2.4e-6 * 40.0_um / (20.0_um * 0.5_um);
  CHECK_THAT(with - without, WithinRel(125 * per_pair_metal, 1e-9));
  m.metal = MetalTerm{0.0, 40.0_um, 1e-6};
  CHECK(global_resistance(m) == without);
  m.metal = MetalTerm{1e-6, 1e-4, 0.0};
  CHECK_THROWS_AS(global_resistance(m), DomainError);
}

TEST_CASE("model invariants are enforced", "[electro]") {
  auto m = reference_model(0, AnnealState::laser_annealed);
  m.rho_bi = 0.0;
  CHECK_THROWS_AS(global_resistance(m), DomainError);
  m = reference_model(0, AnnealState::laser_annealed);
  m.delta_seebeck = -1e-6;
  CHECK_THROWS_AS(operating_point(m, 10.0), DomainError);
  m = reference_model(0, AnnealState::laser_annealed);
  m.layout = {0, 0};
  CHECK_THROWS_AS(global_resistance(m), GeometryError);
}

TEST_CASE("Seebeck voltage", "[electro]") {
  CHECK_THAT(seebeck_voltage(125, 42.8_uV_per_K, 100.0), WithinRel(0.535, 1e-12));
  CHECK(seebeck_voltage(7, 1.0, 0.0) == 0.0);
  CHECK_THAT(seebeck_voltage(83, 42.8_uV_per_K, 100.0), WithinRel(0.35524, 1e-12));
  CHECK_THROWS_AS(seebeck_voltage(0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(seebeck_voltage(1, 1.0, -1.0), DomainError);
}

TEST_CASE("short-circuit and useful power", "[electro]") {
  CHECK(short_circuit_power(1.0, 1.0) == 1.0);
  CHECK_THAT(short_circuit_power(0.535, 82.0_kohm), WithinRel(3.490548780487805e-06, 1e-12));
  CHECK_THAT(short_circuit_power(0.35524, 31.0_kohm), WithinRel(4.070821212903226e-06, 1e-12));
  CHECK_THROWS_AS(short_circuit_power(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(short_circuit_power(1.0, -5.0), DomainError);
  CHECK(useful_power(4.0) == 1.0);
  CHECK(useful_power(0.0) == 0.0);
  CHECK_THAT(useful_power(4.070821212903226e-06), WithinRel(1.0177053032258066e-06, 1e-12));
  CHECK_THROWS_AS(useful_power(-1.0), DomainError);
}

TEST_CASE("operating points", "[electro]") {
  const auto p = operating_point(reference_model(2, AnnealState::bulk_reference), 100.0);
  CHECK_THAT(p.v_s, WithinRel(0.35524, 1e-12));
  CHECK_THAT(p.p_u, WithinRel(5.322946912794399e-06, 1e-9));
  // Rounded R_g = 5.90 kOhm gives 5.35 uW; the unrounded model sits within 1% of it.
  CHECK_THAT(p.p_u, WithinRel(5.35e-6, 0.01));

  const auto zero = operating_point(reference_model(1, AnnealState::laser_annealed), 0.0);
  CHECK(zero.v_s == 0.0);
  CHECK(zero.p_cc == 0.0);
  CHECK(zero.p_u == 0.0);

  const auto eff = operating_point(125, 42.8_uV_per_K, 82.0_kohm, 100.0);
  CHECK_THAT(eff.p_u, WithinRel(8.726371951219512e-07, 1e-12));
  CHECK(eff.p_u == eff.p_cc / 4.0);
  CHECK(eff.p_cc == eff.v_s * eff.v_s / eff.r_g);
}

TEST_CASE("power curve sampling", "[electro]") {
  const auto m = reference_model(0, AnnealState::laser_annealed, reference::calibrated_delta_seebeck());
  const auto curve = power_curve(m, 0.0, 100.0, 11);
  REQUIRE(curve.size() == 11);
  CHECK(curve.front().delta_t == 0.0);
  CHECK(curve.back().delta_t == 100.0);
  CHECK_THAT(curve.back().v_s, WithinRel(0.535, 1e-12));
  CHECK_THAT(curve[5].v_s, WithinRel(0.2675, 1e-12));
  CHECK_THAT(curve[5].p_u, WithinRel(curve.back().p_u / 4.0, 1e-12));
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK_THAT(curve[i].v_s, WithinRel(curve.back().v_s * curve[i].delta_t / 100.0, 1e-12));
  }
  CHECK_THROWS_AS(power_curve(m, 0.0, 100.0, 1), DomainError);
  CHECK_THROWS_AS(power_curve(m, 50.0, 50.0, 5), DomainError);
}

TEST_CASE("thickness calibration", "[electro][calibration]") {
  const auto& d20 = reference::kDevices[0];
  auto g = reference::geometry(d20);
  const LayoutCounts n{250, 125};
  // t = N (rho_Bi + rho_Sb) L / (w R_g), evaluated by hand.
  const double bulk_t = 125 * (117e-6 + 40.1e-6) * 1.0 / (20e-4 * 17800.0);
  const double laser_t = 125 * (800e-6 + 825e-6) * 1.0 / (20e-4 * 184700.0);
  CHECK_THAT(bulk_t / units::micrometer, WithinRel(5.5161516853932575, 1e-12));
  CHECK_THAT(laser_t / units::micrometer, WithinRel(5.498781808337844, 1e-12));

  const auto bulk = calibrate_thickness(17.8_kohm, g, n, 117.0_uohm_cm, 40.1_uohm_cm);
  const auto laser = calibrate_thickness(184.7_kohm, g, n, 800.0_uohm_cm, 825.0_uohm_cm);
  CHECK(bulk.parameter_name == "film_thickness");
  CHECK_THAT(bulk.value, WithinRel(bulk_t, 1e-12));
  CHECK_THAT(laser.value, WithinRel(laser_t, 1e-12));
  CHECK(std::abs(bulk.value - laser.value) / laser.value < 0.01);
  REQUIRE(bulk.residuals.size() == 1);
  CHECK(bulk.residuals[0].relative_error < 1e-12);

  const auto doubled = calibrate_thickness(2 * 184.7_kohm, g, n, 800.0_uohm_cm, 825.0_uohm_cm);
  CHECK_THAT(doubled.value, WithinRel(laser.value / 2, 1e-14));

  const MaterialSet mats;
  const auto targets = reference::resistance_targets(mats, AnnealState::laser_annealed);
  const auto checked = calibrate_thickness(184.7_kohm, g, n, 800.0_uohm_cm, 825.0_uohm_cm, targets);
  REQUIRE(checked.residuals.size() == 3);
  for (const auto& r : checked.residuals) CHECK(r.relative_error < 0.015);

  CHECK_THROWS_AS(calibrate_thickness(0.0, g, n, 1.0, 1.0), DomainError);
}

TEST_CASE("Seebeck difference calibration", "[electro][calibration]") {
  const auto r = calibrate_delta_seebeck(0.535, 125, 100.0);
  CHECK_THAT(r.value, WithinRel(42.8e-6, 1e-12));
  CHECK_THAT(seebeck_voltage(125, r.value, 100.0), WithinRel(0.535, 1e-14));
  CHECK(r.residuals.size() == 1);
  const auto zero = calibrate_delta_seebeck(0.0, 50, 20.0);
  CHECK(zero.value == 0.0);
  CHECK(zero.residuals[0].relative_error == 0.0);
  CHECK_THROWS_AS(calibrate_delta_seebeck(0.5, 125, 0.0), DomainError);
  CHECK_THROWS_AS(calibrate_delta_seebeck(0.5, 0, 10.0), DomainError);
}

TEST_CASE("anneal resistance drop", "[electro]") {
  CHECK_THAT(anneal_resistance_drop(184.7_kohm, 82.0_kohm), WithinAbs(0.556036816459123, 1e-12));
  CHECK_THAT(anneal_resistance_drop(61.3_kohm, 31.0_kohm), WithinAbs(0.49429037520391517, 1e-12));
  CHECK(anneal_resistance_drop(5.0, 5.0) == 0.0);
  CHECK_THROWS_AS(anneal_resistance_drop(0.0, 1.0), DomainError);
}

TEST_CASE("resistance scales linearly in N and rho, inversely in w and t", "[electro][property]") {
  for (int k = 0; k < 500; ++k) {
    DeviceModel m;
    m.geometry.line_width = oracle::uniform(5.0, 100.0) * units::micrometer;
    m.geometry.spacing = 20.0_um;
    m.geometry.film_thickness = oracle::uniform(0.5, 10.0) * units::micrometer;
    m.layout.junction_pairs = oracle::uniform_int(1, 500);
    m.layout.total_lines = 2 * m.layout.junction_pairs;
    m.rho_bi = oracle::uniform(50.0, 2000.0) * units::micro_ohm_cm;
    m.rho_sb = oracle::uniform(30.0, 2000.0) * units::micro_ohm_cm;
    m.delta_seebeck = 1e-5;
    const double r = global_resistance(m);
    const double s = oracle::uniform(0.5, 4.0);

    auto scaled = m;
    scaled.layout.junction_pairs *= 3;
    REQUIRE_THAT(global_resistance(scaled), WithinRel(3 * r, 1e-12));
    scaled = m;
    scaled.geometry.film_thickness *= s;
    REQUIRE_THAT(global_resistance(scaled), WithinRel(r / s, 1e-12));
    scaled = m;
    scaled.geometry.line_width *= s;
    REQUIRE_THAT(global_resistance(scaled), WithinRel(r / s, 1e-12));
    scaled = m;
    scaled.rho_bi *= s;
    scaled.rho_sb *= s;
    REQUIRE_THAT(global_resistance(scaled), WithinRel(r * s, 1e-12));
  }
}
