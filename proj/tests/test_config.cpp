#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "tegen/config.hpp"

using namespace tegen;
using namespace tegen::literals;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

StudyConfig parse(const std::string& text) { return parse_config(kv::parse_string(text)); }

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("built-in reference study", "[config]") {
  const auto cfg = paper_devices_config();
  REQUIRE(cfg.devices.size() == 3);
  const double widths[] = {20.0_um, 30.0_um, 40.0_um};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& d = cfg.devices[i];
    CHECK_THAT(d.geometry.line_width, WithinRel(widths[i], 1e-12));
    CHECK_THAT(d.geometry.spacing, WithinRel(20.0_um, 1e-12));
    CHECK(d.geometry.chip_width == 1.0);
    CHECK(d.geometry.line_length == 1.0);
    CHECK(d.state == AnnealState::laser_annealed);
    CHECK(d.reference.has_value());
  }
  CHECK(cfg.devices[1].junction_pairs == 104);
  CHECK_THAT(*cfg.devices[2].measured_r_g, WithinRel(31.0_kohm, 1e-12));
  REQUIRE(cfg.sweep);
  CHECK(cfg.sweep->width.values().size() == 3);
  CHECK(cfg.objective == Objective::max_p_u);
  CHECK(cfg.calibrate.voltage);
}

TEST_CASE("unit suffixes are mandatory", "[config]") {
  CHECK_THAT(error_of("[device.a]\nline_width = 20\nspacing_um = 20\n"), ContainsSubstring("unit suffix"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\nmeasured_r_g = 5\n"),
             ContainsSubstring("unit suffix"));
  CHECK_THAT(error_of("[device.a]\nline_width_inch = 1\nspacing_um = 20\n"), ContainsSubstring("unknown key"));
}

TEST_CASE("config errors", "[config]") {
  CHECK_THAT(error_of(""), ContainsSubstring("no device blocks"));
  CHECK_THAT(error_of("[simulate]\nsteps = 3\n"), ContainsSubstring("no device blocks"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\ncolour = \"red\"\n"),
             ContainsSubstring("line 4"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\n"), ContainsSubstring("spacing"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = -20\nspacing_um = 20\n"), ContainsSubstring("> 0"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\nstate = \"molten\"\n"),
             ContainsSubstring("anneal state"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\ndelta_s = \"huge\"\n"),
             ContainsSubstring("delta_s"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\njunction_pairs = 2.5\n"),
             ContainsSubstring("integer"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\nline_length_cm = 2\n"),
             ContainsSubstring("chip_height"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\n[plots]\n"), ContainsSubstring("unknown section"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\n[study]\nmaterials = \"/nonexistent/m.toml\"\n"),
             ContainsSubstring("does not exist"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\n[calibrate]\nvoltage_device = \"b\"\n"),
             ContainsSubstring("unknown device"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\n[simulate]\nsteps = 1\n"),
             ContainsSubstring("steps"));
  CHECK_THAT(error_of("[device.a]\nline_width_um = 20\nspacing_um = 20\n[sweep]\nwidth_min_um = 20\n"),
             ContainsSubstring("width_max"));
}

TEST_CASE("infeasible geometry is a layout-time error, not a parse error", "[config]") {
  const auto cfg = parse("[device.coarse]\nline_width_mm = 3\nspacing_mm = 3\n");
  CHECK_THROWS_AS(compute_layout(cfg.devices[0].geometry), GeometryError);
}

TEST_CASE("unit conversions and defaults", "[config]") {
  const auto cfg = parse(R"(
[device.a]
chip_width_mm = 5
chip_height_cm = 0.8
line_width_um = 25
spacing_um = 15
film_thickness_um = 2
measured_r_g_ohm = 1500

[sweep]
width_min_um = 10
width_max_um = 50
width_step_um = 5
spacing_min_um = 10
spacing_max_um = 10
spacing_step_um = 1
delta_t_k = 40
max_r_g_kohm = 300
min_junctions = 10
delta_s = "bulk"

[calibrate]
voltage_v = 0.25
voltage_delta_t_k = 50
)");
  const auto& g = cfg.devices[0].geometry;
  CHECK_THAT(g.chip_width, WithinRel(0.5, 1e-12));
  CHECK_THAT(g.line_length, WithinRel(0.8, 1e-12));
  CHECK_THAT(g.film_thickness, WithinRel(2e-4, 1e-12));
  CHECK(*cfg.devices[0].measured_r_g == 1500.0);
  CHECK(cfg.sweep->delta_s_source == DeltaSSource::bulk);
  CHECK_THAT(*cfg.sweep->constraints.max_r_g, WithinRel(300e3, 1e-12));
  CHECK(*cfg.sweep->constraints.min_junctions == 10);
  CHECK(cfg.sweep->width.values().size() == 9);
  CHECK(*cfg.calibrate.voltage == 0.25);
}

TEST_CASE("materials path resolves relative to the config file", "[config][io]") {
  const auto dir = std::filesystem::temp_directory_path() / "tegen_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "mats.toml") << "[material.bismuth]\nseebeck_uv_per_k = -60\nmelt_limit_c = 271\n"
                                        "resistivity_uohm_cm.laser_annealed = 700\n";
    std::ofstream(dir / "study.toml") << "[study]\nmaterials = \"mats.toml\"\n[device.a]\nline_width_um = 20\nspacing_um = 20\n";
  }
  const auto cfg = parse_config_file((dir / "study.toml").string());
  CHECK_THAT(cfg.materials.bismuth.seebeck(), WithinRel(-60e-6, 1e-12));
  CHECK_THAT(resistivity(cfg.materials.bismuth, AnnealState::laser_annealed), WithinRel(700e-6, 1e-12));
  std::filesystem::remove_all(dir);
}
