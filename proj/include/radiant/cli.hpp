#pragma once

#include "radiant/geometry.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace radiant::cli {

enum class ExperimentKind {
    Rates,
    Angular,
    Bragg,
    Predict1D,
    Predict3D,
    Ensemble,
    Sweep,
    Validate,
};

enum class GeometryKind { Lattice, IonChain, Ensemble, File };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Rates;

    GeometryKind geometry = GeometryKind::Lattice;
    int dimensionality = 1;
    std::array<int, 3> counts = {1, 1, 1};
    double lambda_over_d0 = 5.0; // sets k_L d0 = 2 pi / (lambda/d0)
    int ions = 0;
    double avg_spacing_over_wavelength = 0.4;
    int atoms = 0;              // ensemble geometry
    double kl_cloud_size = 0.0; // k_L L
    std::string positions_path;

    Vec3 laser_dir = Vec3::UnitZ();
    double gamma_bar_hz = 0.0;
    double sample_length_m = 0.0;
    double omega_l_hz = 0.0;

    int n_theta = 0; // 0 = automatic
    int n_phi = 64;
    int radial_points = 2001;
    std::array<int, 3> mode_index = {0, 0, 0};
    int photons = 1;

    std::string sweep_parameter;
    std::vector<double> sweep_values;
    std::string sweep_observable;

    double fixture_abs_tol = 0.0;
    double fixture_rel_tol = 1e-12;

    std::uint64_t seed = 0;

    double kl_spacing() const { return 2.0 * M_PI / lambda_over_d0; }
};

// Strict "key = value" config with [section] headers; '#' comments.
// Unknown sections or keys throw ConfigError.
RunConfig parse_config(std::istream &in);
RunConfig parse_config_file(const std::string &path);

struct RunResult {
    std::vector<std::string> artifacts; // files written under out_dir
    std::string primary_artifact;       // the one compared against fixtures
};

// Executes the experiment, writing outputs atomically plus a manifest.
// Throws ConfigError / NumericalError; anything else is a bug.
RunResult run(const RunConfig &config, const std::string &out_dir);

struct FixtureMismatch {
    std::size_t row = 0;
    std::string column;
    double got = 0.0;
    double expected = 0.0;
};

struct FixtureReport {
    bool pass = true;
    std::vector<FixtureMismatch> mismatches; // first few offenders
    std::string schema_error;
};

// Per-column comparison of two CSV files; a value passes when it is
// within abs_tol or within rel_tol relative deviation.
FixtureReport compare_fixture(const std::string &output_path,
                              const std::string &fixture_path,
                              double abs_tol, double rel_tol);

} // namespace radiant::cli
