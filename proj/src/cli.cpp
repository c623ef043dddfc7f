#include "radiant/cli.hpp"

#include "radiant/coupling.hpp"
#include "radiant/emission.hpp"
#include "radiant/ensemble.hpp"
#include "radiant/log.hpp"
#include "radiant/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace radiant::cli {

namespace {

std::string trim(const std::string &s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string &key, const std::string &v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception &) {
        throw ConfigError("bad number for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("trailing junk in '" + key + "': " + v);
    return x;
}

int to_int(const std::string &key, const std::string &v) {
    const double x = to_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9)
        throw ConfigError("expected an integer for '" + key + "': " + v);
    return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string &key, const std::string &v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("junk");
        return x;
    } catch (const std::exception &) {
        throw ConfigError("bad unsigned integer for '" + key + "': " + v);
    }
}

std::vector<double> to_list(const std::string &key, const std::string &v) {
    std::istringstream ss(v);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(to_double(key, tok));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

ExperimentKind parse_experiment(const std::string &v) {
    if (v == "rates") return ExperimentKind::Rates;
    if (v == "angular") return ExperimentKind::Angular;
    if (v == "bragg") return ExperimentKind::Bragg;
    if (v == "predict1d") return ExperimentKind::Predict1D;
    if (v == "predict3d") return ExperimentKind::Predict3D;
    if (v == "ensemble") return ExperimentKind::Ensemble;
    if (v == "sweep") return ExperimentKind::Sweep;
    if (v == "validate") return ExperimentKind::Validate;
    throw ConfigError("unknown experiment '" + v + "'");
}

GeometryKind parse_geometry(const std::string &v) {
    if (v == "lattice") return GeometryKind::Lattice;
    if (v == "ion-chain") return GeometryKind::IonChain;
    if (v == "ensemble") return GeometryKind::Ensemble;
    if (v == "file") return GeometryKind::File;
    throw ConfigError("unknown geometry kind '" + v + "'");
}

const char *experiment_name(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Rates: return "rates";
    case ExperimentKind::Angular: return "angular";
    case ExperimentKind::Bragg: return "bragg";
    case ExperimentKind::Predict1D: return "predict1d";
    case ExperimentKind::Predict3D: return "predict3d";
    case ExperimentKind::Ensemble: return "ensemble";
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Validate: return "validate";
    }
    return "?";
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void apply_key(RunConfig &c, const std::string &section,
               const std::string &key, const std::string &value) {
    const std::string full = section.empty() ? key : section + "." + key;
    if (section.empty()) {
        if (key == "experiment") { c.experiment = parse_experiment(value); return; }
        if (key == "seed") { c.seed = to_u64(full, value); return; }
    } else if (section == "geometry") {
        if (key == "kind") { c.geometry = parse_geometry(value); return; }
        if (key == "dimensionality") { c.dimensionality = to_int(full, value); return; }
        if (key == "nx") { c.counts[0] = to_int(full, value); return; }
        if (key == "ny") { c.counts[1] = to_int(full, value); return; }
        if (key == "nz") { c.counts[2] = to_int(full, value); return; }
        if (key == "lambda_over_d0") { c.lambda_over_d0 = to_double(full, value); return; }
        if (key == "ions") { c.ions = to_int(full, value); return; }
        if (key == "avg_spacing_over_wavelength") {
            c.avg_spacing_over_wavelength = to_double(full, value); return;
        }
        if (key == "atoms") { c.atoms = to_int(full, value); return; }
        if (key == "kl_cloud_size") { c.kl_cloud_size = to_double(full, value); return; }
        if (key == "path") { c.positions_path = value; return; }
    } else if (section == "physics") {
        if (key == "laser_dir") {
            const auto v = to_list(full, value);
            if (v.size() != 3) throw ConfigError("laser_dir needs 3 numbers");
            c.laser_dir = Vec3(v[0], v[1], v[2]);
            const double n = c.laser_dir.norm();
            if (!(n > 0.0)) throw ConfigError("laser_dir must be nonzero");
            c.laser_dir /= n;
            return;
        }
        if (key == "gamma_bar_hz") { c.gamma_bar_hz = to_double(full, value); return; }
        if (key == "sample_length_m") { c.sample_length_m = to_double(full, value); return; }
        if (key == "omega_l_hz") { c.omega_l_hz = to_double(full, value); return; }
    } else if (section == "grid") {
        if (key == "n_theta") { c.n_theta = to_int(full, value); return; }
        if (key == "n_phi") { c.n_phi = to_int(full, value); return; }
        if (key == "radial_points") { c.radial_points = to_int(full, value); return; }
    } else if (section == "mode") {
        if (key == "n") {
            const auto v = to_list(full, value);
            if (v.size() != 3) throw ConfigError("mode.n needs 3 integers");
            for (int a = 0; a < 3; ++a) {
                if (v[static_cast<std::size_t>(a)] !=
                    std::floor(v[static_cast<std::size_t>(a)]))
                    throw ConfigError("mode.n needs integers");
                c.mode_index[static_cast<std::size_t>(a)] =
                    static_cast<int>(v[static_cast<std::size_t>(a)]);
            }
            return;
        }
        if (key == "photons") { c.photons = to_int(full, value); return; }
    } else if (section == "sweep") {
        if (key == "parameter") { c.sweep_parameter = value; return; }
        if (key == "values") { c.sweep_values = to_list(full, value); return; }
        if (key == "observable") { c.sweep_observable = value; return; }
    } else if (section == "fixture") {
        if (key == "abs_tol") { c.fixture_abs_tol = to_double(full, value); return; }
        if (key == "rel_tol") { c.fixture_rel_tol = to_double(full, value); return; }
    } else {
        throw ConfigError("unknown section [" + section + "]");
    }
    throw ConfigError("unknown key '" + full + "'");
}

} // namespace

RunConfig parse_config(std::istream &in) {
    RunConfig c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": empty key or value");
        apply_key(c, section, key, value);
    }
    return c;
}

RunConfig parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

namespace {

LatticeSpec lattice_spec(const RunConfig &c) {
    LatticeSpec spec;
    spec.dimensionality = c.dimensionality;
    spec.counts = c.counts;
    if (!(c.lambda_over_d0 > 0.0))
        throw ConfigError("lambda_over_d0 must be > 0");
    spec.spacing = c.kl_spacing();
    spec.validate();
    return spec;
}

AtomArray build_atoms(const RunConfig &c) {
    switch (c.geometry) {
    case GeometryKind::Lattice:
        return build_lattice(lattice_spec(c));
    case GeometryKind::IonChain: {
        if (c.ions < 2) throw ConfigError("geometry.ions must be >= 2");
        const double kd = 2.0 * M_PI * c.avg_spacing_over_wavelength;
        return solve_ion_chain_equilibrium(c.ions, kd);
    }
    case GeometryKind::Ensemble: {
        if (c.atoms < 1) throw ConfigError("geometry.atoms must be >= 1");
        if (!(c.kl_cloud_size > 0.0))
            throw ConfigError("geometry.kl_cloud_size must be > 0");
        EnsembleSpec s;
        s.atom_count = c.atoms;
        s.cloud_size = c.kl_cloud_size;
        s.seed = c.seed;
        return sample_ensemble_positions(s);
    }
    case GeometryKind::File:
        if (c.positions_path.empty())
            throw ConfigError("geometry.path is required for kind = file");
        return load_positions_file(c.positions_path);
    }
    throw ConfigError("unreachable geometry kind");
}

// FNV-1a, stable across platforms; used only for manifest provenance.
std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string serialize_config(const RunConfig &c) {
    std::ostringstream s;
    s << experiment_name(c.experiment) << '|' << static_cast<int>(c.geometry)
      << '|' << c.dimensionality << '|' << c.counts[0] << ',' << c.counts[1]
      << ',' << c.counts[2] << '|' << fmt(c.lambda_over_d0) << '|' << c.ions
      << '|' << fmt(c.avg_spacing_over_wavelength) << '|' << c.atoms << '|'
      << fmt(c.kl_cloud_size) << '|' << c.positions_path << '|'
      << fmt(c.laser_dir.x()) << ',' << fmt(c.laser_dir.y()) << ','
      << fmt(c.laser_dir.z()) << '|' << fmt(c.gamma_bar_hz) << '|'
      << fmt(c.sample_length_m) << '|' << fmt(c.omega_l_hz) << '|'
      << c.n_theta << ',' << c.n_phi << ',' << c.radial_points << '|'
      << c.mode_index[0] << ',' << c.mode_index[1] << ',' << c.mode_index[2]
      << '|' << c.photons << '|' << c.sweep_parameter << '|';
    for (double v : c.sweep_values) s << fmt(v) << ',';
    s << '|' << c.sweep_observable << '|' << c.seed;
    return s.str();
}

void atomic_write(const std::filesystem::path &path,
                  const std::string &content) {
    const std::filesystem::path tmp =
        path.parent_path() /
        (path.filename().string() + ".tmp-" +
         std::to_string(static_cast<unsigned long>(fnv1a(path.string()) & 0xffff)));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

struct Outputs {
    std::filesystem::path dir;
    RunResult result;

    void emit(const std::string &name, const std::string &content,
              bool primary = false) {
        atomic_write(dir / name, content);
        result.artifacts.push_back(name);
        if (primary) result.primary_artifact = (dir / name).string();
    }
};

AngularGrid make_grid(const RunConfig &c, int default_theta = 256) {
    const int nt = c.n_theta > 0 ? c.n_theta : default_theta;
    const int np = c.n_phi > 0 ? c.n_phi : 64;
    return AngularGrid::product(nt, np);
}

// Selects the eigenmode whose plane-wave label matches mode.n (lattice),
// otherwise the superradiant front of the sorted spectrum.
int select_mode(const RunConfig &c, const ModeDecomposition &d,
                const AtomArray &atoms) {
    if (c.geometry == GeometryKind::Lattice) {
        const auto labels = label_modes(d, wavevector_grid(lattice_spec(c)), atoms);
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c.mode_index) return static_cast<int>(i);
        throw ConfigError("mode.n outside the wavevector grid");
    }
    return 0;
}

void run_rates(const RunConfig &c, Outputs &out) {
    const AtomArray atoms = build_atoms(c);
    const CouplingMatrix j = coupling_fixed(atoms, c.laser_dir);
    const ModeDecomposition d = diagonalize(j);
    std::vector<std::array<int, 3>> labels;
    if (c.geometry == GeometryKind::Lattice)
        labels = label_modes(d, wavevector_grid(lattice_spec(c)), atoms);
    std::ostringstream csv;
    dump_mode_table_csv(csv, d, labels);
    const SumRuleReport sum = sum_rule_report(d);
    csv << "# rate_sum," << fmt(sum.rate_sum) << "\n";
    csv << "# shift_sum," << fmt(sum.shift_sum) << "\n";
    out.emit("modes.csv", csv.str(), true);

    std::ostringstream jc;
    dump_coupling_csv(jc, j);
    out.emit("coupling.csv", jc.str());
    if (sum.rate_residual > 1e-8)
        throw NumericalError("rate sum rule violated: residual " +
                             fmt(sum.rate_residual));
}

void run_angular(const RunConfig &c, Outputs &out) {
    const AtomArray atoms = build_atoms(c);
    const ModeDecomposition d = diagonalize(coupling_fixed(atoms, c.laser_dir));
    const int n = select_mode(c, d, atoms);
    const SpinWave wave = spinwave_state(d, n);
    const AngularDistribution dist = angular_distribution_exact(
        d, atoms, c.laser_dir, wave.coefficients, make_grid(c));
    std::ostringstream csv;
    dump_angular_csv(csv, dist);
    csv << "# integral," << fmt(dist.integral()) << "\n";
    out.emit("angular.csv", csv.str(), true);
}

void run_bragg(const RunConfig &c, Outputs &out) {
    if (c.geometry != GeometryKind::Lattice)
        throw ConfigError("bragg needs geometry.kind = lattice");
    const auto peaks = bragg_decompose(lattice_spec(c), c.laser_dir, c.mode_index);
    std::ostringstream csv;
    dump_bragg_csv(csv, peaks);
    out.emit("bragg.csv", csv.str(), true);
}

void run_predict1d(const RunConfig &c, Outputs &out) {
    if (c.geometry != GeometryKind::Lattice || c.dimensionality != 1)
        throw ConfigError("predict1d needs a 1D lattice");
    const LatticeSpec spec = lattice_spec(c);
    const WavevectorGrid grid = wavevector_grid(spec);
    std::ostringstream csv;
    csv << "n,rate,superradiant,beam_width,forward_probability\n";
    for (const auto &idx : grid.indices) {
        const PredictedRates p = predict_1d(spec, idx[2]);
        csv << idx[2] << ',' << fmt(p.rate) << ',' << (p.superradiant ? 1 : 0)
            << ',' << fmt(p.beam_width) << ',' << fmt(p.forward_probability)
            << "\n";
    }
    out.emit("predict1d.csv", csv.str(), true);
}

void run_predict3d(const RunConfig &c, Outputs &out) {
    if (c.geometry != GeometryKind::Lattice || c.dimensionality != 3)
        throw ConfigError("predict3d needs a 3D lattice");
    const PredictedRates p = predict_3d(lattice_spec(c), c.laser_dir, c.mode_index);
    std::ostringstream csv;
    csv << "m1,m2,m3,peak_exists,ux,uy,uz,rate,enhancement,escape,beam_width\n";
    csv << p.m_c[0] << ',' << p.m_c[1] << ',' << p.m_c[2] << ','
        << (p.peak_exists ? 1 : 0) << ',' << fmt(p.peak_direction.x()) << ','
        << fmt(p.peak_direction.y()) << ',' << fmt(p.peak_direction.z()) << ','
        << fmt(p.rate) << ',' << fmt(p.enhancement) << ','
        << fmt(p.escape_probability) << ',' << fmt(p.beam_width) << "\n";
    out.emit("predict3d.csv", csv.str(), true);
}

void run_ensemble(const RunConfig &c, Outputs &out) {
    if (c.atoms < 2) throw ConfigError("ensemble needs geometry.atoms >= 2");
    if (!(c.kl_cloud_size > 0.0))
        throw ConfigError("ensemble needs geometry.kl_cloud_size > 0");
    const MixedPhotonState state =
        mixed_photon_state(c.atoms, c.kl_cloud_size, c.radial_points);
    const PurityReport pur = purity(state, c.n_theta, c.n_phi);
    const MultiphotonReport multi =
        multiphoton_report(c.photons, state.chi, c.atoms);

    std::ostringstream csv;
    csv << "quantity,value\n";
    csv << "chi," << fmt(state.chi) << "\n";
    csv << "epsilon," << fmt(state.epsilon) << "\n";
    csv << "j0," << fmt(state.j0) << "\n";
    csv << "purity_formula," << fmt(pur.formula) << "\n";
    csv << "purity_numeric," << fmt(pur.numeric) << "\n";
    csv << "incoherent_trace," << fmt(pur.incoherent_trace) << "\n";
    csv << "cross_term," << fmt(pur.cross_term) << "\n";
    csv << "pure_weight," << fmt(multi.pure_weight) << "\n";
    csv << "purity_bound," << fmt(multi.purity_bound) << "\n";
    out.emit("ensemble.csv", csv.str(), true);

    std::ostringstream rep;
    rep << "N = " << c.atoms << "\n";
    rep << "kl_cloud_size = " << fmt(c.kl_cloud_size) << "\n";
    rep << "chi_en = " << fmt(state.chi) << "\n";
    rep << "epsilon = " << fmt(state.epsilon) << "\n";
    rep << "seed = " << c.seed << "\n";
    rep << "purity_formula = " << fmt(pur.formula) << "\n";
    rep << "purity_numeric = " << fmt(pur.numeric) << "\n";
    out.emit("report.txt", rep.str());

    const EnsembleAngular ang =
        ensemble_angular(state, make_grid(c), c.laser_dir);
    std::ostringstream acsv;
    acsv << "theta,phi,weight,coherent,incoherent\n";
    for (std::size_t i = 0; i < ang.coherent.grid.size(); ++i)
        acsv << fmt(ang.coherent.grid.node_theta(i)) << ','
             << fmt(ang.coherent.grid.node_phi(i)) << ','
             << fmt(ang.coherent.grid.node_weight(i)) << ','
             << fmt(ang.coherent.values[i]) << ','
             << fmt(ang.incoherent.values[i]) << "\n";
    acsv << "# escape," << fmt(ang.escape) << "\n";
    out.emit("ensemble_angular.csv", acsv.str());
    if (pur.grid_warning)
        log_warn("purity quadrature not converged at the requested grid");
}

void run_validate(const RunConfig &c, Outputs &out) {
    if (!(c.gamma_bar_hz > 0.0))
        throw ConfigError("validate needs physics.gamma_bar_hz > 0");
    if (!(c.sample_length_m > 0.0))
        throw ConfigError("validate needs physics.sample_length_m > 0");
    const AtomArray atoms = build_atoms(c);
    const ModeDecomposition d = diagonalize(coupling_fixed(atoms, c.laser_dir));
    const ValidityReport v =
        propagation_validity(d, c.gamma_bar_hz, c.sample_length_m, c.omega_l_hz);
    std::ostringstream rep;
    rep << "flag = " << (v.valid ? "valid" : "invalid") << "\n";
    rep << "max_ratio = " << fmt(v.max_ratio) << "\n";
    rep << "margin = " << fmt(v.margin) << "\n";
    rep << "shift_ok = " << (v.shift_ok ? 1 : 0) << "\n";
    out.emit("validity.txt", rep.str(), true);
}

double evaluate_observable(const RunConfig &c) {
    const std::string &name = c.sweep_observable;
    if (name == "rate" || name == "forward_probability" ||
        name == "beam_width" || name == "escape_probability") {
        PredictedRates p;
        if (c.dimensionality == 1)
            p = predict_1d(lattice_spec(c), c.mode_index[2]);
        else
            p = predict_3d(lattice_spec(c), c.laser_dir, c.mode_index);
        if (name == "rate") return p.rate;
        if (name == "forward_probability") return p.forward_probability;
        if (name == "escape_probability") return p.escape_probability;
        return p.beam_width;
    }
    if (name == "epsilon" || name == "chi" || name == "purity_formula" ||
        name == "purity_numeric") {
        const MixedPhotonState s =
            mixed_photon_state(c.atoms, c.kl_cloud_size, c.radial_points);
        if (name == "epsilon") return s.epsilon;
        if (name == "chi") return s.chi;
        const PurityReport p = purity(s, c.n_theta, c.n_phi);
        return name == "purity_formula" ? p.formula : p.numeric;
    }
    if (name == "rate_sum") {
        const ModeDecomposition d =
            diagonalize(coupling_fixed(build_atoms(c), c.laser_dir));
        return sum_rule_report(d).rate_sum;
    }
    throw ConfigError("unknown sweep.observable '" + name + "'");
}

void set_parameter(RunConfig &c, const std::string &name, double value) {
    if (name == "lambda_over_d0") {
        c.lambda_over_d0 = value;
    } else if (name == "kl_cloud_size") {
        c.kl_cloud_size = value;
    } else if (name == "atoms") {
        if (value != std::floor(value))
            throw ConfigError("sweep over 'atoms' needs integer values");
        c.atoms = static_cast<int>(value);
    } else if (name == "nz") {
        if (value != std::floor(value))
            throw ConfigError("sweep over 'nz' needs integer values");
        c.counts[2] = static_cast<int>(value);
    } else if (name == "mode_n") {
        if (value != std::floor(value))
            throw ConfigError("sweep over 'mode_n' needs integer values");
        c.mode_index[2] = static_cast<int>(value);
    } else {
        throw ConfigError("unknown sweep.parameter '" + name + "'");
    }
}

void run_sweep(const RunConfig &c, Outputs &out) {
    if (c.sweep_parameter.empty() || c.sweep_values.empty() ||
        c.sweep_observable.empty())
        throw ConfigError("sweep needs parameter, values and observable");
    std::ostringstream csv;
    csv << c.sweep_parameter << ',' << c.sweep_observable << ",status\n";
    for (double v : c.sweep_values) {
        RunConfig point = c;
        set_parameter(point, c.sweep_parameter, v);
        try {
            const double result = evaluate_observable(point);
            csv << fmt(v) << ',' << fmt(result) << ",ok\n";
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &e) {
            std::string why = e.what();
            std::replace(why.begin(), why.end(), ',', ';');
            std::replace(why.begin(), why.end(), '\n', ' ');
            csv << fmt(v) << ",nan," << why << "\n";
        }
    }
    out.emit("sweep.csv", csv.str(), true);
}

} // namespace

RunResult run(const RunConfig &config, const std::string &out_dir) {
    std::filesystem::create_directories(out_dir);
    Outputs out;
    out.dir = out_dir;
    log_info(std::string("running experiment '") +
             experiment_name(config.experiment) + "'");

    switch (config.experiment) {
    case ExperimentKind::Rates: run_rates(config, out); break;
    case ExperimentKind::Angular: run_angular(config, out); break;
    case ExperimentKind::Bragg: run_bragg(config, out); break;
    case ExperimentKind::Predict1D: run_predict1d(config, out); break;
    case ExperimentKind::Predict3D: run_predict3d(config, out); break;
    case ExperimentKind::Ensemble: run_ensemble(config, out); break;
    case ExperimentKind::Validate: run_validate(config, out); break;
    case ExperimentKind::Sweep: run_sweep(config, out); break;
    }

    std::ostringstream manifest;
    manifest << "experiment = " << experiment_name(config.experiment) << "\n";
    manifest << "seed = " << config.seed << "\n";
    manifest << "config_hash = " << fnv1a(serialize_config(config)) << "\n";
    for (const auto &a : out.result.artifacts)
        manifest << "artifact = " << a << "\n";
    atomic_write(std::filesystem::path(out_dir) / "manifest.txt",
                 manifest.str());
    out.result.artifacts.push_back("manifest.txt");
    return out.result;
}

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!have_header) {
            t.header = fields;
            have_header = true;
        } else {
            t.rows.push_back(fields);
        }
    }
    return t;
}

bool parse_number(const std::string &s, double &x) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        x = std::stod(s, &pos);
    } catch (const std::exception &) {
        return false;
    }
    return pos == s.size();
}

} // namespace

FixtureReport compare_fixture(const std::string &output_path,
                              const std::string &fixture_path,
                              double abs_tol, double rel_tol) {
    FixtureReport report;
    CsvTable got, want;
    try {
        got = read_csv(output_path);
        want = read_csv(fixture_path);
    } catch (const std::exception &e) {
        report.pass = false;
        report.schema_error = e.what();
        return report;
    }
    if (got.header != want.header) {
        report.pass = false;
        report.schema_error = "column headers differ";
        return report;
    }
    if (got.rows.size() != want.rows.size()) {
        report.pass = false;
        report.schema_error =
            "row count differs: " + std::to_string(got.rows.size()) + " vs " +
            std::to_string(want.rows.size());
        return report;
    }
    for (std::size_t r = 0; r < got.rows.size(); ++r) {
        if (got.rows[r].size() != want.rows[r].size()) {
            report.pass = false;
            report.schema_error = "field count differs at row " + std::to_string(r);
            return report;
        }
        for (std::size_t cidx = 0; cidx < got.rows[r].size(); ++cidx) {
            double a = 0.0, b = 0.0;
            const bool na = parse_number(got.rows[r][cidx], a);
            const bool nb = parse_number(want.rows[r][cidx], b);
            bool ok;
            if (na && nb) {
                const double diff = std::abs(a - b);
                ok = diff <= abs_tol ||
                     diff <= rel_tol * std::max(std::abs(a), std::abs(b));
            } else {
                ok = got.rows[r][cidx] == want.rows[r][cidx];
            }
            if (!ok) {
                report.pass = false;
                if (report.mismatches.size() < 10)
                    report.mismatches.push_back(
                        {r, cidx < got.header.size() ? got.header[cidx] : "",
                         a, b});
            }
        }
    }
    return report;
}

} // namespace radiant::cli
