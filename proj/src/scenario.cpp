#include "dualab/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "dualab/classical.hpp"
#include "dualab/csv.hpp"
#include "dualab/errors.hpp"
#include "dualab/fringe.hpp"
#include "dualab/interferometry.hpp"
#include "dualab/quantum.hpp"

namespace dualab {

namespace {

using json_detail::number;
using json_detail::number_or;
using json_detail::reject_unknown;

constexpr std::array<std::pair<Mode, const char*>, 8> kModeNames{{
    {Mode::SabClassical, "sab-classical"},
    {Mode::AcClassical, "ac-classical"},
    {Mode::SabQuantum, "sab-quantum"},
    {Mode::AcQuantum, "ac-quantum"},
    {Mode::Interfere, "interfere"},
    {Mode::Sweep, "sweep"},
    {Mode::ChiScan, "chi-scan"},
    {Mode::Nondispersive, "nondispersive"},
}};

int integer(const Json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
    return v.get<int>();
}

Grid grid_from_json(const Json& v, const char* key) {
    if (v.is_string()) return Grid::parse(v.get<std::string>(), key);
    if (v.is_object()) {
        const std::string where = std::string(key) + ".";
        reject_unknown(v, {"start", "stop", "count"}, where);
        Grid g{number(v, "start", where), number(v, "stop", where), 0};
        if (!v.contains("count") || !v.at("count").is_number_integer())
            throw ConfigError("key '" + where + "count' must be an integer");
        g.count = v.at("count").get<int>();
        if (g.count < 1) throw ConfigError("key '" + where + "count' must be >= 1");
        return g;
    }
    throw ConfigError(std::string("key '") + key + "' must be \"start:stop:count\" or an object");
}

std::vector<double> number_list(const Json& v, const char* key) {
    if (!v.is_array()) throw ConfigError(std::string("key '") + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(std::string("key '") + key + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Json load_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open '" + file.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("'" + file.string() + "' is not valid JSON: " + e.what());
    }
}

Cell num(double v) { return v; }
Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

Vec2 segment_velocity(const Scenario& sc, const PlanarPath& path, std::size_t segment) {
    const Vec2 d = path.vertices[segment + 1] - path.vertices[segment];
    const double speed = sc.speeds.empty() ? 1.0 : sc.speeds[segment];
    return d.norm() > 0.0 ? Vec2(d.normalized() * speed) : Vec2(Vec2::Zero());
}

std::vector<double> sample_times(const Scenario& sc) {
    std::vector<double> ts;
    const int n = sc.time_samples;
    for (int k = 0; k < n; ++k) ts.push_back(n == 1 ? *sc.time : *sc.time * k / (n - 1));
    return ts;
}

RunOutput run_sab_classical(const Scenario& sc) {
    RunOutput out;
    out.columns = {"t", "gamma", "mu_x", "mu_y", "mu_z", "mu_x_ode", "mu_y_ode", "mu_z_ode"};
    const auto& units = sc.field.units;
    const auto& pulse = sc.field.pulse;
    const auto d0 = ClassicalDipole::from_angles(units.mu, sc.theta, sc.azimuth);
    const double dt = sc.dt.value_or(default_sab_step(pulse, units));

    ClassicalDipole ode = d0;
    double t_prev = 0.0;
    for (double t : sample_times(sc)) {
        ode = integrate_precession_sab(ode, pulse, t_prev, t, dt, units);
        t_prev = t;
        const auto closed = precess_sab_closed_form(d0, pulse, t, units);
        const Vec3& m = closed.dipole.moment();
        const Vec3& o = ode.moment();
        out.rows.push_back({num(t), num(closed.gamma), num(m.x()), num(m.y()), num(m.z()), num(o.x()),
                            num(o.y()), num(o.z())});
    }
    out.summary["dt"] = dt;
    return out;
}

RunOutput run_sab_quantum(const Scenario& sc) {
    RunOutput out;
    out.columns = {"t", "gamma", "n_x", "n_y", "n_z"};
    const Spinor s0 = spinor_from_angles(sc.theta, sc.azimuth);
    for (double t : sample_times(sc)) {
        const double gamma = sab_precession_angle(sc.field.pulse, t, sc.field.units);
        const Vec3 n = bloch_of(evolve_spin(s0, gamma)).n;
        out.rows.push_back({num(t), num(gamma), num(n.x()), num(n.y()), num(n.z())});
    }
    out.summary["phi_SAB"] = sc.field.units.mu / sc.field.units.hbar * sc.field.pulse.total_integral();
    return out;
}

// Integral of A along segment s, with singularities reported against that segment.
double segment_integral(const Scenario& sc, const PlanarPath& path, std::size_t s) {
    try {
        return line_integral_A(sc.field, PlanarPath{{path.vertices[s], path.vertices[s + 1]}, false}, sc.n_sub);
    } catch (const SingularPoint& e) {
        throw SingularPoint("path passes through a line charge", s);
    }
}

RunOutput run_ac_classical(const Scenario& sc) {
    RunOutput out;
    out.columns = {"index", "x", "y", "gamma", "mu_x", "mu_y", "mu_z", "mu_x_ode", "mu_y_ode", "mu_z_ode",
                   "force_z"};
    const auto& path = *sc.path;
    const auto& units = sc.field.units;
    const auto d0 = ClassicalDipole::from_angles(units.mu, sc.theta, sc.azimuth);
    const double gyro = units.gyromagnetic;

    double line = 0.0;
    ClassicalDipole ode = d0;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        if (i > 0) {
            const std::size_t s = i - 1;
            line += segment_integral(sc, path, s);
            KinematicPath seg{PlanarPath{{path.vertices[s], path.vertices[s + 1]}, false},
                              {sc.speeds.empty() ? 1.0 : sc.speeds[s]}};
            try {
                ode = integrate_precession_ac(ode, sc.field, seg, sc.ds);
            } catch (const SingularPoint&) {
                throw SingularPoint("trajectory hits a line charge", s);
            }
        }
        const double gamma = -gyro * line;
        const ClassicalDipole closed = d0.rotated_about_z(gamma);
        const std::size_t seg_index = i + 1 < path.vertices.size() ? i : i - 1;
        Vec3 force;
        try {
            force = ac_force(closed, sc.field, path.vertices[i], segment_velocity(sc, path, seg_index));
        } catch (const SingularPoint&) {
            throw SingularPoint("force probe hits a line charge", seg_index);
        }
        const Vec3& m = closed.moment();
        const Vec3& o = ode.moment();
        out.rows.push_back({static_cast<long long>(i), num(path.vertices[i].x()), num(path.vertices[i].y()),
                            num(gamma), num(m.x()), num(m.y()), num(m.z()), num(o.x()), num(o.y()),
                            num(o.z()), num(force.z())});
    }
    out.summary["gamma_total"] = -gyro * line;
    return out;
}

RunOutput run_ac_quantum(const Scenario& sc) {
    RunOutput out;
    out.columns = {"index", "x", "y", "gamma", "n_x", "n_y", "n_z"};
    const auto& path = *sc.path;
    const auto& units = sc.field.units;
    const Spinor s0 = spinor_from_angles(sc.theta, sc.azimuth);
    const double scale = -2.0 * units.mu / units.hbar;

    double line = 0.0;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        if (i > 0) line += segment_integral(sc, path, i - 1);
        const double gamma = scale * line;
        const Vec3 n = bloch_of(evolve_spin(s0, gamma)).n;
        out.rows.push_back({static_cast<long long>(i), num(path.vertices[i].x()), num(path.vertices[i].y()),
                            num(gamma), num(n.x()), num(n.y()), num(n.z())});
    }
    out.summary["gamma_total"] = scale * line;
    if (path.closed) out.summary["phi_AC"] = -0.5 * scale * line;
    out.summary["gauge_residual"] = verify_gauge_cancellation(sc.field, path, {.n_sub = sc.n_sub});
    return out;
}

void push_interference(RunOutput& out, const InterferenceResult& r) {
    out.rows.push_back({num(r.theta), num(r.phi_D), opt(r.phi), num(r.visibility), opt(r.gamma_dyn),
                        opt(r.gamma_geo), opt(r.omega_gc)});
}

const std::vector<std::string> kInterferenceColumns{"theta", "phi_D", "phi", "visibility",
                                                    "gamma_dyn", "gamma_geo", "omega_gc"};

RunOutput run_interfere(const Scenario& sc) {
    RunOutput out;
    out.columns = kInterferenceColumns;
    push_interference(out, interfere(sc.theta, *sc.phi_D));
    return out;
}

RunOutput run_sweep(const Scenario& sc) {
    RunOutput out;
    out.columns = kInterferenceColumns;
    for (double theta : sc.grid_theta->values())
        for (double phi_D : sc.grid_phid->values()) push_interference(out, interfere(theta, phi_D));
    return out;
}

RunOutput run_chi_scan(const Scenario& sc) {
    RunOutput out;
    out.columns = {"chi", "P1", "P2", "P1_fit"};
    std::optional<double> phi = sc.phi;
    double nu = 0.0;
    if (sc.visibility) {
        nu = *sc.visibility;
    } else {
        nu = nonideal_visibility(sc.theta, *sc.phi_D);
        phi = nu >= kVisibilityFloor ? std::optional<double>(nonideal_phase(sc.theta, *sc.phi_D)) : std::nullopt;
    }
    const double phi_value = phi.value_or(0.0);
    const auto samples = chi_scan(phi_value, nu, sc.chi_samples);
    const Fringe fit = fit_fringe(samples);
    for (const auto& s : samples) {
        const double p1_fit = detector_probabilities(fit.phi.value_or(0.0), fit.visibility, s.chi).p1;
        out.rows.push_back({num(s.chi), num(s.p1), num(1.0 - s.p1), num(p1_fit)});
    }
    out.summary["phi_true"] = phi ? Json(*phi) : Json(nullptr);
    out.summary["visibility_true"] = nu;
    out.summary["phi_fit"] = fit.phi ? Json(*fit.phi) : Json(nullptr);
    out.summary["visibility_fit"] = fit.visibility;
    return out;
}

RunOutput run_nondispersive(const Scenario& sc) {
    RunOutput out;
    out.columns = {"velocity", "contained", "gamma", "valid"};
    const auto rows = nondispersivity_sweep(*sc.packet, sc.velocities, *sc.region, sc.field.pulse,
                                            sc.field.units, sc.k_sigma);
    for (const auto& r : rows) out.rows.push_back({num(r.velocity), r.contained, num(r.gamma), r.valid});
    return out;
}

}  // namespace

Mode parse_mode(const std::string& name) {
    for (const auto& [m, n] : kModeNames)
        if (name == n) return m;
    throw ConfigError("key 'mode' has unknown value '" + name + "'");
}

std::string to_string(Mode m) {
    for (const auto& [mode, n] : kModeNames)
        if (mode == m) return n;
    return "unknown";
}

Grid Grid::parse(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string a, b, n;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, n) || a.empty() ||
        b.empty() || n.empty())
        throw ConfigError("key '" + key + "' must look like start:stop:count");
    try {
        std::size_t used = 0;
        Grid g;
        g.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        g.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        g.count = std::stoi(n, &used);
        if (used != n.size()) throw std::invalid_argument(n);
        if (g.count < 1) throw ConfigError("key '" + key + "' needs count >= 1");
        return g;
    } catch (const std::logic_error&) {
        throw ConfigError("key '" + key + "' must look like start:stop:count");
    }
}

std::vector<double> Grid::values() const {
    std::vector<double> v;
    for (int k = 0; k < count; ++k) v.push_back(count == 1 ? start : start + (stop - start) * k / (count - 1));
    return v;
}

void Scenario::validate() const {
    auto require = [](bool ok, const char* key) {
        if (!ok) throw ConfigError(std::string("missing required key '") + key + "'");
    };
    switch (mode) {
        case Mode::SabClassical:
        case Mode::SabQuantum:
            require(time.has_value(), "time");
            if (*time < 0.0) throw ConfigError("key 'time' must be >= 0");
            if (dt && !(*dt > 0.0)) throw ConfigError("key 'dt' must be > 0");
            if (time_samples < 1) throw ConfigError("key 'time_samples' must be >= 1");
            break;
        case Mode::AcClassical:
        case Mode::AcQuantum:
            require(path.has_value(), "path");
            if (!speeds.empty() && speeds.size() != path->segment_count())
                throw ConfigError("key 'path.speeds' needs one entry per segment");
            for (double s : speeds)
                if (!(s > 0.0)) throw ConfigError("key 'path.speeds' entries must be > 0");
            if (!(ds > 0.0)) throw ConfigError("key 'ds' must be > 0");
            if (n_sub < 1) throw ConfigError("key 'n_sub' must be >= 1");
            break;
        case Mode::Interfere:
            require(phi_D.has_value(), "phi_D");
            break;
        case Mode::Sweep:
            require(grid_theta.has_value(), "grid_theta");
            require(grid_phid.has_value(), "grid_phid");
            break;
        case Mode::ChiScan:
            if (visibility) {
                require(phi.has_value(), "phi");
                if (*visibility < 0.0 || *visibility > 1.0) throw ConfigError("key 'visibility' must lie in [0, 1]");
            } else {
                require(phi_D.has_value(), "phi_D");
            }
            if (chi_samples < 3) throw ConfigError("key 'chi_samples' must be >= 3");
            break;
        case Mode::Nondispersive:
            require(packet.has_value(), "packet");
            require(region.has_value(), "region");
            require(!velocities.empty(), "velocities");
            if (!(k_sigma > 0.0)) throw ConfigError("key 'k_sigma' must be > 0");
            break;
    }
}

Scenario scenario_from_json(const Json& doc, const std::filesystem::path& base_dir, bool degrees) {
    reject_unknown(doc,
                   {"mode", "field", "theta", "azimuth", "phi_D", "time", "dt", "time_samples", "path", "ds",
                    "n_sub", "grid_theta", "grid_phid", "chi_samples", "phi", "visibility", "packet", "region",
                    "velocities", "k_sigma", "out", "format", "degrees"},
                   "");
    Scenario sc;
    if (!doc.contains("mode") || !doc.at("mode").is_string()) throw ConfigError("missing required key 'mode'");
    sc.mode = parse_mode(doc.at("mode").get<std::string>());

    if (doc.contains("degrees")) {
        if (!doc.at("degrees").is_boolean()) throw ConfigError("key 'degrees' must be a boolean");
        degrees = degrees || doc.at("degrees").get<bool>();
    }
    const double angle = degrees ? kPi / 180.0 : 1.0;

    if (doc.contains("field")) {
        const auto& f = doc.at("field");
        sc.field = field_config_from_json(f.is_string() ? load_json_file(base_dir / f.get<std::string>()) : f);
    }

    sc.theta = angle * number_or(doc, "theta", 0.0, "");
    sc.azimuth = angle * number_or(doc, "azimuth", 0.0, "");
    if (doc.contains("phi_D")) sc.phi_D = angle * number(doc, "phi_D", "");
    if (doc.contains("time")) sc.time = number(doc, "time", "");
    if (doc.contains("dt")) sc.dt = number(doc, "dt", "");
    if (doc.contains("time_samples")) sc.time_samples = integer(doc, "time_samples");

    if (doc.contains("path")) {
        const auto& p = doc.at("path");
        reject_unknown(p, {"vertices", "closed", "speeds", "speed"}, "path.");
        sc.path = path_from_json(p);
        if (p.contains("speeds")) sc.speeds = number_list(p.at("speeds"), "path.speeds");
        if (p.contains("speed")) sc.speeds.assign(sc.path->segment_count(), number(p, "speed", "path."));
    }
    sc.ds = number_or(doc, "ds", sc.ds, "");
    if (doc.contains("n_sub")) sc.n_sub = integer(doc, "n_sub");

    auto scaled_grid = [&](const char* key) {
        Grid g = grid_from_json(doc.at(key), key);
        g.start *= angle;
        g.stop *= angle;
        return g;
    };
    if (doc.contains("grid_theta")) sc.grid_theta = scaled_grid("grid_theta");
    if (doc.contains("grid_phid")) sc.grid_phid = scaled_grid("grid_phid");

    if (doc.contains("chi_samples")) sc.chi_samples = integer(doc, "chi_samples");
    if (doc.contains("phi")) sc.phi = angle * number(doc, "phi", "");
    if (doc.contains("visibility")) sc.visibility = number(doc, "visibility", "");

    if (doc.contains("packet")) {
        const auto& p = doc.at("packet");
        reject_unknown(p, {"x0", "sigma0", "mass", "hbar"}, "packet.");
        GaussianPacket pk;
        pk.x0 = number(p, "x0", "packet.");
        pk.sigma0 = number(p, "sigma0", "packet.");
        pk.mass = number_or(p, "mass", sc.field.units.mass, "packet.");
        pk.hbar = number_or(p, "hbar", sc.field.units.hbar, "packet.");
        try {
            pk.validate();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("invalid 'packet': ") + e.what());
        }
        sc.packet = pk;
    }
    if (doc.contains("region")) {
        const auto& r = doc.at("region");
        reject_unknown(r, {"x_min", "x_max"}, "region.");
        sc.region = RegionInterval{number(r, "x_min", "region."), number(r, "x_max", "region.")};
        if (!(sc.region->x_min < sc.region->x_max)) throw ConfigError("key 'region' needs x_min < x_max");
    }
    if (doc.contains("velocities")) sc.velocities = number_list(doc.at("velocities"), "velocities");
    sc.k_sigma = number_or(doc, "k_sigma", sc.k_sigma, "");

    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) throw ConfigError("key 'out' must be a string");
        sc.out = doc.at("out").get<std::string>();
    }
    if (doc.contains("format")) {
        const auto& f = doc.at("format");
        if (f == "csv") {
            sc.format = OutputFormat::Csv;
        } else if (f == "json") {
            sc.format = OutputFormat::Json;
        } else {
            throw ConfigError("key 'format' must be \"csv\" or \"json\"");
        }
    }
    sc.validate();
    return sc;
}

RunOutput run(const Scenario& scenario) {
    scenario.validate();
    RunOutput out;
    switch (scenario.mode) {
        case Mode::SabClassical: out = run_sab_classical(scenario); break;
        case Mode::SabQuantum: out = run_sab_quantum(scenario); break;
        case Mode::AcClassical: out = run_ac_classical(scenario); break;
        case Mode::AcQuantum: out = run_ac_quantum(scenario); break;
        case Mode::Interfere: out = run_interfere(scenario); break;
        case Mode::Sweep: out = run_sweep(scenario); break;
        case Mode::ChiScan: out = run_chi_scan(scenario); break;
        case Mode::Nondispersive: out = run_nondispersive(scenario); break;
    }
    out.mode = scenario.mode;
    return out;
}

void write_csv(const RunOutput& out, std::ostream& os) {
    for (std::size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << out.columns[i];
    os << '\n';
    for (const auto& row : out.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&os](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) os << "NaN";
                    else if constexpr (std::is_same_v<T, double>) os << format_number(v);
                    else if constexpr (std::is_same_v<T, bool>) os << (v ? "true" : "false");
                    else os << v;
                },
                row[i]);
        }
        os << '\n';
    }
}

void write_json(const RunOutput& out, std::ostream& os) {
    Json rows = Json::array();
    for (const auto& row : out.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[out.columns[i]] = std::visit(
                [](const auto& v) -> Json {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
                    else if constexpr (std::is_same_v<T, double>) return std::isnan(v) ? Json(nullptr) : Json(v == 0.0 ? 0.0 : v);
                    else return v;
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    Json doc{{"mode", to_string(out.mode)}, {"columns", out.columns}, {"rows", rows}, {"summary", out.summary}};
    os << doc.dump(2) << '\n';
}

}  // namespace dualab
