#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "dualab/config.hpp"
#include "dualab/dispersion.hpp"
#include "dualab/fields.hpp"

namespace dualab {

enum class Mode { SabClassical, AcClassical, SabQuantum, AcQuantum, Interfere, Sweep, ChiScan, Nondispersive };
enum class OutputFormat { Csv, Json };

Mode parse_mode(const std::string& name);
std::string to_string(Mode m);

/// Inclusive uniform grid written "start:stop:count".
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    static Grid parse(const std::string& text, const std::string& key);
    std::vector<double> values() const;
};

struct Scenario {
    Mode mode = Mode::Interfere;
    FieldConfig field;

    double theta = 0.0;
    double azimuth = 0.0;
    std::optional<double> phi_D;

    // SAB time evolution
    std::optional<double> time;
    std::optional<double> dt;
    int time_samples = 101;

    // AC path
    std::optional<PlanarPath> path;
    std::vector<double> speeds;  ///< empty means unit speed everywhere
    double ds = 1e-3;
    int n_sub = 32;

    std::optional<Grid> grid_theta;
    std::optional<Grid> grid_phid;

    // chi-scan ground truth: explicit (phi, visibility) or derived from (theta, phi_D)
    int chi_samples = 64;
    std::optional<double> phi;
    std::optional<double> visibility;

    // nondispersive sweep
    std::optional<GaussianPacket> packet;
    std::optional<RegionInterval> region;
    std::vector<double> velocities;
    double k_sigma = kDefaultContainment;

    std::optional<std::filesystem::path> out;
    OutputFormat format = OutputFormat::Csv;

    /// Mode-specific required fields; throws ConfigError naming the missing key.
    void validate() const;
};

/// Reads a scenario document. Angles are radians unless `degrees` is set (in the
/// document or by the caller). A string "field" is a path relative to `base_dir`.
Scenario scenario_from_json(const Json& doc, const std::filesystem::path& base_dir, bool degrees = false);

/// One output table cell; an empty cell is an undefined value (NaN in CSV, null in JSON).
using Cell = std::variant<std::monostate, double, bool, long long>;

struct RunOutput {
    Mode mode = Mode::Interfere;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Json summary = Json::object();
};

/// Runs the scenario. Deterministic; rows follow grid/path/time index order.
RunOutput run(const Scenario& scenario);

void write_csv(const RunOutput& out, std::ostream& os);
void write_json(const RunOutput& out, std::ostream& os);

}  // namespace dualab
