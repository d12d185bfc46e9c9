// Command-line front end: loads a scenario, runs it, writes CSV or JSON.
//
// Exit status: 0 success, 2 configuration error, 3 numerical-domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dualab/errors.hpp"
#include "dualab/scenario.hpp"

namespace {

constexpr int kConfigErrorExit = 2;
constexpr int kDomainErrorExit = 3;

dualab::Json load(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw dualab::ConfigError("cannot open config '" + file + "'");
    try {
        return dualab::Json::parse(in);
    } catch (const dualab::Json::parse_error& e) {
        throw dualab::ConfigError("config '" + file + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonideal scalar Aharonov-Bohm / Aharonov-Casher precession and interference"};

    std::optional<std::string> mode, config, out, format, grid_theta, grid_phid;
    std::optional<double> theta, phi_d;
    std::optional<int> chi_samples;
    bool degrees = false;

    app.add_option("--mode", mode,
                   "sab-classical | ac-classical | sab-quantum | ac-quantum | interfere | sweep | chi-scan | "
                   "nondispersive");
    app.add_option("--config", config, "scenario JSON document");
    app.add_option("--out", out, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_option("--theta", theta, "initial tilt of the dipole from +z");
    app.add_option("--phi-d", phi_d, "ideal phase difference");
    app.add_option("--grid-theta", grid_theta, "theta grid start:stop:count");
    app.add_option("--grid-phid", grid_phid, "phi_D grid start:stop:count");
    app.add_option("--chi-samples", chi_samples, "number of auxiliary-phase samples");
    app.add_flag("--degrees", degrees, "angles are given in degrees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigErrorExit;
    }

    try {
        dualab::Json doc = config ? load(*config) : dualab::Json::object();
        std::filesystem::path base = config ? std::filesystem::path(*config).parent_path() : std::filesystem::path{};

        // Flags override file keys.
        if (mode) doc["mode"] = *mode;
        if (out) doc["out"] = *out;
        if (format) doc["format"] = *format;
        if (theta) doc["theta"] = *theta;
        if (phi_d) doc["phi_D"] = *phi_d;
        if (grid_theta) doc["grid_theta"] = *grid_theta;
        if (grid_phid) doc["grid_phid"] = *grid_phid;
        if (chi_samples) doc["chi_samples"] = *chi_samples;

        const auto scenario = dualab::scenario_from_json(doc, base, degrees);
        const auto result = dualab::run(scenario);

        std::ofstream file;
        if (scenario.out) {
            file.open(*scenario.out, std::ios::binary);
            if (!file) throw dualab::ConfigError("cannot write key 'out' = '" + scenario.out->string() + "'");
        }
        std::ostream& os = scenario.out ? static_cast<std::ostream&>(file) : std::cout;
        if (scenario.format == dualab::OutputFormat::Json) {
            dualab::write_json(result, os);
        } else {
            dualab::write_csv(result, os);
            if (!result.summary.empty()) (scenario.out ? std::cout : std::cerr) << result.summary.dump() << '\n';
        }
        return 0;
    } catch (const dualab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigErrorExit;
    } catch (const dualab::DomainError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kDomainErrorExit;
    }
}
