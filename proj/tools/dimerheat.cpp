// dimerheat.cpp — Command-line scenario driver

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dimerheat/dynamics.hpp"
#include "dimerheat/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kToleranceError = 3;

json read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw dimerheat::ConfigError("--config", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw dimerheat::ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
}

void write_outputs(const fs::path& dir, const std::string& scenario, const json& config,
                   const dimerheat::ScenarioOutput& out, double wall_seconds)
{
    fs::create_directories(dir);
    const fs::path csv = dir / (scenario + ".csv");
    std::ofstream data(csv, std::ios::binary);
    if (!data) throw std::runtime_error("cannot write " + csv.string());
    dimerheat::write_csv(data, out.table);

    json manifest = {{"tool", "dimerheat"}, {"version", DIMERHEAT_VERSION}, {"scenario", scenario},
                     {"config", config}, {"columns", out.table.columns}, {"rows", out.table.rows.size()},
                     {"summary", out.summary}, {"wall_time_seconds", wall_seconds},
                     {"data_file", csv.filename().string()}};
    const fs::path mpath = dir / (scenario + ".manifest.json");
    std::ofstream m(mpath, std::ios::binary);
    if (!m) throw std::runtime_error("cannot write " + mpath.string());
    m << manifest.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Heat transport in a two-cavity bosonic dimer"};
    app.set_version_flag("--version", std::string(DIMERHEAT_VERSION));

    std::string scenario;
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::string names;
    for (const auto& n : dimerheat::scenario_names()) names += (names.empty() ? "" : ", ") + n;

    app.add_option("scenario", scenario, "one of: " + names)->required();
    app.add_option("--config", config_path, "flat JSON configuration file")->required();
    app.add_option("--out", out_dir, "output directory (default: config \"out\" entry or .)");
    app.add_option("--set", overrides, "override a configuration entry, key=value")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    json config;
    try {
        json file = read_config(config_path);
        if (file.is_object() && file.contains("out")) {
            if (!file["out"].is_string()) throw dimerheat::ConfigError("out", "expected a string");
            if (out_dir.empty()) out_dir = file["out"].get<std::string>();
            file.erase("out");
        }
        config = dimerheat::resolve_config(scenario, file, overrides);
    } catch (const dimerheat::ConfigError& e) {
        std::cerr << "dimerheat: config error: " << e.what() << '\n';
        return kConfigError;
    }
    if (out_dir.empty()) out_dir = ".";

    const auto start = std::chrono::steady_clock::now();
    dimerheat::ScenarioOutput result;
    try {
        result = dimerheat::run_scenario(scenario, config);
    } catch (const dimerheat::ToleranceError& e) {
        std::cerr << "dimerheat: " << scenario << ": tolerance failure: " << e.what() << '\n';
        return kToleranceError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dimerheat: " << scenario << ": invalid parameter: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "dimerheat: " << scenario << ": numerical failure: " << e.what() << '\n';
        return kToleranceError;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        write_outputs(out_dir, scenario, config, result, wall);
    } catch (const std::exception& e) {
        std::cerr << "dimerheat: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
