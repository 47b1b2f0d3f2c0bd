// scenarios.hpp — Named runs with flat JSON configuration and tabular output

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace dimerheat {

// Invalid or unknown configuration entry; field() names it.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// 17 significant digits in scientific notation.
std::string format_number(double value);
void write_csv(std::ostream& out, const Table& table);

struct ScenarioOutput {
    Table table;
    nlohmann::json summary;
};

const std::vector<std::string>& scenario_names();

// Default configuration of a scenario; every accepted key appears here.
nlohmann::json scenario_defaults(const std::string& scenario);

// defaults <- file <- overrides ("key=value", value parsed as JSON when it can
// be, else taken as a string). Unknown keys, wrong types and values outside
// the module preconditions raise ConfigError.
nlohmann::json resolve_config(const std::string& scenario, const nlohmann::json& file,
                              const std::vector<std::string>& overrides = {});

// Runs a resolved configuration. Numerical failures surface as
// ToleranceError or std::runtime_error.
ScenarioOutput run_scenario(const std::string& scenario, const nlohmann::json& config);

} // namespace dimerheat
