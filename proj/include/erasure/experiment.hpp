#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace erasure {

/// Bad command-line configuration or unreadable input file.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;             // qubit | spekkens | nor | agent | infer | audit
    std::optional<std::uint64_t> seed;  // required for every stochastic experiment
    std::uint64_t steps = 1'000'000;
    std::uint64_t cycles = 100'000;
    std::string mode = "memory_assisted";
    std::string system = "spekkens";    // agent: spekkens | quantum
    std::uint64_t max_history = 2;
    double tol = 0.05;
    std::string format = "json";        // json | csv
    double k = 1.0;
    double temperature = 1.0 / 0.6931471805599453;
    std::string trajectory;             // infer: CSV path
    std::string reference;              // infer: qubit | nor | machine JSON path
};

struct Report {
    nlohmann::ordered_json json;
    std::string csv;                    // payload for --format csv
    bool passed = false;
};

/// Throws UsageError for invalid configurations.
void validate(const ExperimentConfig& config);

/// Runs one experiment. The result depends only on `config`.
Report run(const ExperimentConfig& config);

/// Machine-independent rendering used for --out and stdout.
std::string render(const Report& report, const std::string& format);

} // namespace erasure
