#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "erasure/transducer.hpp"

namespace erasure {

/// Machine file format:
///   {"states": [...], "inputs": [...], "outputs": [...],
///    "kernel": [{"from", "input", "output", "to", "p"}],
///    "input_policy": {"<input>": p, ...}}
/// Probabilities are "num/den" strings (exact) or JSON numbers.
nlohmann::json machine_to_json(const EpsilonTransducer& m);
EpsilonTransducer machine_from_json(const nlohmann::json& j);

class MachineFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EpsilonTransducer load_machine(const std::filesystem::path& path);
void save_machine(const std::filesystem::path& path, const EpsilonTransducer& m);

/// Probability as it appears in machine files and reports.
nlohmann::json probability_to_json(const Probability& p);
Probability probability_from_json(const nlohmann::json& j);

} // namespace erasure
