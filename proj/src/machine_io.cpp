#include "erasure/machine_io.hpp"

#include <fstream>

namespace erasure {

nlohmann::json probability_to_json(const Probability& p)
{
    if (p.is_exact()) {
        return p.to_string();
    }
    return p.value();
}

Probability probability_from_json(const nlohmann::json& j)
{
    if (j.is_string()) {
        return Probability::parse(j.get<std::string>());
    }
    if (j.is_number()) {
        if (j.is_number_integer()) {
            return Probability::exact(j.get<long long>(), 1);
        }
        return Probability::approx(j.get<double>());
    }
    throw std::invalid_argument("probability must be a \"num/den\" string or a number");
}

nlohmann::json machine_to_json(const EpsilonTransducer& m)
{
    nlohmann::json j;
    j["states"] = m.states();
    j["inputs"] = m.inputs();
    j["outputs"] = m.outputs();
    nlohmann::json kernel = nlohmann::json::array();
    for (const auto& e : m.entries()) {
        kernel.push_back({{"from", e.from}, {"input", e.input}, {"output", e.output}, {"to", e.to},
                          {"p", probability_to_json(e.p)}});
    }
    j["kernel"] = std::move(kernel);
    nlohmann::json policy = nlohmann::json::object();
    for (std::size_t x = 0; x < m.inputs().size(); ++x) {
        policy[m.inputs()[x]] = probability_to_json(m.input_prob(x));
    }
    j["input_policy"] = std::move(policy);
    return j;
}

EpsilonTransducer machine_from_json(const nlohmann::json& j)
{
    auto labels = [&](const char* key) {
        if (!j.contains(key) || !j.at(key).is_array()) {
            throw std::invalid_argument(std::string("machine JSON needs an array '") + key + "'");
        }
        return j.at(key).get<std::vector<std::string>>();
    };
    auto states = labels("states");
    auto inputs = labels("inputs");
    auto outputs = labels("outputs");
    if (!j.contains("kernel") || !j.at("kernel").is_array()) {
        throw std::invalid_argument("machine JSON needs an array 'kernel'");
    }
    std::vector<KernelEntry> kernel;
    for (const auto& e : j.at("kernel")) {
        kernel.push_back({e.at("from").get<std::string>(), e.at("input").get<std::string>(),
                          e.at("output").get<std::string>(), e.at("to").get<std::string>(),
                          probability_from_json(e.at("p"))});
    }
    std::optional<ProbDist> policy;
    if (j.contains("input_policy") && !j.at("input_policy").is_null()) {
        const auto& jp = j.at("input_policy");
        if (!jp.is_object()) {
            throw std::invalid_argument("'input_policy' must map input labels to probabilities");
        }
        std::vector<ProbDist::Entry> entries;
        for (const auto& x : inputs) {
            if (jp.contains(x)) {
                entries.emplace_back(x, probability_from_json(jp.at(x)));
            }
        }
        if (entries.size() != jp.size()) {
            throw std::invalid_argument("'input_policy' mentions an unknown input");
        }
        policy = ProbDist(std::move(entries));
    }
    return EpsilonTransducer(std::move(states), std::move(inputs), std::move(outputs), kernel, std::move(policy));
}

EpsilonTransducer load_machine(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw MachineFileError("cannot read machine file '" + path.string() + "'");
    }
    try {
        return machine_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
        throw MachineFileError("invalid machine file '" + path.string() + "': " + e.what());
    }
}

void save_machine(const std::filesystem::path& path, const EpsilonTransducer& m)
{
    std::ofstream out(path);
    if (!out) {
        throw MachineFileError("cannot write machine file '" + path.string() + "'");
    }
    out << machine_to_json(m).dump(2) << '\n';
}

} // namespace erasure
