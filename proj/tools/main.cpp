#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "erasure/experiment.hpp"
#include "erasure/machine_io.hpp"
#include "erasure/reconstruction.hpp"
#include "erasure/trajectory.hpp"
#include "erasure/transducer.hpp"

namespace {

constexpr int kChecksFailed = 1;
constexpr int kUsage = 2;

void add_common(CLI::App* sub, erasure::ExperimentConfig& c, std::string& out)
{
    sub->add_option("--seed", c.seed, "master RNG seed");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--k", c.k, "Boltzmann constant (default 1)");
    sub->add_option("--T", c.temperature, "bath temperature (default 1/ln2)");
    sub->add_option("--tol", c.tol, "reconstruction tolerance");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Information erasure in quantum measurement: experiments and heat accounting"};
    app.require_subcommand(1);

    erasure::ExperimentConfig config;
    std::string out;

    auto* qubit = app.add_subcommand("qubit", "qubit measurement epsilon-machine");
    auto* nor = app.add_subcommand("nor", "NOR channel epsilon-transducer");
    auto* spekkens = app.add_subcommand("spekkens", "Spekkens toy-model box vs. the qubit machine");
    auto* agent = app.add_subcommand("agent", "agent memory reset ledger");
    auto* infer = app.add_subcommand("infer", "causal-state reconstruction from a trajectory CSV");
    auto* audit = app.add_subcommand("audit", "system-side entropy audit of selective measurements");

    for (auto* sub : {qubit, nor, spekkens, audit}) {
        sub->add_option("--steps", config.steps, "number of time steps");
    }
    agent->add_option("--cycles", config.cycles, "number of agent cycles");
    agent->add_option("--mode", config.mode, "memoryless or memory_assisted");
    agent->add_option("--system", config.system, "spekkens or quantum");
    infer->add_option("--trajectory", config.trajectory, "trajectory CSV (t,x,y,s)")->required();
    infer->add_option("--max-history", config.max_history, "history length L");
    infer->add_option("--reference", config.reference, "qubit, nor, or a machine JSON file");
    for (auto* sub : {qubit, nor, spekkens, agent, infer, audit}) {
        add_common(sub, config, out);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsage;
    }
    config.experiment = app.get_subcommands().front()->get_name();

    try {
        const erasure::Report report = erasure::run(config);
        const std::string text = erasure::render(report, config.format);
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) {
                throw erasure::UsageError("cannot write '" + out + "'");
            }
            f << text;
        }
        if (!report.passed) {
            std::cerr << "one or more embedded checks failed\n";
            return kChecksFailed;
        }
        return 0;
    } catch (const erasure::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const erasure::CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const erasure::MachineFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const erasure::ReconstructionError& e) {
        std::cerr << "error: reconstruction failed: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kUsage;
}
