#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "erasure/entropy.hpp"
#include "erasure/quantum.hpp"
#include "erasure/rng.hpp"
#include "erasure/spekkens.hpp"
#include "erasure/trajectory.hpp"
#include "erasure/transducer.hpp"

namespace erasure::thermo {

/// Defaults give k T ln2 = 1, so one bit costs one heat unit.
struct ThermoParams {
    double k = 1.0;
    double temperature = 1.0 / 0.6931471805599453;
};

enum class CellKind { basis, outcome, other };

struct LedgerEvent {
    std::uint64_t t;
    std::string op;     // e.g. "reset:basis"
    std::string origin; // name of the agent cell that was reset
    CellKind kind;
    double bits;
    double heat;        // bits * k T ln2
};

/// Append-only record of heat-producing resets. Events can only be appended
/// through landauer_erase, which acts on agent memory cells.
class HeatLedger {
public:
    explicit HeatLedger(ThermoParams params = {});

    [[nodiscard]] const std::vector<LedgerEvent>& events() const noexcept { return events_; }
    [[nodiscard]] const ThermoParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t size() const noexcept { return events_.size(); }
    [[nodiscard]] bool empty() const noexcept { return events_.empty(); }

private:
    friend class MemoryCell;
    void append(LedgerEvent e);

    ThermoParams params_;
    std::vector<LedgerEvent> events_;
};

/// One binary memory cell of an agent. Besides its content it carries the
/// ensemble of values the cell holds across runs of the protocol; a reset
/// costs the entropy of that ensemble.
class MemoryCell {
public:
    MemoryCell(std::string name, CellKind kind) : name_(std::move(name)), kind_(kind) {}

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] CellKind kind() const noexcept { return kind_; }
    [[nodiscard]] bool blank() const noexcept { return !content_.has_value(); }
    [[nodiscard]] const std::optional<int>& content() const noexcept { return content_; }
    [[nodiscard]] const ProbDist& ensemble() const noexcept { return ensemble_; }

    /// Correlates a blank cell with a value (free). Throws std::logic_error if not blank.
    void copy_into(int bit, ProbDist ensemble);

    /// Exchanges contents with another cell (logically reversible, free).
    void swap_contents(MemoryCell& other) noexcept;

    /// Landauer reset to blank. Logs -dS = H(ensemble) bits (0 for a blank cell).
    /// Returns the logged cost in bits.
    double reset(HeatLedger& ledger, std::uint64_t t);

private:
    std::string name_;
    CellKind kind_;
    std::optional<int> content_;
    ProbDist ensemble_ = ProbDist::point("blank");
};

/// Free function form of MemoryCell::reset.
double landauer_erase(MemoryCell& cell, HeatLedger& ledger, std::uint64_t t);

struct LedgerTotal {
    double bits = 0.0;
    double kt_ln2_units = 0.0;
    double joules = 0.0;
};

/// Sum of logged costs. Throws std::domain_error for T <= 0.
LedgerTotal ledger_total(const HeatLedger& l, double k, double temperature);

/// CSV with header "t,op,bits,heat".
void write_ledger_csv(std::ostream& os, const HeatLedger& l);

/// A one-bit particle-in-a-box system; `side` is 0 (left) or 1 (right).
struct BitBox {
    int side = 0;
    ProbDist ensemble = ProbDist::point("0");
};

/// RAND: remove the partition, wait, re-insert. Randomizes the bit. The
/// required heat is the Landauer bound for the ensemble change, which is never
/// positive here, so nothing is appended to the ledger.
BitBox rand_operation(const BitBox& box, Rng& rng, HeatLedger& ledger, std::uint64_t t = 0);

/// System measured by the agent: a sequence of basis choices and readouts.
class MeasuredSystem {
public:
    virtual ~MeasuredSystem() = default;
    /// Apply the next input x_t and the system's own measurement interaction.
    virtual void advance(Rng& rng) = 0;
    /// Current basis bit: 0 = z (vertical partition), 1 = x (horizontal).
    [[nodiscard]] virtual int basis() const = 0;
    /// Readout bit of the current position measurement: 0 = +1, 1 = -1.
    [[nodiscard]] virtual int readout() const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

/// Spekkens box with the repeated random-reorientation protocol.
class SpekkensSystem final : public MeasuredSystem {
public:
    SpekkensSystem(Rng& rng, double reorient_probability = 0.5);
    void advance(Rng& rng) override;
    [[nodiscard]] int basis() const override;
    [[nodiscard]] int readout() const override;
    [[nodiscard]] std::string name() const override { return "spekkens"; }
    [[nodiscard]] const spekkens::SpekkensBox& box() const noexcept { return box_; }

private:
    spekkens::SpekkensBox box_;
    double reorient_probability_;
};

/// Qubit under selective Pauli measurements.
class QuantumSystem final : public MeasuredSystem {
public:
    explicit QuantumSystem(double switch_probability = 0.5);
    void advance(Rng& rng) override;
    [[nodiscard]] int basis() const override { return basis_; }
    [[nodiscard]] int readout() const override { return readout_; }
    [[nodiscard]] std::string name() const override { return "quantum"; }
    [[nodiscard]] const DensityMatrix2& state() const noexcept { return rho_; }

private:
    DensityMatrix2 rho_;
    int basis_ = 0;
    int readout_ = 0;
    double switch_probability_;
};

enum class AgentMode { memoryless, memory_assisted };

std::string to_string(AgentMode m);
AgentMode agent_mode_from_string(const std::string& s);

/// Statistical ensembles the agent assigns to its cell contents.
struct CellEnsembles {
    ProbDist basis;
    ProbDist outcome;
};

/// Basis and outcome marginals of the qubit machine at stationarity.
CellEnsembles qubit_cell_ensembles();

struct CycleReport {
    std::vector<double> per_cycle_bits;
    std::uint64_t cycles = 0;          // cycles run
    std::uint64_t counted_cycles = 0;  // cycles in the steady-state average
    double total_bits = 0.0;           // over counted cycles
    double average_bits = 0.0;         // total_bits / counted_cycles
    double basis_bits = 0.0;           // average per counted cycle
    double outcome_bits = 0.0;         // average per counted cycle
    std::uint64_t measurements = 0;    // position measurements performed
    std::uint64_t skipped = 0;         // measurements skipped using the archive
    std::uint64_t skip_mismatches = 0; // skipped cycles where the archive disagreed with the system
};

struct AgentRun {
    Trajectory trajectory;
    HeatLedger ledger;
    CycleReport report;
};

/// Thrown when a memory-assisted agent finds its archive blank after warm-up.
class ArchiveError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Runs an agent that records basis and outcome each cycle and resets its
/// memory under Landauer accounting. Memory-assisted agents skip the position
/// measurement when the basis repeats; their first cycle is warm-up and is
/// excluded from the averages.
AgentRun run_agent_protocol(MeasuredSystem& system, AgentMode mode, std::size_t n_cycles, std::uint64_t seed,
                            ThermoParams params = {}, const CellEnsembles& ensembles = qubit_cell_ensembles());

struct Reconciliation {
    double agent_average = 0.0;
    double erased_information = 0.0;
    double residual = 0.0;
};

/// |report average - erased_information(machine, prior)|; the stationary prior when none is given.
Reconciliation reconcile(const EpsilonTransducer& machine, const CycleReport& report,
                         const std::optional<ProbDist>& prior = std::nullopt);

} // namespace erasure::thermo
