#include "erasure/thermo.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace erasure::thermo {

namespace {

double kt_ln2(const ThermoParams& p)
{
    return p.k * p.temperature * std::numbers::ln2;
}

const char* kind_name(CellKind k)
{
    switch (k) {
    case CellKind::basis:
        return "basis";
    case CellKind::outcome:
        return "outcome";
    case CellKind::other:
        break;
    }
    return "other";
}

} // namespace

HeatLedger::HeatLedger(ThermoParams params) : params_(params)
{
    if (!(params_.temperature > 0.0) || !(params_.k > 0.0)) {
        throw std::domain_error("ledger needs positive k and T");
    }
}

void HeatLedger::append(LedgerEvent e)
{
    if (e.bits < 0.0) {
        throw std::logic_error("reset events cannot have negative cost");
    }
    e.heat = e.bits * kt_ln2(params_);
    events_.push_back(std::move(e));
}

void MemoryCell::copy_into(int bit, ProbDist ensemble)
{
    if (!blank()) {
        throw std::logic_error("copy into non-blank cell '" + name_ + "'");
    }
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("memory cells hold a single bit");
    }
    content_ = bit;
    ensemble_ = std::move(ensemble);
}

void MemoryCell::swap_contents(MemoryCell& other) noexcept
{
    std::swap(content_, other.content_);
    std::swap(ensemble_, other.ensemble_);
}

double MemoryCell::reset(HeatLedger& ledger, std::uint64_t t)
{
    // Resetting to a fixed blank takes the ensemble entropy from H to 0.
    const double bits = blank() ? 0.0 : shannon_entropy(ensemble_);
    ledger.append({t, std::string("reset:") + kind_name(kind_), name_, kind_, bits, 0.0});
    content_.reset();
    ensemble_ = ProbDist::point("blank");
    return bits;
}

double landauer_erase(MemoryCell& cell, HeatLedger& ledger, std::uint64_t t)
{
    return cell.reset(ledger, t);
}

LedgerTotal ledger_total(const HeatLedger& l, double k, double temperature)
{
    if (!(temperature > 0.0)) {
        throw std::domain_error("temperature must be positive");
    }
    LedgerTotal total;
    for (const auto& e : l.events()) {
        total.bits += e.bits;
    }
    total.kt_ln2_units = total.bits;
    total.joules = total.bits * k * temperature * std::numbers::ln2;
    return total;
}

void write_ledger_csv(std::ostream& os, const HeatLedger& l)
{
    os << "t,op,bits,heat\n";
    for (const auto& e : l.events()) {
        os << e.t << ',' << e.op << ',' << e.bits << ',' << e.heat << '\n';
    }
}

BitBox rand_operation(const BitBox& box, Rng& rng, HeatLedger& ledger, std::uint64_t t)
{
    BitBox out;
    out.side = static_cast<int>(rng.index(2));
    out.ensemble = ProbDist::uniform({"0", "1"});
    const double delta = shannon_entropy(out.ensemble) - shannon_entropy(box.ensemble);
    const HeatBound bound = landauer_lower_bound(delta, ledger.params().temperature, ledger.params().k);
    if (bound.kt_ln2_units > 0.0) {
        // Not reachable for RAND: the ensemble entropy never decreases.
        throw std::logic_error("RAND produced a positive heat bound at t=" + std::to_string(t));
    }
    return out;
}

SpekkensSystem::SpekkensSystem(Rng& rng, double reorient_probability)
    : box_{static_cast<int>(rng.index(4)) + 1, spekkens::Partition::vertical},
      reorient_probability_(reorient_probability)
{
}

void SpekkensSystem::advance(Rng& rng)
{
    using spekkens::Partition;
    if (rng.bernoulli(reorient_probability_)) {
        box_ = spekkens::set_partition(
            box_, box_.partition == Partition::vertical ? Partition::horizontal : Partition::vertical);
    }
    box_ = spekkens::evolve(box_, rng);
}

int SpekkensSystem::basis() const
{
    return box_.partition == spekkens::Partition::vertical ? 0 : 1;
}

int SpekkensSystem::readout() const
{
    const auto side = spekkens::observe(box_);
    return (side == spekkens::Side::left || side == spekkens::Side::top) ? 0 : 1;
}

QuantumSystem::QuantumSystem(double switch_probability)
    : rho_(DensityMatrix2::pure(1.0, 0.0)), switch_probability_(switch_probability)
{
}

void QuantumSystem::advance(Rng& rng)
{
    if (rng.bernoulli(switch_probability_)) {
        basis_ = 1 - basis_;
    }
    const auto r = measure_selective(rho_, basis_ == 0 ? MeasurementBasis::z() : MeasurementBasis::x(), rng);
    rho_ = r.state;
    readout_ = r.outcome > 0 ? 0 : 1;
}

std::string to_string(AgentMode m)
{
    return m == AgentMode::memoryless ? "memoryless" : "memory_assisted";
}

AgentMode agent_mode_from_string(const std::string& s)
{
    if (s == "memoryless") {
        return AgentMode::memoryless;
    }
    if (s == "memory_assisted" || s == "memory-assisted") {
        return AgentMode::memory_assisted;
    }
    throw std::invalid_argument("unknown agent mode '" + s + "'");
}

CellEnsembles qubit_cell_ensembles()
{
    const EpsilonTransducer m = build_qubit_machine();
    const JointTable j = build_joint(m, stationary_distribution(m));
    auto relabel = [](const ProbDist& d, const std::string& zero) {
        std::vector<ProbDist::Entry> out;
        for (const auto& [label, p] : d.outcomes()) {
            out.emplace_back(label == zero ? "0" : "1", p);
        }
        return ProbDist(std::move(out));
    };
    return {relabel(j.marginal(axis::kInput), qubit::kZ), relabel(j.marginal(axis::kOutput), qubit::kPlus)};
}

AgentRun run_agent_protocol(MeasuredSystem& system, AgentMode mode, std::size_t n_cycles, std::uint64_t seed,
                            ThermoParams params, const CellEnsembles& ensembles)
{
    if (n_cycles < 1) {
        throw std::invalid_argument("agent protocol needs at least one cycle");
    }
    const EpsilonTransducer machine = build_qubit_machine();
    AgentRun run{{}, HeatLedger(params), {}};
    Trajectory& traj = run.trajectory;
    traj.seed = seed;
    traj.inputs = machine.inputs();
    traj.outputs = machine.outputs();
    traj.states = machine.states();
    traj.steps.reserve(n_cycles);

    CycleReport& rep = run.report;
    rep.per_cycle_bits.reserve(n_cycles);

    MemoryCell basis_cell("basis-cell", CellKind::basis);
    MemoryCell outcome_cell("outcome-cell", CellKind::outcome);
    MemoryCell prev_basis("prev-basis", CellKind::basis);
    MemoryCell prev_outcome("prev-outcome", CellKind::outcome);

    Rng rng(seed);
    double basis_total = 0.0;
    double outcome_total = 0.0;
    const std::uint64_t first_counted = mode == AgentMode::memory_assisted ? 2 : 1;

    for (std::uint64_t t = 1; t <= n_cycles; ++t) {
        system.advance(rng);
        if (!basis_cell.blank() || !outcome_cell.blank()) {
            throw std::logic_error("working cells not blank at the start of a cycle");
        }
        double cycle_bits = 0.0;
        double cycle_basis = 0.0;
        double cycle_outcome = 0.0;
        auto reset = [&](MemoryCell& c) {
            if (c.blank()) {
                return;
            }
            const double bits = landauer_erase(c, run.ledger, t);
            cycle_bits += bits;
            (c.kind() == CellKind::basis ? cycle_basis : cycle_outcome) += bits;
        };

        basis_cell.copy_into(system.basis(), ensembles.basis);
        int outcome = 0;

        if (mode == AgentMode::memoryless) {
            outcome = system.readout();
            ++rep.measurements;
            outcome_cell.copy_into(outcome, ensembles.outcome);
            reset(basis_cell);
            reset(outcome_cell);
        } else {
            const bool warm_up = t == 1;
            if (!warm_up && (prev_basis.blank() || prev_outcome.blank())) {
                throw ArchiveError("memory-assisted agent has a blank archive at cycle " + std::to_string(t));
            }
            if (!warm_up && basis_cell.content() == prev_basis.content()) {
                outcome = *prev_outcome.content();
                ++rep.skipped;
                if (outcome != system.readout()) {
                    ++rep.skip_mismatches;
                }
                reset(basis_cell);
            } else {
                outcome = system.readout();
                ++rep.measurements;
                outcome_cell.copy_into(outcome, ensembles.outcome);
                basis_cell.swap_contents(prev_basis);
                outcome_cell.swap_contents(prev_outcome);
                reset(basis_cell);
                reset(outcome_cell);
            }
        }

        const std::string& x = system.basis() == 0 ? qubit::kZ : qubit::kX;
        const std::string& y = outcome == 0 ? qubit::kPlus : qubit::kMinus;
        traj.steps.push_back({t, static_cast<std::uint16_t>(machine.input_index(x)),
                              static_cast<std::uint16_t>(machine.output_index(y)),
                              static_cast<std::uint16_t>(machine.state_index(qubit::state_for(x, y)))});

        rep.per_cycle_bits.push_back(cycle_bits);
        if (t >= first_counted) {
            rep.total_bits += cycle_bits;
            basis_total += cycle_basis;
            outcome_total += cycle_outcome;
            ++rep.counted_cycles;
        }
    }
    rep.cycles = n_cycles;
    if (rep.counted_cycles > 0) {
        const double n = static_cast<double>(rep.counted_cycles);
        rep.average_bits = rep.total_bits / n;
        rep.basis_bits = basis_total / n;
        rep.outcome_bits = outcome_total / n;
    }
    return run;
}

Reconciliation reconcile(const EpsilonTransducer& machine, const CycleReport& report,
                         const std::optional<ProbDist>& prior)
{
    Reconciliation r;
    r.agent_average = report.average_bits;
    r.erased_information = erased_information(machine, prior ? *prior : stationary_distribution(machine));
    r.residual = std::abs(r.agent_average - r.erased_information);
    return r;
}

} // namespace erasure::thermo
