#include <doctest.h>

#include <cmath>
#include <sstream>

#include "erasure/thermo.hpp"

using namespace erasure;
using namespace erasure::thermo;

TEST_CASE("memory cell resets cost the ensemble entropy")
{
    HeatLedger ledger;
    MemoryCell c("m", CellKind::basis);
    CHECK(c.reset(ledger, 1) == 0.0);
    c.copy_into(1, ProbDist::uniform({"0", "1"}));
    CHECK_THROWS_AS(c.copy_into(0, ProbDist::uniform({"0", "1"})), std::logic_error);
    CHECK(landauer_erase(c, ledger, 2) == doctest::Approx(1.0));
    CHECK(c.blank());
    c.copy_into(0, ProbDist({{"0", Probability::exact(3, 4)}, {"1", Probability::exact(1, 4)}}));
    CHECK(c.reset(ledger, 3) == doctest::Approx(0.8112781244591328));
    CHECK(ledger.size() == 3);
    CHECK(ledger.events()[1].op == "reset:basis");
    CHECK(ledger.events()[1].heat == doctest::Approx(1.0));
    CHECK_THROWS(c.copy_into(2, ProbDist::uniform({"0", "1"})));
}

TEST_CASE("ledger totals and parameters")
{
    HeatLedger ledger(ThermoParams{kBoltzmannSI, 300.0});
    MemoryCell c("m", CellKind::outcome);
    c.copy_into(0, ProbDist::uniform({"0", "1"}));
    c.reset(ledger, 1);
    const LedgerTotal total = ledger_total(ledger, kBoltzmannSI, 300.0);
    CHECK(total.bits == doctest::Approx(1.0));
    CHECK(total.joules == doctest::Approx(kBoltzmannSI * 300.0 * std::log(2.0)));
    CHECK_THROWS_AS(ledger_total(ledger, 1.0, 0.0), std::domain_error);
    CHECK_THROWS(HeatLedger(ThermoParams{1.0, -1.0}));
    std::ostringstream os;
    write_ledger_csv(os, ledger);
    CHECK(os.str().rfind("t,op,bits,heat\n1,reset:outcome,1,", 0) == 0);
}

TEST_CASE("RAND randomizes without heat")
{
    HeatLedger ledger;
    Rng rng(2);
    BitBox box;
    int ones = 0;
    for (int i = 0; i < 20000; ++i) {
        box = rand_operation(box, rng, ledger, i);
        ones += box.side;
        CHECK(shannon_entropy(box.ensemble) == doctest::Approx(1.0));
    }
    CHECK(ledger.empty());
    CHECK(ones / 20000.0 == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("qubit cell ensembles are uniform")
{
    const CellEnsembles e = qubit_cell_ensembles();
    CHECK(e.basis.prob("0") == Probability::exact(1, 2));
    CHECK(e.outcome.prob("1") == Probability::exact(1, 2));
}

TEST_CASE("memoryless agent pays two bits every cycle")
{
    QuantumSystem sys;
    const AgentRun run = run_agent_protocol(sys, AgentMode::memoryless, 5000, 1);
    CHECK(run.report.average_bits == 2.0);
    CHECK(run.report.counted_cycles == 5000);
    for (double b : run.report.per_cycle_bits) {
        CHECK(b == 2.0);
    }
    CHECK(run.report.skipped == 0);
    CHECK(run.ledger.size() == 10000);
}

TEST_CASE("memory-assisted agent")
{
    for (int which = 0; which < 2; ++which) {
        Rng sys_rng(10);
        SpekkensSystem spek(sys_rng);
        QuantumSystem quant;
        MeasuredSystem& sys = which == 0 ? static_cast<MeasuredSystem&>(spek) : quant;
        const AgentRun run = run_agent_protocol(sys, AgentMode::memory_assisted, 50000, 11);
        const CycleReport& r = run.report;
        CHECK(r.counted_cycles == 49999);
        CHECK(r.basis_bits == 1.0);
        CHECK(r.outcome_bits == doctest::Approx(0.5).epsilon(0.03));
        CHECK(r.average_bits == doctest::Approx(r.basis_bits + r.outcome_bits));
        CHECK(r.skip_mismatches == 0);
        CHECK(r.skipped + r.measurements == 50000);
        // each cycle costs 1 (skip) or 2 (measure) bits
        for (std::size_t i = 1; i < r.per_cycle_bits.size(); ++i) {
            CHECK((r.per_cycle_bits[i] == 1.0 || r.per_cycle_bits[i] == 2.0));
        }
        for (const auto& e : run.ledger.events()) {
            CHECK((e.origin == "basis-cell" || e.origin == "outcome-cell"));
        }
        const Reconciliation rec = reconcile(build_qubit_machine(), r);
        CHECK(rec.erased_information == doctest::Approx(1.5));
        CHECK(rec.residual <= 0.02);
    }
}

TEST_CASE("agent runs are reproducible")
{
    auto once = [] {
        Rng sys_rng(5);
        SpekkensSystem sys(sys_rng);
        return run_agent_protocol(sys, AgentMode::memory_assisted, 2000, 6).report.per_cycle_bits;
    };
    CHECK(once() == once());
}

TEST_CASE("reconcile with an explicit prior")
{
    CycleReport half;
    half.average_bits = 0.5;
    const EpsilonTransducer nor = build_nor_machine();
    CHECK(reconcile(nor, half, ProbDist::uniform(nor.states())).residual == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(reconcile(nor, half).residual == doctest::Approx(0.5 - 0.4591479170272448).epsilon(1e-9));
}

TEST_CASE("agent argument checks")
{
    QuantumSystem sys;
    CHECK_THROWS(run_agent_protocol(sys, AgentMode::memoryless, 0, 1));
    CHECK_THROWS(agent_mode_from_string("forgetful"));
    CHECK(agent_mode_from_string(to_string(AgentMode::memory_assisted)) == AgentMode::memory_assisted);
}
