#include "erasure/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "erasure/machine_io.hpp"
#include "erasure/quantum.hpp"
#include "erasure/reconstruction.hpp"
#include "erasure/rng.hpp"
#include "erasure/spekkens.hpp"
#include "erasure/thermo.hpp"
#include "erasure/trajectory.hpp"
#include "erasure/transducer.hpp"

namespace erasure {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kExactTol = 1e-12;
constexpr double kIdentityTol = 1e-10;

/// Acceptance tolerances are stated at a reference sample size; smaller runs
/// get the tolerance widened by the usual 1/sqrt(n) sampling factor.
double scaled_tolerance(double tol, std::uint64_t n, double reference_n)
{
    const double ratio = reference_n / static_cast<double>(std::max<std::uint64_t>(n, 1));
    return tol * std::sqrt(std::max(1.0, ratio));
}

ojson prob_json(const Probability& p)
{
    if (p.is_exact()) {
        return p.to_string();
    }
    return p.value();
}

ojson dist_json(const ProbDist& d)
{
    ojson j = ojson::object();
    for (const auto& [label, p] : d.outcomes()) {
        j[label] = prob_json(p);
    }
    return j;
}

std::string rational_string(const std::optional<Rational>& r)
{
    return r ? Probability::exact(*r).to_string() : std::string();
}

class Checks {
public:
    void add(const std::string& name, double value, double expected, double tolerance, std::string note = {})
    {
        const bool ok = std::isfinite(value) && std::abs(value - expected) <= tolerance;
        ojson c{{"name", name}, {"value", value}, {"expected", expected}, {"tolerance", tolerance}, {"passed", ok}};
        if (!note.empty()) {
            c["note"] = std::move(note);
        }
        items_.push_back(std::move(c));
        passed_ = passed_ && ok;
    }

    void add_bool(const std::string& name, bool ok, std::string note = {})
    {
        ojson c{{"name", name}, {"passed", ok}};
        if (!note.empty()) {
            c["note"] = std::move(note);
        }
        items_.push_back(std::move(c));
        passed_ = passed_ && ok;
    }

    [[nodiscard]] bool passed() const noexcept { return passed_; }
    [[nodiscard]] const ojson& json() const noexcept { return items_; }

private:
    ojson items_ = ojson::array();
    bool passed_ = true;
};

ojson config_json(const ExperimentConfig& c)
{
    ojson j;
    j["experiment"] = c.experiment;
    j["seed"] = c.seed ? ojson(*c.seed) : ojson(nullptr);
    j["steps"] = c.steps;
    j["cycles"] = c.cycles;
    j["mode"] = c.mode;
    j["system"] = c.system;
    j["max_history"] = c.max_history;
    j["tol"] = c.tol;
    j["format"] = c.format;
    j["k"] = c.k;
    j["T"] = c.temperature;
    j["trajectory"] = c.trajectory;
    j["reference"] = c.reference;
    return j;
}

ojson appendix_json(const AppendixReport& a)
{
    return ojson{{"lhs_bits", a.lhs},
                 {"rhs_bits", a.rhs},
                 {"residual", a.residual},
                 {"output_branching_bits", a.output_branching},
                 {"corrected_residual", a.corrected_residual}};
}

std::string csv_of(const Trajectory& t)
{
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

void add_appendix(const EpsilonTransducer& m, const ProbDist& pi, ojson& exact, Checks& checks)
{
    const AppendixReport a = verify_appendix_identity(m, pi);
    exact["appendix_identity"] = appendix_json(a);
    checks.add("appendix_identity_with_branching_term", a.corrected_residual, 0.0, kIdentityTol,
               "lhs = H(Y_t|X_t,S_{t-1}) - I_erased");
}

Report run_qubit(const ExperimentConfig& c, Report r)
{
    Checks checks;
    const EpsilonTransducer m = build_qubit_machine();
    const ProbDist pi = stationary_distribution(m);
    const JointTable joint = build_joint(m, pi);

    ojson exact;
    exact["stationary_distribution"] = dist_json(pi);
    exact["statistical_complexity_bits"] = statistical_complexity(m);
    exact["statistical_complexity_exact"] = rational_string(statistical_complexity_exact(m));
    const double erased = erased_information(m, pi);
    const auto erased_exact = erased_information_exact(m, pi);
    exact["erased_information_bits"] = erased;
    exact["erased_information_exact"] = rational_string(erased_exact);
    exact["backward_probabilities_given_z_s0"] =
        dist_json(conditional(joint, axis::kPrevState, {{axis::kInput, qubit::kZ}, {axis::kNextState, qubit::kS0}}));
    checks.add_bool("erased_information_exact_3/2", erased_exact && *erased_exact == Rational(3, 2));
    checks.add("statistical_complexity", statistical_complexity(m), 2.0, kExactTol);
    add_appendix(m, pi, exact, checks);

    const Trajectory t = simulate(m, qubit::kS0, c.steps, *c.seed);
    const double estimate = estimate_erased_information(t, m);
    const double change = state_change_fraction(t);
    ojson empirical;
    empirical["steps"] = t.steps.size();
    empirical["erased_information_bits"] = estimate;
    empirical["gap_bits"] = estimate - erased;
    empirical["state_change_fraction"] = change;
    ojson occ = ojson::object();
    double worst_occ = 0.0;
    for (const auto& [label, f] : state_occupancy(t)) {
        occ[label] = f;
        worst_occ = std::max(worst_occ, std::abs(f - 0.25));
    }
    empirical["state_occupancy"] = occ;
    checks.add("empirical_erased_information", estimate, erased, scaled_tolerance(0.01, c.steps, 1e6));
    checks.add("state_change_fraction", change, 0.5, scaled_tolerance(0.002, c.steps, 1e6));
    checks.add("max_occupancy_deviation", worst_occ, 0.0, scaled_tolerance(0.005, c.steps, 1e6));

    r.json["exact"] = std::move(exact);
    r.json["empirical"] = std::move(empirical);
    r.json["checks"] = checks.json();
    r.passed = checks.passed();
    if (c.format == "csv") {
        r.csv = csv_of(t);
    }
    return r;
}

Report run_nor(const ExperimentConfig& c, Report r)
{
    Checks checks;
    const EpsilonTransducer m = build_nor_machine();
    const ProbDist pi = stationary_distribution(m);
    const ProbDist uniform = ProbDist::uniform(m.states());

    ojson exact;
    exact["stationary_distribution"] = dist_json(pi);
    exact["statistical_complexity_bits"] = statistical_complexity(m);
    const auto uniform_exact = erased_information_exact(m, uniform);
    const double erased_uniform = erased_information(m, uniform);
    const double erased_stationary = erased_information(m, pi);
    exact["erased_information_uniform_prior_bits"] = erased_uniform;
    exact["erased_information_uniform_prior_exact"] = rational_string(uniform_exact);
    exact["erased_information_stationary_prior_bits"] = erased_stationary;
    checks.add_bool("erased_information_uniform_prior_exact_1/2", uniform_exact && *uniform_exact == Rational(1, 2));
    checks.add("stationary_prior_0", pi.prob("0").value(), 2.0 / 3.0, kExactTol);
    add_appendix(m, pi, exact, checks);

    const Trajectory t = simulate(m, "0", c.steps, *c.seed);
    const double estimate = estimate_erased_information(t, m);
    ojson empirical;
    empirical["steps"] = t.steps.size();
    empirical["erased_information_bits"] = estimate;
    empirical["gap_bits"] = estimate - erased_stationary;
    ojson occ = ojson::object();
    for (const auto& [label, f] : state_occupancy(t)) {
        occ[label] = f;
    }
    empirical["state_occupancy"] = occ;
    checks.add("empirical_erased_information", estimate, erased_stationary, scaled_tolerance(0.01, c.steps, 1e6),
               "a driven channel samples its stationary prior");

    r.json["exact"] = std::move(exact);
    r.json["empirical"] = std::move(empirical);
    r.json["checks"] = checks.json();
    r.passed = checks.passed();
    if (c.format == "csv") {
        r.csv = csv_of(t);
    }
    return r;
}

Report run_spekkens(const ExperimentConfig& c, Report r)
{
    Checks checks;
    Rng seeds(*c.seed);
    const std::uint64_t protocol_seed = seeds.derive_seed();
    const std::uint64_t machine_seed = seeds.derive_seed();

    const auto run = spekkens::run_protocol(c.steps, protocol_seed, true);
    const EpsilonTransducer m = build_qubit_machine();
    const Trajectory reference = simulate(m, qubit::kS0, c.steps, machine_seed);

    ojson empirical;
    empirical["steps"] = run.steps;
    empirical["protocol_seed"] = protocol_seed;
    empirical["machine_seed"] = machine_seed;
    const double change_freq = static_cast<double>(run.orientation_changes) / static_cast<double>(run.steps);
    empirical["orientation_change_frequency"] = change_freq;
    empirical["same_basis_steps"] = run.same_basis_steps;
    empirical["same_basis_repeats"] = run.same_basis_repeats;

    ojson gaps = ojson::object();
    const double word_tol = scaled_tolerance(0.005, c.steps, 1e6);
    for (std::size_t len = 1; len <= 3 && len <= c.steps; ++len) {
        const double gap = max_frequency_gap(word_frequencies(run.trajectory, len), word_frequencies(reference, len));
        gaps[std::to_string(len)] = gap;
        checks.add("word_frequency_gap_length_" + std::to_string(len), gap, 0.0, word_tol);
    }
    empirical["max_word_frequency_gap"] = gaps;

    std::uint64_t retrodicted = 0;
    std::uint64_t retrodiction_errors = 0;
    const auto& steps = run.trajectory.steps;
    for (std::size_t i = 1; i < steps.size(); ++i) {
        auto epistemic = [&](const Step& s) {
            const bool z = run.trajectory.x_label(s) == qubit::kZ;
            const bool plus = run.trajectory.y_label(s) == qubit::kPlus;
            using spekkens::Side;
            return spekkens::EpistemicState::from_side(z ? (plus ? Side::left : Side::right)
                                                         : (plus ? Side::top : Side::bottom));
        };
        const auto r2 = spekkens::retrodict(epistemic(steps[i - 1]), epistemic(steps[i]));
        if (r2.kind == spekkens::RetrodictionKind::cell) {
            ++retrodicted;
            retrodiction_errors += (r2.cell != run.cells[i - 1]) ? 1 : 0;
        }
    }
    empirical["retrodictions"] = retrodicted;
    empirical["retrodiction_errors"] = retrodiction_errors;

    const double estimate = c.steps >= 2 ? estimate_erased_information(run.trajectory, m) : 0.0;
    empirical["erased_information_bits"] = estimate;

    checks.add_bool("same_basis_repetition", run.same_basis_repeats == run.same_basis_steps);
    checks.add_bool("retrodiction_sound", retrodiction_errors == 0);
    checks.add("orientation_change_frequency", change_freq, 0.5, scaled_tolerance(0.01, c.steps, 1e5));
    if (c.steps >= 2) {
        checks.add("empirical_erased_information", estimate, 1.5, scaled_tolerance(0.01, c.steps, 1e6));
    }

    r.json["empirical"] = std::move(empirical);
    r.json["checks"] = checks.json();
    r.passed = checks.passed();
    if (c.format == "csv") {
        r.csv = csv_of(run.trajectory);
    }
    return r;
}

Report run_agent(const ExperimentConfig& c, Report r)
{
    using namespace thermo;
    Checks checks;
    const AgentMode mode = agent_mode_from_string(c.mode);
    Rng seeds(*c.seed);
    const std::uint64_t system_seed = seeds.derive_seed();
    const std::uint64_t agent_seed = seeds.derive_seed();
    Rng system_rng(system_seed);
    std::unique_ptr<MeasuredSystem> system;
    if (c.system == "spekkens") {
        system = std::make_unique<SpekkensSystem>(system_rng);
    } else {
        system = std::make_unique<QuantumSystem>();
    }
    const ThermoParams params{c.k, c.temperature};
    const AgentRun run = run_agent_protocol(*system, mode, c.cycles, agent_seed, params);
    const CycleReport& rep = run.report;

    ojson cycle;
    cycle["cycles"] = rep.cycles;
    cycle["counted_cycles"] = rep.counted_cycles;
    cycle["total_bits"] = rep.total_bits;
    cycle["average_bits"] = rep.average_bits;
    cycle["breakdown"] = {{"basis_bits", rep.basis_bits}, {"outcome_bits", rep.outcome_bits}};
    cycle["measurements"] = rep.measurements;
    cycle["skipped_measurements"] = rep.skipped;
    cycle["skip_mismatches"] = rep.skip_mismatches;

    const LedgerTotal total = ledger_total(run.ledger, c.k, c.temperature);
    const bool all_agent = std::all_of(run.ledger.events().begin(), run.ledger.events().end(), [](const auto& e) {
        return e.origin == "basis-cell" || e.origin == "outcome-cell";
    });
    ojson ledger;
    ledger["events"] = run.ledger.size();
    ledger["total_bits"] = total.bits;
    ledger["total_kt_ln2_units"] = total.kt_ln2_units;
    ledger["total_joules"] = total.joules;
    ledger["all_events_from_agent_cells"] = all_agent;

    checks.add_bool("heat_localized_in_agent_memory", all_agent);
    checks.add_bool("skipped_outcomes_match_system", rep.skip_mismatches == 0);
    if (mode == AgentMode::memoryless) {
        checks.add("average_bits_per_cycle", rep.average_bits, 2.0, 0.0);
    } else {
        const double tol = scaled_tolerance(0.01, rep.cycles, 1e5);
        checks.add("average_bits_per_cycle", rep.average_bits, 1.5, tol);
        checks.add("basis_bits_per_cycle", rep.basis_bits, 1.0, 0.0);
        checks.add("outcome_bits_per_cycle", rep.outcome_bits, 0.5, tol);
        const Reconciliation rec = reconcile(build_qubit_machine(), rep);
        r.json["reconciliation"] = {{"agent_average_bits", rec.agent_average},
                                    {"erased_information_bits", rec.erased_information},
                                    {"residual", rec.residual}};
        checks.add("reconcile_residual", rec.residual, 0.0, tol);
    }

    r.json["system_seed"] = system_seed;
    r.json["agent_seed"] = agent_seed;
    r.json["cycle_report"] = std::move(cycle);
    r.json["ledger"] = std::move(ledger);
    r.json["checks"] = checks.json();
    r.passed = checks.passed();
    if (c.format == "csv") {
        std::ostringstream os;
        write_ledger_csv(os, run.ledger);
        r.csv = os.str();
    }
    return r;
}

Report run_audit(const ExperimentConfig& c, Report r)
{
    Checks checks;
    const QuantumRun run = simulate_quantum(c.steps, *c.seed);
    ojson deltas = ojson::array();
    double worst = 0.0;
    std::ostringstream csv;
    csv << "t,entropy_before,entropy_after,delta\n";
    for (std::size_t i = 0; i < run.entropy_after.size(); ++i) {
        const double d = run.entropy_after[i] - run.entropy_before[i];
        deltas.push_back(d);
        worst = std::max(worst, std::abs(d));
        csv << (i + 1) << ',' << run.entropy_before[i] << ',' << run.entropy_after[i] << ',' << d << '\n';
    }
    const HeatBound bound = landauer_lower_bound(worst == 0.0 ? 0.0 : worst, c.temperature, c.k);

    ojson selective;
    selective["steps"] = run.entropy_after.size();
    selective["per_step_entropy_difference_bits"] = std::move(deltas);
    selective["max_abs_entropy_difference_bits"] = worst;
    selective["heat_lower_bound_kt_ln2"] = bound.kt_ln2_units;
    selective["heat_lower_bound_joules"] = bound.joules;
    checks.add("selective_entropy_difference", worst, 0.0, kExactTol);
    checks.add("system_heat_lower_bound", bound.kt_ln2_units, 0.0, 0.0);

    const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
    const bool fixed_z = measure_nonselective(mixed, MeasurementBasis::z()).approx_equal(mixed);
    const bool fixed_x = measure_nonselective(mixed, MeasurementBasis::x()).approx_equal(mixed);
    const double ensemble_delta =
        von_neumann_entropy(measure_nonselective(mixed, MeasurementBasis::x())) - von_neumann_entropy(mixed);
    ojson ensemble{{"maximally_mixed_fixed_point_z", fixed_z},
                   {"maximally_mixed_fixed_point_x", fixed_x},
                   {"entropy_difference_bits", ensemble_delta}};
    checks.add_bool("maximally_mixed_is_fixed_point", fixed_z && fixed_x);
    checks.add("ensemble_entropy_difference", ensemble_delta, 0.0, kExactTol);

    const auto rev = check_information_bound(box_erasure_scenario(true));
    const auto irr = check_information_bound(box_erasure_scenario(false));
    ojson info{{"reversible", {{"delta_s_ni_k", rev.delta_s_ni}, {"bound_k", rev.bound}, {"saturated", rev.saturated}}},
               {"irreversible",
                {{"delta_s_ni_k", irr.delta_s_ni}, {"bound_k", irr.bound}, {"saturated", irr.saturated}}}};
    checks.add_bool("information_bound_saturated_when_reversible", rev.satisfied && rev.saturated);
    checks.add_bool("information_bound_strict_when_irreversible", irr.satisfied && !irr.saturated);

    r.json["selective"] = std::move(selective);
    r.json["ensemble"] = std::move(ensemble);
    r.json["erasure_information_bound"] = std::move(info);
    r.json["checks"] = checks.json();
    r.passed = checks.passed();
    r.csv = csv.str();
    return r;
}

Report run_infer(const ExperimentConfig& c, Report r)
{
    Checks checks;
    std::ifstream in(c.trajectory);
    if (!in) {
        throw UsageError("cannot read trajectory file '" + c.trajectory + "'");
    }
    Trajectory t;
    try {
        t = read_csv(in);
    } catch (const CsvError& e) {
        throw UsageError("malformed trajectory '" + c.trajectory + "': " + e.what());
    }
    const HistoryTable h = HistoryTable::from_trajectory(t, c.max_history);
    const EpsilonTransducer m = reconstruct_causal_states(h, c.tol);

    ojson inferred;
    inferred["steps"] = t.steps.size();
    inferred["states"] = m.states().size();
    inferred["machine"] = ojson::parse(machine_to_json(m).dump());
    r.json["inferred"] = std::move(inferred);

    if (!c.reference.empty()) {
        std::optional<EpsilonTransducer> ref;
        if (c.reference == "qubit") {
            ref = build_qubit_machine();
        } else if (c.reference == "nor") {
            ref = build_nor_machine();
        } else {
            try {
                ref = load_machine(c.reference);
            } catch (const MachineFileError& e) {
                throw UsageError(e.what());
            }
        }
        const auto iso = find_isomorphism(*ref, m, c.tol);
        ojson verdict{{"reference", c.reference}, {"isomorphic", iso.has_value()}};
        if (iso) {
            ojson mapping = ojson::object();
            for (std::size_t i = 0; i < iso->size(); ++i) {
                mapping[m.states()[i]] = ref->states()[(*iso)[i]];
            }
            verdict["state_mapping"] = std::move(mapping);
        }
        r.json["isomorphism"] = std::move(verdict);
        checks.add_bool("isomorphic_to_reference", iso.has_value());
    }
    r.json["checks"] = checks.json();
    r.passed = checks.passed();
    return r;
}

bool stochastic(const std::string& experiment)
{
    return experiment != "infer";
}

} // namespace

void validate(const ExperimentConfig& c)
{
    static const std::vector<std::string> known{"qubit", "spekkens", "nor", "agent", "infer", "audit"};
    if (std::find(known.begin(), known.end(), c.experiment) == known.end()) {
        throw UsageError("unknown experiment '" + c.experiment + "'");
    }
    if (stochastic(c.experiment) && !c.seed) {
        throw UsageError("experiment '" + c.experiment + "' needs --seed");
    }
    if (c.steps < 1 || c.cycles < 1 || c.max_history < 1) {
        throw UsageError("--steps, --cycles and --max-history must be positive");
    }
    if (!(c.tol > 0.0) || !(c.k > 0.0) || !(c.temperature > 0.0)) {
        throw UsageError("--tol, --k and --T must be positive");
    }
    if (c.format != "json" && c.format != "csv") {
        throw UsageError("--format must be json or csv");
    }
    if (c.experiment == "agent") {
        if (c.mode != "memoryless" && c.mode != "memory_assisted") {
            throw UsageError("--mode must be memoryless or memory_assisted");
        }
        if (c.system != "spekkens" && c.system != "quantum") {
            throw UsageError("--system must be spekkens or quantum");
        }
    }
    if (c.experiment == "infer") {
        if (c.trajectory.empty()) {
            throw UsageError("infer needs --trajectory");
        }
        if (c.format == "csv") {
            throw UsageError("infer reports are JSON only");
        }
    }
    if (c.experiment == "spekkens" && c.steps < 3) {
        throw UsageError("spekkens needs at least 3 steps");
    }
    if ((c.experiment == "qubit" || c.experiment == "nor") && c.steps < 2) {
        throw UsageError("--steps must be at least 2");
    }
}

Report run(const ExperimentConfig& config)
{
    validate(config);
    Report r;
    r.json["experiment"] = config.experiment;
    r.json["config"] = config_json(config);
    if (config.experiment == "qubit") {
        r = run_qubit(config, std::move(r));
    } else if (config.experiment == "nor") {
        r = run_nor(config, std::move(r));
    } else if (config.experiment == "spekkens") {
        r = run_spekkens(config, std::move(r));
    } else if (config.experiment == "agent") {
        r = run_agent(config, std::move(r));
    } else if (config.experiment == "audit") {
        r = run_audit(config, std::move(r));
    } else {
        r = run_infer(config, std::move(r));
    }
    r.json["passed"] = r.passed;
    return r;
}

std::string render(const Report& report, const std::string& format)
{
    if (format == "csv") {
        return report.csv;
    }
    return report.json.dump(2) + "\n";
}

} // namespace erasure
