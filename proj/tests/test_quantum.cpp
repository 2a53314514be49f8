#include <doctest.h>

#include <cmath>

#include "erasure/quantum.hpp"

using namespace erasure;

TEST_CASE("density matrix validation")
{
    using E = DensityMatrix2::Entries;
    CHECK_THROWS_AS(DensityMatrix2(E{{{1.0, 0.0}, {0.0, 1.0}}}), ValidationError);
    CHECK_THROWS_AS(DensityMatrix2(E{{{0.5, Complex(0.0, 0.1)}, {Complex(0.0, 0.1), 0.5}}}), ValidationError);
    CHECK_THROWS_AS(DensityMatrix2(E{{{1.5, 0.0}, {0.0, -0.5}}}), ValidationError);
    CHECK_THROWS_AS(DensityMatrix2::pure(0.0, 0.0), ValidationError);
    const DensityMatrix2 plus = DensityMatrix2::pure(1.0, 1.0);
    CHECK(plus(0, 1).real() == doctest::Approx(0.5));
    CHECK(plus.purity() == doctest::Approx(1.0));
    CHECK(DensityMatrix2::maximally_mixed().purity() == doctest::Approx(0.5));
}

TEST_CASE("von Neumann entropy")
{
    CHECK(von_neumann_entropy(DensityMatrix2::pure(1.0, 0.0)) == 0.0);
    CHECK(von_neumann_entropy(DensityMatrix2::maximally_mixed()) == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(DensityMatrix2::diagonal(0.25, 0.75)) ==
          doctest::Approx(-(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75))));
    // basis independence: |+><+| is pure
    CHECK(von_neumann_entropy(DensityMatrix2::pure(1.0, -1.0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("non-selective measurement")
{
    const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
    CHECK(measure_nonselective(mixed, MeasurementBasis::z()).approx_equal(mixed));
    CHECK(measure_nonselective(mixed, MeasurementBasis::x()).approx_equal(mixed));
    // measuring |0> in x dephases to I/2
    const DensityMatrix2 out = measure_nonselective(DensityMatrix2::pure(1.0, 0.0), MeasurementBasis::x());
    CHECK(out.approx_equal(mixed));
    CHECK(von_neumann_entropy(out) == doctest::Approx(1.0));
}

TEST_CASE("selective measurement")
{
    const DensityMatrix2 zero = DensityMatrix2::pure(1.0, 0.0);
    // same basis always repeats
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = measure_selective(zero, MeasurementBasis::z(), seed);
        CHECK(r.outcome == 1);
        CHECK(r.state.approx_equal(zero));
    }
    // other basis is a fair coin and leaves a pure state
    Rng rng(9);
    int plus = 0;
    constexpr int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto r = measure_selective(zero, MeasurementBasis::x(), rng);
        plus += r.outcome == 1 ? 1 : 0;
        CHECK(r.state.purity() == doctest::Approx(1.0));
    }
    CHECK(static_cast<double>(plus) / n == doctest::Approx(0.5).epsilon(0.03));
    CHECK_THROWS(MeasurementBasis::from_label("y"));
}

TEST_CASE("Landauer bound")
{
    const double t = 1.0 / std::log(2.0);
    CHECK(landauer_lower_bound(-1.0, t).kt_ln2_units == doctest::Approx(1.0));
    CHECK(landauer_lower_bound(0.0, t).kt_ln2_units == 0.0);
    CHECK(landauer_lower_bound(1.0, t).kt_ln2_units == doctest::Approx(-1.0));
    const HeatBound si = landauer_lower_bound(-1.0, 300.0, kBoltzmannSI);
    CHECK(si.joules == doctest::Approx(kBoltzmannSI * 300.0 * std::log(2.0)));
    CHECK_THROWS_AS(landauer_lower_bound(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(landauer_lower_bound(-1.0, -5.0), std::domain_error);
}

TEST_CASE("information-bearing form of the bound")
{
    const auto rev = check_information_bound(box_erasure_scenario(true));
    CHECK(rev.satisfied);
    CHECK(rev.saturated);
    CHECK(rev.bound == doctest::Approx(std::log(2.0)));
    const auto irr = check_information_bound(box_erasure_scenario(false));
    CHECK(irr.satisfied);
    CHECK_FALSE(irr.saturated);
    LogicalOperationAudit cheat = box_erasure_scenario(true);
    cheat.environment_entropy_change = 0.1;
    CHECK_FALSE(check_information_bound(cheat).satisfied);
}

TEST_CASE("selective run keeps the system pure")
{
    const QuantumRun run = simulate_quantum(10000, 77);
    REQUIRE(run.entropy_after.size() == 10000);
    for (std::size_t i = 0; i < run.entropy_after.size(); ++i) {
        CHECK(std::abs(run.entropy_after[i] - run.entropy_before[i]) <= 1e-12);
    }
    const EpsilonTransducer m = build_qubit_machine();
    for (const Step& s : run.trajectory.steps) {
        CHECK(run.trajectory.s_label(s) == qubit::state_for(run.trajectory.x_label(s), run.trajectory.y_label(s)));
    }
    CHECK(simulate_quantum(500, 5).trajectory == simulate_quantum(500, 5).trajectory);
}
