#include <doctest.h>

#include <cmath>
#include <random>

#include "erasure/machine_io.hpp"
#include "erasure/quantum.hpp"
#include "erasure/transducer.hpp"
#include "oracles.hpp"

using namespace erasure;

namespace {

Probability q(long long n, long long d) { return Probability::exact(n, d); }

std::vector<double> stationary_values(const EpsilonTransducer& m)
{
    std::vector<double> out;
    const ProbDist pi = stationary_distribution(m);
    for (const auto& s : m.states()) {
        out.push_back(pi.prob(s).value());
    }
    return out;
}

} // namespace

TEST_CASE("qubit machine structure")
{
    const EpsilonTransducer m = build_qubit_machine();
    CHECK(m.states().size() == 4);
    CHECK(m.is_exact());
    CHECK(m.is_unifilar());
    CHECK(m.is_output_deterministic());
    const ProbDist pi = stationary_distribution(m);
    for (const auto& s : m.states()) {
        CHECK(pi.prob(s) == q(1, 4));
    }
    CHECK(statistical_complexity_exact(m) == Rational(2));
}

TEST_CASE("qubit erased information and backward probabilities")
{
    const EpsilonTransducer m = build_qubit_machine();
    const ProbDist pi = stationary_distribution(m);
    CHECK(erased_information_exact(m, pi) == Rational(3, 2));
    const JointTable j = build_joint(m, pi);
    CHECK(j.is_exact());
    const ProbDist back = conditional(j, axis::kPrevState, {{axis::kInput, qubit::kZ}, {axis::kNextState, qubit::kS0}});
    CHECK(back.prob(qubit::kS0) == q(1, 2));
    CHECK(back.prob(qubit::kSPlus) == q(1, 4));
    CHECK(back.prob(qubit::kSMinus) == q(1, 4));
    CHECK(back.prob(qubit::kS1).is_zero());

    // independent enumeration from the measurement rules
    const oracle::RawMachine raw = oracle::qubit_raw();
    CHECK(oracle::erased(raw, oracle::power_stationary(raw)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("NOR machine values")
{
    const EpsilonTransducer m = build_nor_machine();
    CHECK(m.is_unifilar());
    CHECK(erased_information_exact(m, ProbDist::uniform(m.states())) == Rational(1, 2));
    const ProbDist pi = stationary_distribution(m);
    CHECK(pi.prob("0") == q(2, 3));
    CHECK(pi.prob("1") == q(1, 3));
    // frozen: (1/2) H(2/3, 1/3)
    CHECK(erased_information(m, pi) == doctest::Approx(0.4591479170272448).epsilon(1e-12));
    const oracle::RawMachine raw = oracle::nor_raw();
    CHECK(std::abs(erased_information(m, pi) - oracle::erased(raw, oracle::power_stationary(raw))) <= 1e-10);
    // no exact value exists for the stationary prior: H(2/3, 1/3) is irrational
    CHECK_FALSE(erased_information_exact(m, pi).has_value());
}

TEST_CASE("validation of kernels")
{
    const std::vector<std::string> s{"a", "b"};
    const std::vector<std::string> x{"0"};
    const std::vector<std::string> y{"u"};
    CHECK_THROWS_AS(EpsilonTransducer(s, x, y, {{"a", "0", "u", "b", q(1, 2)}, {"b", "0", "u", "a", q(1, 1)}}),
                    ValidationError);
    CHECK_THROWS_AS(EpsilonTransducer(s, x, y, {{"a", "0", "u", "b", q(1, 1)}}), ValidationError);
    CHECK_THROWS(EpsilonTransducer(s, x, y, {{"a", "0", "u", "c", q(1, 1)}, {"b", "0", "u", "a", q(1, 1)}}));
    CHECK_THROWS_AS(EpsilonTransducer(s, x, y,
                                      {{"a", "0", "u", "b", q(1, 2)},
                                       {"a", "0", "u", "b", q(1, 2)},
                                       {"b", "0", "u", "a", q(1, 1)}}),
                    ValidationError);
}

TEST_CASE("reducible chain is reported")
{
    const EpsilonTransducer m({"a", "b"}, {"0"}, {"u"},
                              {{"a", "0", "u", "a", q(1, 1)}, {"b", "0", "u", "a", q(1, 1)}});
    try {
        (void)stationary_distribution(m);
        FAIL("expected ReducibleChainError");
    } catch (const ReducibleChainError& e) {
        CHECK(e.states() == std::vector<std::string>{"b"});
    }
}

TEST_CASE("float kernels use power iteration")
{
    const EpsilonTransducer m({"a", "b"}, {"0"}, {"u", "v"},
                              {{"a", "0", "u", "a", Probability::approx(0.9)},
                               {"a", "0", "v", "b", Probability::approx(0.1)},
                               {"b", "0", "u", "a", Probability::approx(0.5)},
                               {"b", "0", "v", "b", Probability::approx(0.5)}});
    CHECK_FALSE(m.is_exact());
    const ProbDist pi = stationary_distribution(m);
    CHECK(pi.prob("a").value() == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("appendix identity assumptions")
{
    // non-unifilar: same (s, x, y) leads to two states
    const EpsilonTransducer nu({"a", "b"}, {"0"}, {"u"},
                               {{"a", "0", "u", "a", q(1, 2)},
                                {"a", "0", "u", "b", q(1, 2)},
                                {"b", "0", "u", "a", q(1, 1)}});
    CHECK_FALSE(nu.is_unifilar());
    CHECK_THROWS_AS(verify_appendix_identity(nu, stationary_distribution(nu)), AssumptionError);

    const EpsilonTransducer q4 = build_qubit_machine();
    // prior is not the stationary one
    CHECK_THROWS_AS(verify_appendix_identity(q4, ProbDist({{"s0", q(1, 2)}, {"s1", q(1, 2)}})), AssumptionError);
}

TEST_CASE("appendix identity: deterministic outputs satisfy the literal form")
{
    const EpsilonTransducer nor = build_nor_machine();
    const AppendixReport r = verify_appendix_identity(nor, stationary_distribution(nor));
    CHECK(r.residual <= 1e-10);
    CHECK(r.output_branching == doctest::Approx(0.0));

    std::mt19937_64 gen(99);
    for (int i = 0; i < 50; ++i) {
        const EpsilonTransducer m = oracle::to_machine(oracle::random_machine(gen, 6, true));
        const AppendixReport a = verify_appendix_identity(m, stationary_distribution(m));
        CHECK(a.residual <= 1e-10);
    }
}

TEST_CASE("appendix identity with the branching term holds for stochastic machines")
{
    const EpsilonTransducer qm = build_qubit_machine();
    const AppendixReport r = verify_appendix_identity(qm, stationary_distribution(qm));
    CHECK(r.lhs == doctest::Approx(-1.0));
    CHECK(r.rhs == doctest::Approx(-1.5));
    CHECK(r.output_branching == doctest::Approx(0.5));
    CHECK(r.corrected_residual <= 1e-10);

    std::mt19937_64 gen(5);
    for (int i = 0; i < 100; ++i) {
        const oracle::RawMachine raw = oracle::random_machine(gen, 6, false);
        const EpsilonTransducer m = oracle::to_machine(raw);
        const AppendixReport a = verify_appendix_identity(m, stationary_distribution(m));
        CHECK(a.corrected_residual <= 1e-10);

        // oracle: H(X,Y,S') - H(X,Y_prev,S) from brute-force enumeration.
        // Y_prev is a function of S, so H(X,Y_prev,S) = H(X,S).
        const std::vector<double> pi = oracle::power_stationary(raw);
        const oracle::Joint jo = oracle::enumerate_joint(raw, pi);
        const double lhs = oracle::H(oracle::project(jo, {1, 2, 3})) - oracle::H(oracle::project(jo, {0, 1}));
        CHECK(a.lhs == doctest::Approx(lhs).epsilon(1e-9));
        CHECK(erased_information(m, stationary_distribution(m)) >= 0.0);
        CHECK(erased_information(m, stationary_distribution(m)) ==
              doctest::Approx(oracle::erased(raw, pi)).epsilon(1e-9));
    }
}

TEST_CASE("stationary distribution matches power-iteration oracle")
{
    std::mt19937_64 gen(17);
    for (int i = 0; i < 60; ++i) {
        const oracle::RawMachine raw = oracle::random_machine(gen, 6, i % 3 == 0);
        const std::vector<double> lib = stationary_values(oracle::to_machine(raw));
        const std::vector<double> ref = oracle::power_stationary(raw);
        for (std::size_t s = 0; s < lib.size(); ++s) {
            CHECK(lib[s] == doctest::Approx(ref[s]).epsilon(1e-10));
        }
    }
}

TEST_CASE("isomorphism search")
{
    const EpsilonTransducer a = build_qubit_machine();
    auto entries = a.entries();
    std::vector<std::string> shuffled{"s-", "s+", "s1", "s0"};
    const EpsilonTransducer b(shuffled, a.inputs(), a.outputs(), entries);
    const auto iso = find_isomorphism(a, b, 1e-12);
    REQUIRE(iso.has_value());
    for (std::size_t i = 0; i < iso->size(); ++i) {
        CHECK(a.states()[(*iso)[i]] == b.states()[i]);
    }
    CHECK_FALSE(find_isomorphism(a, build_nor_machine(), 0.1).has_value());
}

TEST_CASE("machine JSON round trip")
{
    const EpsilonTransducer a = build_qubit_machine();
    const auto j = machine_to_json(a);
    const EpsilonTransducer b = machine_from_json(j);
    CHECK(b.is_exact());
    CHECK(find_isomorphism(a, b, 0.0).has_value());
    CHECK(machine_to_json(b) == j);

    auto bad = j;
    bad["kernel"][0]["p"] = "1/0";
    CHECK_THROWS(machine_from_json(bad));
    auto missing = j;
    missing.erase("states");
    CHECK_THROWS(machine_from_json(missing));
}
