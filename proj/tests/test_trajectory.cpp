#include <doctest.h>

#include <sstream>

#include "erasure/quantum.hpp"
#include "erasure/reconstruction.hpp"
#include "erasure/trajectory.hpp"

using namespace erasure;

namespace {

EpsilonTransducer coin()
{
    return EpsilonTransducer({"c"}, {"flip"}, {"h", "t"},
                             {{"c", "flip", "h", "c", Probability::exact(1, 2)},
                              {"c", "flip", "t", "c", Probability::exact(1, 2)}});
}

Trajectory parse(const std::string& text)
{
    std::istringstream is(text);
    return read_csv(is);
}

} // namespace

TEST_CASE("simulation is reproducible from the seed")
{
    const EpsilonTransducer m = build_qubit_machine();
    const Trajectory a = simulate(m, qubit::kS0, 5000, 3);
    const Trajectory b = simulate(m, qubit::kS0, 5000, 3);
    const Trajectory c = simulate(m, qubit::kS0, 5000, 4);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.steps.size() == 5000);
    CHECK(a.initial_state.has_value());
}

TEST_CASE("simulated qubit trajectory respects the machine")
{
    const EpsilonTransducer m = build_qubit_machine();
    const Trajectory t = simulate(m, qubit::kS0, 20000, 8);
    for (const Step& s : t.steps) {
        CHECK(t.s_label(s) == qubit::state_for(t.x_label(s), t.y_label(s)));
    }
    CHECK(state_change_fraction(t) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("prescribed inputs")
{
    const EpsilonTransducer m = build_nor_machine();
    const Trajectory t = simulate_with_inputs(m, "0", {"0", "0", "1", "0"}, 1);
    // y = NOR(x, y_prev) from y_prev = 0
    std::string ys;
    for (const Step& s : t.steps) {
        ys += t.y_label(s);
    }
    CHECK(ys == "1001");
    CHECK_THROWS(simulate_with_inputs(m, "0", {"2"}, 1));
    CHECK_THROWS(simulate(m, "7", 10, 1));
}

TEST_CASE("short trajectories are rejected by the estimator")
{
    const EpsilonTransducer m = build_qubit_machine();
    CHECK_THROWS_AS(estimate_erased_information(simulate(m, qubit::kS0, 1, 1), m), std::invalid_argument);
}

TEST_CASE("CSV round trip")
{
    const EpsilonTransducer m = build_qubit_machine();
    const Trajectory t = simulate(m, qubit::kS0, 1000, 12);
    std::ostringstream os;
    write_csv(os, t);
    const Trajectory back = parse(os.str());
    REQUIRE(back.steps.size() == t.steps.size());
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        CHECK(back.x_label(back.steps[i]) == t.x_label(t.steps[i]));
        CHECK(back.y_label(back.steps[i]) == t.y_label(t.steps[i]));
        CHECK(back.s_label(back.steps[i]) == t.s_label(t.steps[i]));
    }
    std::ostringstream again;
    write_csv(again, back);
    CHECK(again.str() == os.str());
}

TEST_CASE("malformed CSV rows report their line")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            (void)parse(text);
        } catch (const CsvError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("") == 1);
    CHECK(line_of("a,b,c\n") == 1);
    CHECK(line_of("t,x,y,s\n1,z,+1,s0\n2,z,+1\n") == 3);
    CHECK(line_of("t,x,y,s\n1,z,+1,s0\nxx,z,+1,s0\n") == 3);
    CHECK(line_of("t,x,y,s\n2,z,+1,s0\n1,z,+1,s0\n") == 3);
    CHECK(line_of("t,x,y,s\n1,z,+1,s0\n2,,,s0\n") == 3);
    CHECK(line_of("t,x,y,s\n") > 0);
    CHECK(line_of("t,x,y,s\n0,,,s0\n1,z,+1,s0\n") == 0);
}

TEST_CASE("word frequencies")
{
    const Trajectory t = parse("t,x,y,s\n1,z,+1,s0\n2,z,+1,s0\n3,x,-1,s-\n");
    const auto w1 = word_frequencies(t, 1);
    CHECK(w1.at("z:+1") == doctest::Approx(2.0 / 3.0));
    const auto w2 = word_frequencies(t, 2);
    CHECK(w2.size() == 2);
    CHECK(max_frequency_gap(w1, {{"z:+1", 0.5}}) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS(word_frequencies(t, 4));
}

TEST_CASE("reconstruction recovers the qubit machine")
{
    const EpsilonTransducer m = build_qubit_machine();
    const Trajectory t = simulate(m, qubit::kS0, 200000, 101);
    const EpsilonTransducer r = reconstruct_causal_states(HistoryTable::from_trajectory(t, 2), 0.05);
    CHECK(r.states().size() == 4);
    CHECK(r.is_unifilar());
    CHECK(find_isomorphism(m, r, 0.05).has_value());
}

TEST_CASE("reconstruction recovers the NOR machine")
{
    const EpsilonTransducer m = build_nor_machine();
    const Trajectory t = simulate(m, "0", 200000, 102);
    const EpsilonTransducer r = reconstruct_causal_states(HistoryTable::from_trajectory(t, 2), 0.05);
    CHECK(r.states().size() == 2);
    CHECK(find_isomorphism(m, r, 0.05).has_value());
}

TEST_CASE("an i.i.d. coin has a single causal state")
{
    const Trajectory t = simulate(coin(), "c", 100000, 103);
    for (std::size_t L = 1; L <= 3; ++L) {
        const EpsilonTransducer r = reconstruct_causal_states(HistoryTable::from_trajectory(t, L), 0.05);
        CHECK(r.states().size() == 1);
        CHECK(statistical_complexity(r) == 0.0);
    }
}

TEST_CASE("reconstruction error paths")
{
    const Trajectory t = simulate(build_qubit_machine(), qubit::kS0, 30, 5);
    CHECK_THROWS_AS(reconstruct_causal_states(HistoryTable::from_trajectory(t, 3), 0.05), ReconstructionError);
    CHECK_THROWS(HistoryTable::from_trajectory(t, 0));
    CHECK_THROWS(reconstruct_causal_states(HistoryTable::from_trajectory(t, 1), 0.0));
}
