#include <doctest.h>

#include "erasure/quantum.hpp"
#include "erasure/spekkens.hpp"

using namespace erasure;
using namespace erasure::spekkens;

TEST_CASE("epistemic states")
{
    CHECK(EpistemicState::from_side(Side::left).support() == std::set<int>{1, 2});
    CHECK(EpistemicState::from_side(Side::top).support() == std::set<int>{1, 3});
    CHECK(EpistemicState::unknown().support().size() == 4);
    CHECK_FALSE(EpistemicState::unknown().is_maximal_knowledge());
    // knowing the cell exactly is forbidden, as is a diagonal pair
    CHECK_THROWS(EpistemicState::of({1}));
    CHECK_THROWS(EpistemicState::of({1, 4}));
    CHECK_THROWS(EpistemicState::of({1, 2, 3}));
}

TEST_CASE("partitions and regions")
{
    CHECK(accessible_region(1, Partition::vertical) == std::array<int, 2>{1, 2});
    CHECK(accessible_region(4, Partition::horizontal) == std::array<int, 2>{2, 4});
    CHECK_THROWS_AS(accessible_region(1, Partition::none), ProtocolError);
    CHECK_THROWS(accessible_region(5, Partition::vertical));
    SpekkensBox box{3, Partition::vertical};
    CHECK_THROWS_AS(set_partition(box, Partition::none), ProtocolError);
    box = set_partition(box, Partition::horizontal);
    CHECK(box.ontic == 3);
    CHECK(observe(box) == Side::top);
    Rng rng(1);
    CHECK_THROWS_AS(evolve(SpekkensBox{1, Partition::none}, rng), ProtocolError);
}

TEST_CASE("evolution stays behind the partition")
{
    Rng rng(4);
    SpekkensBox box{2, Partition::vertical};
    int seen_top = 0;
    for (int i = 0; i < 1000; ++i) {
        box = evolve(box, rng);
        CHECK((box.ontic == 1 || box.ontic == 2));
        seen_top += box.ontic == 1 ? 1 : 0;
    }
    CHECK(seen_top > 400);
    CHECK(seen_top < 600);
}

TEST_CASE("retrodiction")
{
    const auto l = EpistemicState::from_side(Side::left);
    const auto t = EpistemicState::from_side(Side::top);
    const auto r = retrodict(l, t);
    CHECK(r.kind == RetrodictionKind::cell);
    CHECK(r.cell == 1);
    CHECK(retrodict(l, l).kind == RetrodictionKind::underdetermined);
    CHECK_THROWS(retrodict(l, EpistemicState::from_side(Side::right)));
    CHECK_THROWS(retrodict(EpistemicState::unknown(), l));
}

TEST_CASE("protocol run")
{
    const ProtocolRun run = run_protocol(100000, 3, true);
    CHECK(run.steps == 100000);
    CHECK(run.trajectory.steps.size() == 100000);
    CHECK_FALSE(run.trajectory.initial_state.has_value());
    CHECK(run.same_basis_repeats == run.same_basis_steps);
    CHECK(static_cast<double>(run.orientation_changes) / 100000.0 == doctest::Approx(0.5).epsilon(0.02));
    for (std::size_t i = 0; i < run.trajectory.steps.size(); ++i) {
        const Step& s = run.trajectory.steps[i];
        CHECK(run.trajectory.s_label(s) == qubit::state_for(run.trajectory.x_label(s), run.trajectory.y_label(s)));
        // the recorded outcome is the side holding the ontic cell
        const bool z = run.trajectory.x_label(s) == qubit::kZ;
        const int cell = run.cells[i];
        const bool plus = z ? (cell == 1 || cell == 2) : (cell == 1 || cell == 3);
        CHECK(plus == (run.trajectory.y_label(s) == qubit::kPlus));
    }
    const ProtocolRun bare = run_protocol(1000, 3, false);
    CHECK(bare.trajectory.steps.empty());
    CHECK(bare.final_box == run_protocol(1000, 3, true).final_box);
    CHECK_THROWS(run_protocol(0, 1, false));
}

TEST_CASE("retrodicted cells match the simulated ontic state")
{
    const ProtocolRun run = run_protocol(20000, 8, true);
    const auto& steps = run.trajectory.steps;
    auto known = [&](const Step& s) {
        const bool z = run.trajectory.x_label(s) == qubit::kZ;
        const bool plus = run.trajectory.y_label(s) == qubit::kPlus;
        return EpistemicState::from_side(z ? (plus ? Side::left : Side::right) : (plus ? Side::top : Side::bottom));
    };
    int checked = 0;
    for (std::size_t i = 1; i < steps.size(); ++i) {
        const auto r = retrodict(known(steps[i - 1]), known(steps[i]));
        if (r.kind == RetrodictionKind::cell) {
            CHECK(r.cell == run.cells[i - 1]);
            ++checked;
        }
    }
    CHECK(checked > 8000);
}
