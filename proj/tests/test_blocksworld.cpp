#include "doctest.h"

#include "gsyn/blocksworld.hpp"

#include <random>
#include <set>

using namespace gsyn;

namespace {

bw_state make(std::vector<std::vector<int>> stacks, std::vector<int> held) {
    return bw_state{std::move(stacks), std::move(held)};
}

// Walk a play through the generated arena by action names, returning the
// label sequence including the initial state.
std::vector<uint32_t> run_play(const problem_spec& spec,
                               const std::vector<std::vector<std::string>>& play,
                               std::string* final_name = nullptr) {
    const game_graph& g = spec.game;
    int s = g.initial;
    std::vector<uint32_t> labels = {g.labels[static_cast<size_t>(s)]};
    for (const auto& round : play) {
        std::vector<int> per_player;
        for (int p = 0; p < g.num_players(); ++p) {
            int a = g.action_by_name(p, round[static_cast<size_t>(p)]);
            REQUIRE(a >= 0);
            per_player.push_back(a);
        }
        s = g.step(s, g.joint_index(per_player));
        labels.push_back(g.labels[static_cast<size_t>(s)]);
    }
    if (final_name) *final_name = g.state_names[static_cast<size_t>(s)];
    return labels;
}

void check_consistent(const bw_state& s, int blocks) {
    std::set<int> seen;
    for (const auto& st : s.stacks)
        for (int b : st) CHECK(seen.insert(b).second);
    for (int b : s.held)
        if (b >= 0) CHECK(seen.insert(b).second);
    CHECK(static_cast<int>(seen.size()) == blocks);
}

}  // namespace

TEST_CASE("initial table is one stack with nothing satisfied") {
    auto s = bw_initial();
    CHECK(s.stacks == std::vector<std::vector<int>>{{0, 1, 2, 3}, {}, {}});
    CHECK(s.held == std::vector<int>{-1, -1, -1});
    CHECK(bw_state_name(s) == "B1B2B3B4_x_x_nnn");
    CHECK(bw_label(s) == 0);
}

TEST_CASE("labels match the three predicates") {
    // B1 immediately on B3
    CHECK(bw_label(make({{2, 0}, {1, 3}, {}}, {-1, -1, -1})) == 1);
    // B1 at location 2 with B2 at location 3, positions free
    CHECK(bw_label(make({{2, 3}, {0}, {1}}, {-1, -1, -1})) == 1);
    // stack of two at location 3, nothing else
    CHECK(bw_label(make({{0, 1}, {}, {2, 3}}, {-1, -1, -1})) == 2);
    // B4 immediately on B1, away from location 3
    CHECK(bw_label(make({{0, 3}, {1}, {2}}, {-1, -1, -1})) == 4);
    // B4 on B1 inside a two-stack at location 3 fires both predicates
    CHECK(bw_label(make({{1}, {2}, {0, 3}}, {-1, -1, -1})) == 6);
    // held blocks sit in no stack, so nothing fires
    CHECK(bw_label(make({{}, {}, {3}}, {0, 1, 2})) == 0);
    // three blocks at location 3 is not exactly two
    CHECK(bw_label(make({{2}, {}, {0, 1, 3}}, {-1, -1, -1})) == 0);
}

TEST_CASE("a pick lifts the owner's block from any depth") {
    auto s = bw_initial();
    auto after = bw_step(s, {1, 0, 0});  // arm 1 picks B1 from the bottom
    CHECK(after.stacks == std::vector<std::vector<int>>{{1, 2, 3}, {}, {}});
    CHECK(after.held == std::vector<int>{0, -1, -1});

    // the third arm owns both B3 and B4 and picks by name
    auto b3 = bw_step(s, {0, 0, 1});
    CHECK(b3.stacks == std::vector<std::vector<int>>{{0, 1, 3}, {}, {}});
    CHECK(b3.held == std::vector<int>{-1, -1, 2});
    auto b4 = bw_step(s, {0, 0, 2});
    CHECK(b4.stacks == std::vector<std::vector<int>>{{0, 1, 2}, {}, {}});
    CHECK(b4.held == std::vector<int>{-1, -1, 3});
}

TEST_CASE("picks resolve before places") {
    // arm 1 drops B1 on location 3 while arm 2 lifts B2 out of it
    auto s = make({{2, 3}, {}, {1}}, {0, -1, -1});
    auto after = bw_step(s, {4, 1, 0});  // place3, pick, noop
    CHECK(after.stacks == std::vector<std::vector<int>>{{2, 3}, {}, {0}});
    CHECK(after.held == std::vector<int>{-1, 1, -1});
}

TEST_CASE("simultaneous places stack by arm priority") {
    auto s = make({{2}, {}, {}}, {0, 1, 3});
    auto after = bw_step(s, {4, 4, 5});  // all place at location 3
    CHECK(after.stacks == std::vector<std::vector<int>>{{2}, {}, {0, 1, 3}});
    CHECK(after.held == std::vector<int>{-1, -1, -1});

    auto two = bw_step(make({{2, 3}, {}, {}}, {0, 1, -1}), {4, 4, 0});
    CHECK(two.stacks == std::vector<std::vector<int>>{{2, 3}, {}, {0, 1}});
    CHECK(bw_label(two) == 2);
}

TEST_CASE("ill-posed actions leave the table alone") {
    auto full_hand = make({{1, 2, 3}, {}, {}}, {0, -1, -1});
    CHECK(bw_step(full_hand, {1, 0, 0}) == full_hand);  // pick with a full hand

    auto empty_hand = bw_initial();
    CHECK(bw_step(empty_hand, {2, 0, 0}) == empty_hand);  // place with nothing held
    CHECK(bw_step(empty_hand, {0, 0, 0}) == empty_hand);  // everyone waits

    // the third arm cannot hold two blocks
    auto holding = make({{0, 1, 3}, {}, {}}, {-1, -1, 2});
    CHECK(bw_step(holding, {0, 0, 2}) == holding);
}

TEST_CASE("random play keeps every block accounted for") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = bw_initial();
        for (int step = 0; step < 50; ++step) {
            std::vector<int> acts = {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5),
                                     static_cast<int>(rng() % 6)};
            s = bw_step(s, acts);
            check_consistent(s, 4);
            CHECK(s.stacks.size() == 3);
            if (s.held[0] >= 0) CHECK(s.held[0] == 0);
            if (s.held[1] >= 0) CHECK(s.held[1] == 1);
            if (s.held[2] >= 0) CHECK((s.held[2] == 2 || s.held[2] == 3));
        }
    }
}

TEST_CASE("generated arena has the expected shape") {
    auto spec = build_blocksworld();
    CHECK(spec.game.num_players() == 3);
    CHECK(spec.game.num_actions(0) == 5);
    CHECK(spec.game.num_actions(1) == 5);
    CHECK(spec.game.num_actions(2) == 6);
    CHECK(spec.game.num_joint == 150);
    CHECK(spec.game.num_states() == 666);
    CHECK(spec.game.atoms == std::vector<std::string>{"e1", "e2", "e3"});
    CHECK(spec.game.state_names[static_cast<size_t>(spec.game.initial)] == "B1B2B3B4_x_x_nnn");
    REQUIRE(spec.goal_texts.size() == 3);
    CHECK(spec.goal_texts[0] == "F(e1 & F e2)");
    CHECK(spec.goal_texts[1] == "!e2 U e3");
    CHECK(spec.goal_texts[2] == "F(e3 & F e2)");
    REQUIRE(spec.pref_edges.size() == 3);
    CHECK(spec.pref_edges[0] == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
    CHECK(spec.pref_edges[1] == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
    CHECK(spec.pref_edges[2] == std::vector<std::pair<int, int>>{{2, 0}, {1, 0}});
}

TEST_CASE("the swap-to-location-3 play runs through the arena") {
    auto spec = build_blocksworld();
    std::string final_name;
    auto labels = run_play(spec,
                           {{"pick", "pick", "noop"},
                            {"place2", "place3", "noop"},
                            {"pick", "pick", "noop"},
                            {"place3", "place3", "noop"}},
                           &final_name);
    CHECK(labels == std::vector<uint32_t>{0, 0, 1, 0, 2});
    CHECK(final_name == "B3B4_x_B1B2_nnn");
}

TEST_CASE("the restack-at-location-1 play runs through the arena") {
    auto spec = build_blocksworld();
    std::string final_name;
    auto labels = run_play(spec,
                           {{"pick", "noop", "pickB4"},
                            {"place1", "noop", "noop"},
                            {"noop", "noop", "noop"},
                            {"noop", "noop", "place1"}},
                           &final_name);
    CHECK(labels == std::vector<uint32_t>{0, 0, 1, 1, 5});
    CHECK(final_name == "B2B3B1B4_x_x_nnn");
}

TEST_CASE("the two-arm variant is a small closed arena") {
    auto spec = build_blocksworld_small();
    CHECK(spec.game.num_players() == 2);
    CHECK(spec.game.num_states() == 10);
    CHECK(spec.game.num_joint == 9);
    CHECK(spec.game.atoms == std::vector<std::string>{"d1", "d2"});
    CHECK(spec.goal_texts == std::vector<std::string>{"F(d1 & F d2)", "!d2 U d1"});
    int d1_states = 0, d2_states = 0;
    for (uint32_t l : spec.game.labels) {
        if (l & 1) ++d1_states;
        if (l & 2) ++d2_states;
    }
    CHECK(d1_states == 4);
    CHECK(d2_states == 2);
    // totality of the generated table
    for (int t : spec.game.trans) {
        CHECK(t >= 0);
        CHECK(t < spec.game.num_states());
    }
}
