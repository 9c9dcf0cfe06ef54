#include "doctest.h"

#include "gsyn/blocksworld.hpp"
#include "gsyn/errors.hpp"
#include "gsyn/product.hpp"

using namespace gsyn;

namespace {

const char* kSelfLoop = R"(players
  P1: a
atoms
  p
states
  s0: p
init
  s0
transitions
  s0 (a) s0
goals
  1: F p
prefs
)";

const char* kChain = R"(players
  P1: a b
  P2: c
atoms
  p q
states
  s0:
  s1: p
  s2: p q
init
  s0
transitions
  s0 (a,c) s1
  s0 (b,c) s0
  s1 (a,c) s2
  s1 (b,c) s1
  s2 (a,c) s2
  s2 (b,c) s2
goals
  1: F p
  2: F(p & q)
prefs
  player 1: 1 > 2
  player 2: 2 > 1
)";

}  // namespace

TEST_CASE("initial state consumes the initial label") {
    auto product = build_product(load_problem(kSelfLoop));
    CHECK(product.num_states() == 1);
    CHECK(product.initial == 0);
    CHECK(product.satisfied[0] == 1);
    CHECK(product.ranks[0][0] == 0);
    CHECK(product.rank_max[0] == 0);
    CHECK(product.step(0, 0) == 0);
}

TEST_CASE("satisfied set grows along the chain") {
    auto product = build_product(load_problem(kChain));
    int v0 = product.initial;
    CHECK(product.satisfied[static_cast<size_t>(v0)] == 0);

    int j_ac = product.spec.game.joint_index({0, 0});
    int v1 = product.step(v0, j_ac);
    CHECK(product.spec.game.state_names[static_cast<size_t>(product.state_game[static_cast<size_t>(v1)])] == "s1");
    CHECK(product.satisfied[static_cast<size_t>(v1)] == 1);

    int v2 = product.step(v1, j_ac);
    CHECK(product.satisfied[static_cast<size_t>(v2)] == 3);
    CHECK(product.ranks[0][static_cast<size_t>(v2)] == 0);
    CHECK(product.ranks[1][static_cast<size_t>(v2)] == 0);
}

TEST_CASE("ranks never increase along edges") {
    for (const problem_spec& spec : {load_problem(kChain), build_blocksworld_small()}) {
        auto product = build_product(spec);
        for (int v = 0; v < product.num_states(); ++v) {
            for (int j = 0; j < product.num_joint(); ++j) {
                int u = product.step(v, j);
                for (int p = 0; p < product.num_players(); ++p) {
                    CHECK(product.ranks[static_cast<size_t>(p)][static_cast<size_t>(u)] <=
                          product.ranks[static_cast<size_t>(p)][static_cast<size_t>(v)]);
                }
            }
        }
    }
}

TEST_CASE("growth edges stay comparable for every player") {
    for (const problem_spec& spec : {load_problem(kChain), build_blocksworld_small()}) {
        auto product = build_product(spec);
        for (int p = 0; p < product.num_players(); ++p) {
            CHECK(incomparable_growth_edges(product, p).empty());
        }
    }
}

TEST_CASE("player classes are mp images of the satisfied set") {
    auto spec = load_problem(kChain);
    auto product = build_product(spec);
    for (int v = 0; v < product.num_states(); ++v) {
        for (int p = 0; p < product.num_players(); ++p) {
            CHECK(product.player_class(p, v) ==
                  mp_set(product.spec.prefs[static_cast<size_t>(p)], product.satisfied[static_cast<size_t>(v)]));
        }
    }
}

TEST_CASE("full product enumerates every automaton combination") {
    auto spec = load_problem(kChain);
    product_options opts;
    opts.full_product = true;
    auto full = build_product(spec, opts);
    // both goal automata have two states here
    CHECK(full.num_states() == 3 * 2 * 2);

    auto reachable = build_product(spec);
    CHECK(reachable.num_states() < full.num_states());
    // shared states agree on their annotations
    for (int v = 0; v < reachable.num_states(); ++v) {
        int g = reachable.state_game[static_cast<size_t>(v)];
        for (int u = 0; u < full.num_states(); ++u) {
            if (full.state_game[static_cast<size_t>(u)] != g) continue;
            bool same = true;
            for (int k = 0; k < reachable.spec.num_goals(); ++k) {
                if (full.state_q[static_cast<size_t>(u) * 2 + static_cast<size_t>(k)] !=
                    reachable.state_q[static_cast<size_t>(v) * 2 + static_cast<size_t>(k)])
                    same = false;
            }
            if (same) CHECK(full.satisfied[static_cast<size_t>(u)] == reachable.satisfied[static_cast<size_t>(v)]);
        }
    }
}

TEST_CASE("state budget is enforced") {
    product_options opts;
    opts.state_budget = 2;
    CHECK_THROWS_AS(build_product(build_blocksworld_small(), opts), budget_error);
}

TEST_CASE("state description names the game state") {
    auto product = build_product(load_problem(kChain));
    std::string d = product.describe_state(product.initial);
    CHECK(d.find("s0") != std::string::npos);
}

TEST_CASE("rank_of validates its arguments") {
    auto product = build_product(load_problem(kSelfLoop));
    CHECK(rank_of(product, 0, 0) == 0);
    CHECK_THROWS_AS(rank_of(product, 1, 0), input_error);
    CHECK_THROWS_AS(rank_of(product, 0, 5), input_error);
}
