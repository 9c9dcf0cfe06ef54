#include "doctest.h"

#include "gsyn/blocksworld.hpp"
#include "gsyn/oracle.hpp"
#include "gsyn/product.hpp"
#include "gsyn/values.hpp"

using namespace gsyn;

namespace {

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

// Neither pure action of the row player reaches p against every column reply.
const char* kPennies = R"(players
  P1: a b
  P2: c d
atoms
  p
states
  s0:
  s1: p
init
  s0
transitions
  s0 (a,c) s1
  s0 (a,d) s0
  s0 (b,c) s0
  s0 (b,d) s1
  s1 (a,c) s1
  s1 (a,d) s1
  s1 (b,c) s1
  s1 (b,d) s1
goals
  1: F p
prefs
)";

std::vector<char> state_set(const product_game& product, std::initializer_list<int> states) {
    std::vector<char> s(static_cast<size_t>(product.num_states()), 0);
    for (int v : states) s[static_cast<size_t>(v)] = 1;
    return s;
}

}  // namespace

TEST_CASE("attractor walks back along a forced chain") {
    auto product = build_product(load_problem(kChain));
    REQUIRE(product.num_states() == 3);
    auto pred = build_predecessors(product);
    auto res = sure_win_attractor(product, {0}, state_set(product, {2}), pred);
    CHECK(res.win == std::vector<char>{1, 1, 1});
    CHECK(res.depth[2] == 0);
    CHECK(res.depth[1] == 1);
    CHECK(res.depth[0] == 2);
    CHECK(res.action[1] == 0);
    CHECK(res.action[0] == 0);
}

TEST_CASE("an opponent who can always divert blocks the attractor") {
    auto product = build_product(load_problem(kPennies));
    REQUIRE(product.num_states() == 2);
    auto target = state_set(product, {1});
    CHECK(sure_win(product, 0, target) == std::vector<char>{0, 1});
    CHECK(sure_win(product, 1, target) == std::vector<char>{0, 1});
}

TEST_CASE("values on the forced chain") {
    auto product = build_product(load_problem(kChain));
    auto val = compute_all_values(product);
    int v0 = product.initial;
    CHECK(val[0][static_cast<size_t>(v0)] == 0);
    CHECK(val[1][static_cast<size_t>(v0)] == 2);
    // the shape of the product: v0 -> v1 -> v2 under (a,c)
    int j = 0;
    int v1 = product.step(v0, j);
    int v2 = product.step(v1, j);
    CHECK(val[0][static_cast<size_t>(v1)] == 0);
    CHECK(val[1][static_cast<size_t>(v1)] == 1);
    CHECK(val[0][static_cast<size_t>(v2)] == 0);
    CHECK(val[1][static_cast<size_t>(v2)] == 0);
}

TEST_CASE("values where nobody can force progress") {
    auto product = build_product(load_problem(kPennies));
    auto val = compute_all_values(product);
    CHECK(val[0][static_cast<size_t>(product.initial)] == 1);
    CHECK(val[1][static_cast<size_t>(product.initial)] == 1);
}

TEST_CASE("value never exceeds the state's own rank") {
    for (const problem_spec& spec :
         {load_problem(kChain), load_problem(kPennies), build_blocksworld_small()}) {
        auto product = build_product(spec);
        auto val = compute_all_values(product);
        for (int p = 0; p < product.num_players(); ++p) {
            for (int v = 0; v < product.num_states(); ++v) {
                CHECK(val[static_cast<size_t>(p)][static_cast<size_t>(v)] <=
                      product.ranks[static_cast<size_t>(p)][static_cast<size_t>(v)]);
                CHECK(val[static_cast<size_t>(p)][static_cast<size_t>(v)] >= 0);
            }
        }
    }
}

TEST_CASE("sure_win is monotone and idempotent") {
    auto product = build_product(build_blocksworld_small());
    int n = product.num_states();
    for (int p = 0; p < product.num_players(); ++p) {
        std::vector<char> small(static_cast<size_t>(n), 0);
        std::vector<char> large(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (product.satisfied[static_cast<size_t>(v)] == 3) small[static_cast<size_t>(v)] = 1;
            if (product.satisfied[static_cast<size_t>(v)] != 0) large[static_cast<size_t>(v)] = 1;
        }
        auto win_small = sure_win(product, p, small);
        auto win_large = sure_win(product, p, large);
        for (int v = 0; v < n; ++v) {
            if (win_small[static_cast<size_t>(v)]) CHECK(win_large[static_cast<size_t>(v)]);
        }
        CHECK(sure_win(product, p, win_small) == win_small);
        CHECK(sure_win(product, p, win_large) == win_large);
    }
}

TEST_CASE("the value strategy guarantees exactly the computed value") {
    for (const problem_spec& spec :
         {load_problem(kChain), load_problem(kPennies), build_blocksworld_small()}) {
        auto product = build_product(spec);
        auto val = compute_all_values(product);
        for (int p = 0; p < product.num_players(); ++p) {
            auto strat = msw_strategy(product, p, val[static_cast<size_t>(p)]);
            for (int v = 0; v < product.num_states(); ++v) {
                CHECK(max_rank(product, p, strat, v) ==
                      val[static_cast<size_t>(p)][static_cast<size_t>(v)]);
            }
        }
    }
}

TEST_CASE("whole state space as target wins everywhere immediately") {
    auto product = build_product(load_problem(kPennies));
    std::vector<char> all(static_cast<size_t>(product.num_states()), 1);
    auto pred = build_predecessors(product);
    auto res = sure_win_attractor(product, {0}, all, pred);
    for (int v = 0; v < product.num_states(); ++v) {
        CHECK(res.win[static_cast<size_t>(v)]);
        CHECK(res.depth[static_cast<size_t>(v)] == 0);
    }
}
