#pragma once

#include "gsyn/game.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gsyn {

// Table snapshot: one stack per location (bottom to top) plus what each arm
// holds. Every block is either in exactly one stack or in its owner's hand.
struct bw_state {
    std::vector<std::vector<int>> stacks;
    std::vector<int> held;  // per arm: block id or -1

    bool operator==(const bw_state&) const = default;
    auto operator<=>(const bw_state&) const = default;
};

// Three arms over four blocks and three locations. Arm 1 moves B1, arm 2
// moves B2, arm 3 moves B3 and B4; everything starts stacked at location 1
// with B1 at the bottom. Per round all picks resolve before all places;
// simultaneous places at one location all land, ordered bottom to top by
// arm priority (arm 1 first). A pick may take the owner's block from any
// stack position, the blocks above settle down in order. Ill-posed actions
// (pick with a full hand, place with an empty one) leave the table alone.
bw_state bw_initial();
bw_state bw_step(const bw_state& s, const std::vector<int>& actions);

// e1: B1 directly on B3, or B1 at location 2 and B2 at location 3.
// e2: the stack at location 3 has height exactly 2.
// e3: B4 directly on B1.
uint32_t bw_label(const bw_state& s);

std::string bw_state_name(const bw_state& s);

// Full experiment: the arena above with the three goals and the cyclic
// preference profile, emitted in the standard problem format.
problem_spec build_blocksworld();

// Two arms, two blocks, two locations, place allowed only at location 2;
// goals d1 (B1 reaches location 2) before/with d2 (two blocks there). Small
// enough for exhaustive strategy search.
problem_spec build_blocksworld_small();

} // namespace gsyn
