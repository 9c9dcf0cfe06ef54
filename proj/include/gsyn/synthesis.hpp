#pragma once

#include "gsyn/product.hpp"
#include "gsyn/values.hpp"

#include <vector>

namespace gsyn {

// One admissible move: a coalition from the allowed list together with the
// actions its members commit to, in member order.
struct coalition_action {
    int coalition = 0;
    std::vector<int> actions;
};

struct discard_record {
    int state = 0;
    coalition_action cand;
};

struct level_report {
    std::vector<int> joined;
    std::vector<discard_record> discarded;
};

struct synthesis_options {
    // Allowed coalitions (each must contain player 0 first). Empty means
    // feasible_coalitions(N).
    std::vector<std::vector<int>> coalitions;
};

// Per-state plan recorded when the state joined the construction: the
// candidates that survived, each with its per-follower guarantee and the
// follower replies that realize it (-1 for coalition members).
struct state_plan {
    int level = -1;
    std::vector<coalition_action> admitted;
    std::vector<std::vector<int>> cand_value;
    std::vector<std::vector<int>> cand_argmin;
};

struct level_result {
    bool success = false;
    long long candidate_evaluations = 0;
    std::vector<int> level_of;            // join round per state, -1 outside
    std::vector<std::vector<int>> coalv;  // [player][state]; row 0 equals val[0]
    std::vector<state_plan> plans;
    std::vector<level_report> rounds;
    std::vector<std::vector<int>> coalitions;  // the allowed list in effect
};

// One pass of the construction for a fixed target rank of player 0:
// grow the rank-at-most-level layer backwards, keeping only coalition
// actions that force the previous set and stay rational for the partner.
level_result synthesize_level(const product_game& product,
                              const std::vector<std::vector<int>>& val, int level,
                              const synthesis_options& opts = {});

struct admissible_solution {
    int l_star = 0;
    std::vector<std::vector<int>> val;
    level_result plan;
    std::vector<std::vector<int>> interior;  // per player: positional strategy
    long long candidate_evaluations = 0;     // across all attempted levels

    const state_plan& plan_at(int v) const;
    // Chosen candidate at an exterior state: the first admitted one.
    const coalition_action& choice(int v) const;
    bool exterior(int v) const { return plan.level_of[static_cast<size_t>(v)] > 0; }
    // Coalition members acting at v (player 0 alone when v is interior).
    std::vector<int> coalition_members(const product_game& product, int v) const;
    // Full policy: dictated action for members of the chosen coalition,
    // recorded reply for followers, value-preserving play inside the layer.
    int respond(const product_game& product, int v, int player) const;
};

// Smallest target rank whose construction reaches the initial state,
// packaged with the policies the simulator needs.
admissible_solution synthesize(const product_game& product,
                               const std::vector<std::vector<int>>& val,
                               const synthesis_options& opts = {});

// Recorded reply of an uncommitted follower against an admitted candidate.
// Throws input_error for queries outside the recorded table.
int follower_action(const admissible_solution& sol, int v, const std::vector<int>& coalition,
                    const std::vector<int>& coalition_actions, int follower);

} // namespace gsyn
