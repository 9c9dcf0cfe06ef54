#pragma once

#include "gsyn/product.hpp"

#include <utility>
#include <vector>

namespace gsyn {

// Incoming edges of every product state, grouped by target.
struct predecessor_index {
    std::vector<int> offsets;                 // size num_states + 1
    std::vector<std::pair<int, int>> edges;   // (source, joint action)
};

predecessor_index build_predecessors(const product_game& product);

// Least fixed point of "some team action sends every completion into the
// set". `action` holds the witnessing team action (mixed radix over team
// members in list order) for won states outside the target; `depth` bounds
// the number of rounds needed to reach the target.
struct attractor_result {
    std::vector<char> win;
    std::vector<int> action;
    std::vector<int> depth;
};

attractor_result sure_win_attractor(const product_game& product, const std::vector<int>& team,
                                    const std::vector<char>& target,
                                    const predecessor_index& pred);

// Single-player convenience wrapper returning just the winning set.
std::vector<char> sure_win(const product_game& product, int player, const std::vector<char>& target);

// Best rank the team can guarantee for rank_player from each state: the
// smallest k whose rank-at-most-k layer the team can surely reach.
std::vector<int> compute_values(const product_game& product, int rank_player,
                                const std::vector<int>& team, const predecessor_index& pred);

// compute_values for every player with the singleton team {player}.
std::vector<std::vector<int>> compute_all_values(const product_game& product);

// Positional strategy realizing `val` for the player: outside the target
// layer it follows the attractor, inside it keeps the stabilized class. The
// guaranteed worst stabilized rank from v is exactly val[v].
std::vector<int> msw_strategy(const product_game& product, int player, const std::vector<int>& val);

} // namespace gsyn
