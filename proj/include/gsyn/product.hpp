#pragma once

#include "gsyn/automaton.hpp"
#include "gsyn/game.hpp"
#include "gsyn/prefs.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace gsyn {

struct product_options {
    bool full_product = false;        // enumerate every (state, automata) combination
    size_t state_budget = 1'000'000;  // throw budget_error beyond this
};

// Arena annotated with one DFA per goal. Moving to a game state feeds that
// state's label to every automaton, so a product state records which goals
// already have a good prefix behind them. The satisfied set only grows
// along edges, which makes every player's class rank non-increasing.
struct product_game {
    problem_spec spec;
    std::vector<goal_automaton> automata;
    product_options options;

    int initial = 0;
    std::vector<int> state_game;   // per product state: game state id
    std::vector<int> state_q;      // flattened [v * num_goals + k]
    std::vector<uint32_t> satisfied;  // per product state: goal bitmask
    std::vector<int> trans;        // [v * num_joint + joint]

    std::vector<class_order> orders;      // per player, over classes occurring here
    std::vector<std::vector<int>> ranks;  // [player][v]
    std::vector<int> rank_max;            // per player

    int num_states() const { return static_cast<int>(state_game.size()); }
    int num_players() const { return spec.game.num_players(); }
    int num_joint() const { return spec.game.num_joint; }
    int step(int v, int joint) const { return trans[static_cast<size_t>(v) * static_cast<size_t>(num_joint()) + static_cast<size_t>(joint)]; }
    uint32_t label(int v) const { return spec.game.labels[static_cast<size_t>(state_game[static_cast<size_t>(v)])]; }
    uint32_t player_class(int player, int v) const;
    std::string describe_state(int v) const;
};

product_game build_product(const problem_spec& spec, const product_options& opts = {});

int rank_of(const product_game& product, int player, int v);

// Edges whose endpoint classes a player cannot compare. The satisfied set
// grows along every edge, so this list is expected to stay empty; it is
// exposed so tests can assert that directly.
std::vector<std::pair<int, int>> incomparable_growth_edges(const product_game& product, int player);

} // namespace gsyn
