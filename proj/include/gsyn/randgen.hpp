#pragma once

#include "gsyn/game.hpp"
#include "gsyn/product.hpp"

#include <random>
#include <utility>
#include <vector>

namespace gsyn {

// Sizes keep exhaustive strategy search affordable: instances are redrawn
// until the annotated arena stays under max_product_states.
struct random_instance_options {
    int min_players = 2;
    int max_players = 3;
    int max_actions = 2;
    int max_states = 5;
    int max_goals = 2;
    int max_atoms = 2;
    int max_product_states = 12;
};

problem_spec random_problem(std::mt19937_64& rng, const random_instance_options& opts = {});

// Strict edges (better, worse) drawn uniformly; cycles are allowed and
// collapse to equivalences downstream.
std::vector<std::pair<int, int>> random_preference_edges(std::mt19937_64& rng, int m);

std::vector<int> random_strategy(std::mt19937_64& rng, const product_game& product, int player);

} // namespace gsyn
