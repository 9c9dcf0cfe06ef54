#include "gsyn/randgen.hpp"
#include "gsyn/errors.hpp"

#include <string>

namespace gsyn {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

formula_ptr random_formula(std::mt19937_64& rng, int num_atoms, int depth) {
    int leaf = draw(rng, 0, depth == 0 ? 1 : 5);
    if (leaf <= 1) {
        int a = draw(rng, 0, num_atoms - 1);
        return leaf == 0 ? make_atom(a) : make_not_atom(a);
    }
    formula_ptr left = random_formula(rng, num_atoms, depth - 1);
    switch (leaf) {
        case 2: return make_conj(left, random_formula(rng, num_atoms, depth - 1));
        case 3: return make_disj(left, random_formula(rng, num_atoms, depth - 1));
        case 4: return make_next(left);
        default:
            return draw(rng, 0, 1) ? make_until(left, random_formula(rng, num_atoms, depth - 1))
                                   : make_eventually(left);
    }
}

} // namespace

problem_spec random_problem(std::mt19937_64& rng, const random_instance_options& opts) {
    while (true) {
        problem_spec spec;
        game_graph& g = spec.game;
        int players = draw(rng, opts.min_players, opts.max_players);
        int states = draw(rng, 2, opts.max_states);
        int atoms = draw(rng, 1, opts.max_atoms);
        // Lean toward the larger sizes: single-action players and lone goals
        // make most properties vacuous.
        int goals = draw(rng, 0, 3) == 0 ? 1 : opts.max_goals;

        for (int p = 0; p < players; ++p) {
            g.player_names.push_back("P" + std::to_string(p + 1));
            int acts = draw(rng, 0, 3) == 0 ? 1 : opts.max_actions;
            if (p == 0) acts = opts.max_actions;
            std::vector<std::string> names;
            for (int a = 0; a < acts; ++a) names.push_back("a" + std::to_string(a));
            g.actions.push_back(std::move(names));
        }
        for (int a = 0; a < atoms; ++a) g.atoms.push_back("p" + std::to_string(a));
        int joint = 1;
        for (int p = 0; p < players; ++p) joint *= g.num_actions(p);
        for (int s = 0; s < states; ++s) {
            g.state_names.push_back("s" + std::to_string(s));
            g.labels.push_back(static_cast<uint32_t>(draw(rng, 0, (1 << atoms) - 1)));
            for (int j = 0; j < joint; ++j) g.trans.push_back(draw(rng, 0, states - 1));
        }
        g.initial = 0;
        for (int k = 0; k < goals; ++k)
            spec.goal_texts.push_back(to_string(*random_formula(rng, atoms, 2), g.atoms));
        for (int p = 0; p < players; ++p)
            spec.pref_edges.push_back(random_preference_edges(rng, goals));
        finalize_problem(spec);

        product_game product = build_product(spec);
        if (product.num_states() > opts.max_product_states) continue;
        // Keep a sprinkle of degenerate instances, but mostly ones where the
        // leader has real choices to rank.
        bool nontrivial = product.num_states() >= 3 && product.rank_max[0] >= 1;
        if (!nontrivial && draw(rng, 0, 3) != 0) continue;
        return spec;
    }
}

std::vector<std::pair<int, int>> random_preference_edges(std::mt19937_64& rng, int m) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b && draw(rng, 0, 2) == 0) edges.emplace_back(a, b);
    return edges;
}

std::vector<int> random_strategy(std::mt19937_64& rng, const product_game& product, int player) {
    std::vector<int> strat;
    for (int v = 0; v < product.num_states(); ++v)
        strat.push_back(draw(rng, 0, product.spec.game.num_actions(player) - 1));
    return strat;
}

} // namespace gsyn
