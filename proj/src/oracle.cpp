#include "gsyn/oracle.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <limits>

namespace gsyn {

void oracle_budget::charge(long long n) {
    used += n;
    if (used > cap)
        throw budget_error("oracle budget of " + std::to_string(cap) + " evaluations exceeded");
}

namespace {

int own_action(const game_graph& g, int player, int joint) {
    return (joint / g.strides[static_cast<size_t>(player)]) % g.num_actions(player);
}

// Deduplicated successors of u when the player's component is fixed.
std::vector<int> fixed_succs(const product_game& product, int player, int action, int u) {
    const game_graph& g = product.spec.game;
    std::vector<int> out;
    for (int joint = 0; joint < g.num_joint; ++joint) {
        if (own_action(g, player, joint) != action) continue;
        int w = product.step(u, joint);
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
    return out;
}

// States of the fixed-strategy graph reachable from v that lie on a cycle,
// found with an iterative Tarjan pass over the reachable subgraph.
std::vector<int> cycle_states(const product_game& product, int player,
                              const positional_strategy& strat, int v) {
    const int n = product.num_states();
    std::vector<std::vector<int>> succ(static_cast<size_t>(n));
    std::vector<char> reach(static_cast<size_t>(n), 0);
    std::vector<int> stack{v};
    reach[static_cast<size_t>(v)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        succ[static_cast<size_t>(u)] = fixed_succs(product, player, strat[static_cast<size_t>(u)], u);
        for (int w : succ[static_cast<size_t>(u)])
            if (!reach[static_cast<size_t>(w)]) {
                reach[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
    }

    std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<char> on_stack(static_cast<size_t>(n), 0);
    std::vector<int> scc_stack;
    std::vector<int> result;
    int next_index = 0;

    struct frame { int u; size_t child; };
    std::vector<frame> call;
    for (int root = 0; root < n; ++root) {
        if (!reach[static_cast<size_t>(root)] || index[static_cast<size_t>(root)] >= 0) continue;
        call.push_back({root, 0});
        index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
        scc_stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = 1;
        while (!call.empty()) {
            frame& f = call.back();
            if (f.child < succ[static_cast<size_t>(f.u)].size()) {
                int w = succ[static_cast<size_t>(f.u)][f.child++];
                if (index[static_cast<size_t>(w)] < 0) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
                    scc_stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.u)] = std::min(low[static_cast<size_t>(f.u)], index[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(f.u)] == index[static_cast<size_t>(f.u)]) {
                    std::vector<int> comp;
                    for (;;) {
                        int w = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = 0;
                        comp.push_back(w);
                        if (w == f.u) break;
                    }
                    bool cyclic = comp.size() > 1;
                    if (!cyclic) {
                        const auto& ss = succ[static_cast<size_t>(comp[0])];
                        cyclic = std::find(ss.begin(), ss.end(), comp[0]) != ss.end();
                    }
                    if (cyclic)
                        for (int w : comp) result.push_back(w);
                }
                int u = f.u;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<size_t>(call.back().u)] = std::min(low[static_cast<size_t>(call.back().u)], low[static_cast<size_t>(u)]);
            }
        }
    }
    return result;
}

} // namespace

std::vector<uint32_t> outcome_classes(const product_game& product, int player,
                                      const positional_strategy& strat, int v) {
    std::vector<uint32_t> classes;
    for (int u : cycle_states(product, player, strat, v))
        classes.push_back(product.player_class(player, u));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

int max_rank(const product_game& product, int player, const positional_strategy& strat, int v) {
    int worst = -1;
    const class_order& order = product.orders[static_cast<size_t>(player)];
    for (uint32_t c : outcome_classes(product, player, strat, v))
        worst = std::max(worst, order.rank_of(c));
    if (worst < 0)
        throw property_error("max_rank: no stabilized outcome reachable");
    return worst;
}

void for_each_reachable_strategy(const product_game& product, int player, int v,
                                 oracle_budget& budget,
                                 const std::function<void(const positional_strategy&)>& fn) {
    const int n = product.num_states();
    const int num_actions = product.spec.game.num_actions(player);
    positional_strategy assign(static_cast<size_t>(n), -1);

    // Reachable closure under the partial assignment; expansion stops at
    // unassigned states, the lowest of which becomes the branch point.
    auto frontier_state = [&]() {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<int> stack{v};
        seen[static_cast<size_t>(v)] = 1;
        int frontier = -1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (assign[static_cast<size_t>(u)] < 0) {
                if (frontier < 0 || u < frontier) frontier = u;
                continue;
            }
            for (int w : fixed_succs(product, player, assign[static_cast<size_t>(u)], u))
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
        return frontier;
    };

    std::function<void()> rec = [&]() {
        int u = frontier_state();
        if (u < 0) {
            budget.charge(1);
            positional_strategy full = assign;
            for (int w = 0; w < n; ++w)
                if (full[static_cast<size_t>(w)] < 0) full[static_cast<size_t>(w)] = 0;
            fn(full);
            return;
        }
        for (int a = 0; a < num_actions; ++a) {
            assign[static_cast<size_t>(u)] = a;
            rec();
        }
        assign[static_cast<size_t>(u)] = -1;
    };
    rec();
}

int oracle_value(const product_game& product, int player, int v, oracle_budget& budget) {
    int best = std::numeric_limits<int>::max();
    for_each_reachable_strategy(product, player, v, budget, [&](const positional_strategy& strat) {
        best = std::min(best, max_rank(product, player, strat, v));
    });
    return best;
}

dominance_verdict strictly_dominates(const product_game& product, int player,
                                     const positional_strategy& a, const positional_strategy& b) {
    const preference_model& model = product.spec.prefs[static_cast<size_t>(player)];
    std::vector<uint32_t> min_a = min_classes(model, outcome_classes(product, player, a, product.initial));
    std::vector<uint32_t> min_b = min_classes(model, outcome_classes(product, player, b, product.initial));
    dominance_verdict verdict;
    for (uint32_t c : min_a) {
        bool beats_some = false;
        for (uint32_t d : min_b)
            if (compare_classes(model, c, d) == class_rel::strictly_better) { beats_some = true; break; }
        if (!beats_some) {
            verdict.dominates = false;
            verdict.witness_class = c;
            verdict.has_witness = true;
            return verdict;
        }
    }
    verdict.dominates = true;
    return verdict;
}

bool check_lemma1(const product_game& product, int player, const positional_strategy& strat, int v) {
    const preference_model& model = product.spec.prefs[static_cast<size_t>(player)];
    const class_order& order = product.orders[static_cast<size_t>(player)];
    std::vector<uint32_t> out = outcome_classes(product, player, strat, v);
    int worst = -1;
    for (uint32_t c : out) worst = std::max(worst, order.rank_of(c));
    for (uint32_t c : min_classes(model, out))
        if (order.rank_of(c) == worst) return true;
    return false;
}

bool is_rational(const product_game& product, const std::vector<std::vector<int>>& coalv,
                 const std::vector<std::vector<int>>& val, int v,
                 const std::vector<int>& coalition, const std::vector<int>& coalition_actions) {
    if (coalition.size() <= 1) return true;
    const game_graph& g = product.spec.game;
    int partner = coalition[1];
    for (int joint = 0; joint < g.num_joint; ++joint) {
        bool consistent = true;
        for (size_t i = 0; i < coalition.size() && consistent; ++i)
            if (own_action(g, coalition[i], joint) != coalition_actions[i]) consistent = false;
        if (!consistent) continue;
        int u = product.step(v, joint);
        if (coalv[static_cast<size_t>(partner)][static_cast<size_t>(u)] > val[static_cast<size_t>(partner)][static_cast<size_t>(v)])
            return false;
    }
    return true;
}

} // namespace gsyn
