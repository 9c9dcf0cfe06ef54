#pragma once

#include "gsyn/product.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace gsyn {

// Positional strategy for one player: own action id per product state.
using positional_strategy = std::vector<int>;

// Shared evaluation counter. Charged once per fully evaluated strategy;
// crossing the cap raises budget_error.
struct oracle_budget {
    long long cap = 10'000'000;
    long long used = 0;
    void charge(long long n);
};

// Stabilized classes reachable from v when `player` plays `strat` and the
// other players jointly pick any positional behavior: the classes of states
// that lie on a cycle of the fixed-strategy successor graph.
std::vector<uint32_t> outcome_classes(const product_game& product, int player,
                                      const positional_strategy& strat, int v);

// Worst stabilized rank over those outcomes.
int max_rank(const product_game& product, int player, const positional_strategy& strat, int v);

// Smallest guaranteed stabilized rank over every positional strategy of the
// player, found by exhaustive enumeration over the states actually reachable
// under each partial assignment.
int oracle_value(const product_game& product, int player, int v, oracle_budget& budget);

struct dominance_verdict {
    bool dominates = false;
    // When not dominating: a minimal outcome of the first strategy with no
    // strictly worse minimal outcome of the second.
    uint32_t witness_class = 0;
    bool has_witness = false;
};

// Whether `a` strictly dominates `b` for the player from the initial state:
// every minimal outcome of `a` beats some minimal outcome of `b`.
dominance_verdict strictly_dominates(const product_game& product, int player,
                                     const positional_strategy& a, const positional_strategy& b);

// Some minimal outcome attains the worst rank.
bool check_lemma1(const product_game& product, int player, const positional_strategy& strat, int v);

// Independent rationality test for a coalition action: no completion by the
// uncommitted players pushes the partner's guarantee above its solo value.
bool is_rational(const product_game& product, const std::vector<std::vector<int>>& coalv,
                 const std::vector<std::vector<int>>& val, int v,
                 const std::vector<int>& coalition, const std::vector<int>& coalition_actions);

// Enumerate all positional strategies of the player that are distinguishable
// from v (assignments off the induced reachable set collapse), invoking fn
// with each one. Charges one evaluation per invocation.
void for_each_reachable_strategy(const product_game& product, int player, int v,
                                 oracle_budget& budget,
                                 const std::function<void(const positional_strategy&)>& fn);

} // namespace gsyn
