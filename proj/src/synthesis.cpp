#include "gsyn/synthesis.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <limits>

namespace gsyn {

namespace {

int own_action(const game_graph& g, int player, int joint) {
    return (joint / g.strides[static_cast<size_t>(player)]) % g.num_actions(player);
}

// Candidate moves in tie-break order: leader action first, then the solo
// coalition before partnered ones, partners by index, partner actions last.
struct candidate_table {
    std::vector<coalition_action> cands;
    std::vector<std::vector<int>> joints;  // consistent joint actions per candidate

    candidate_table(const game_graph& g, const std::vector<std::vector<int>>& coalitions) {
        for (int a0 = 0; a0 < g.num_actions(0); ++a0) {
            for (size_t ci = 0; ci < coalitions.size(); ++ci) {
                const std::vector<int>& members = coalitions[ci];
                if (members.size() == 1) {
                    cands.push_back({static_cast<int>(ci), {a0}});
                } else {
                    for (int ap = 0; ap < g.num_actions(members[1]); ++ap)
                        cands.push_back({static_cast<int>(ci), {a0, ap}});
                }
            }
        }
        for (const coalition_action& c : cands) {
            std::vector<int> js;
            const std::vector<int>& members = coalitions[static_cast<size_t>(c.coalition)];
            for (int joint = 0; joint < g.num_joint; ++joint) {
                bool ok = true;
                for (size_t i = 0; i < members.size() && ok; ++i)
                    if (own_action(g, members[i], joint) != c.actions[i]) ok = false;
                if (ok) js.push_back(joint);
            }
            joints.push_back(std::move(js));
        }
    }
};

} // namespace

level_result synthesize_level(const product_game& product,
                              const std::vector<std::vector<int>>& val, int level,
                              const synthesis_options& opts) {
    const game_graph& g = product.spec.game;
    const int n = product.num_states();
    const int players = product.num_players();

    level_result res;
    res.coalitions = opts.coalitions.empty() ? feasible_coalitions(players) : opts.coalitions;
    for (const auto& c : res.coalitions)
        if (c.empty() || c[0] != 0 || c.size() > 2)
            throw input_error("synthesize_level: coalitions must be {0} or {0, partner}");

    candidate_table table(g, res.coalitions);
    const int num_cands = static_cast<int>(table.cands.size());

    res.level_of.assign(static_cast<size_t>(n), -1);
    res.coalv = val;  // every state starts from its solo guarantees
    res.plans.assign(static_cast<size_t>(n), {});

    std::vector<char> in_v(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (product.ranks[0][static_cast<size_t>(v)] <= level) {
            in_v[static_cast<size_t>(v)] = 1;
            res.level_of[static_cast<size_t>(v)] = 0;
            res.plans[static_cast<size_t>(v)].level = 0;
        }

    // Candidate verdicts are permanent within one invocation: a candidate is
    // only evaluated once its successors sit in the grown set, and their
    // guarantees never change after they join.
    enum : char { unseen = 0, discarded = 1, kept = 2 };
    std::vector<char> status(static_cast<size_t>(n) * static_cast<size_t>(num_cands), unseen);
    std::vector<std::vector<int>> kept_value(static_cast<size_t>(n) * static_cast<size_t>(num_cands));
    std::vector<std::vector<int>> kept_argmin(static_cast<size_t>(n) * static_cast<size_t>(num_cands));

    for (int round = 1;; ++round) {
        level_report report;
        struct joiner { int state; std::vector<int> survivors; };
        std::vector<joiner> joined;

        for (int v = 0; v < n; ++v) {
            if (in_v[static_cast<size_t>(v)]) continue;
            std::vector<int> survivors;
            for (int c = 0; c < num_cands; ++c) {
                size_t slot = static_cast<size_t>(v) * static_cast<size_t>(num_cands) + static_cast<size_t>(c);
                if (status[slot] == discarded) continue;

                bool enforcing = true;
                for (int joint : table.joints[static_cast<size_t>(c)])
                    if (!in_v[static_cast<size_t>(product.step(v, joint))]) { enforcing = false; break; }
                if (!enforcing) continue;

                if (status[slot] == unseen) {
                    ++res.candidate_evaluations;
                    const coalition_action& cand = table.cands[static_cast<size_t>(c)];
                    const std::vector<int>& members = res.coalitions[static_cast<size_t>(cand.coalition)];
                    const std::vector<int>& joints = table.joints[static_cast<size_t>(c)];

                    // Partner rationality: the coalition move must not risk a
                    // worse guarantee than the partner already holds alone.
                    bool rational = true;
                    int partner_worst = -1;
                    if (members.size() > 1) {
                        int partner = members[1];
                        for (int joint : joints)
                            partner_worst = std::max(partner_worst,
                                                     res.coalv[static_cast<size_t>(partner)][static_cast<size_t>(product.step(v, joint))]);
                        rational = partner_worst <= val[static_cast<size_t>(partner)][static_cast<size_t>(v)];
                    }
                    if (!rational) {
                        status[slot] = discarded;
                        report.discarded.push_back({v, cand});
                        continue;
                    }

                    std::vector<int> values(static_cast<size_t>(players) - 1, 0);
                    std::vector<int> argmin(static_cast<size_t>(players) - 1, -1);
                    for (int j = 1; j < players; ++j) {
                        if (members.size() > 1 && j == members[1]) {
                            values[static_cast<size_t>(j) - 1] = partner_worst;
                            continue;
                        }
                        // Uncommitted follower: j picks its reply first, the
                        // remaining players answer adversarially.
                        int best = std::numeric_limits<int>::max();
                        int best_a = -1;
                        for (int a = 0; a < g.num_actions(j); ++a) {
                            int worst = -1;
                            for (int joint : joints) {
                                if (own_action(g, j, joint) != a) continue;
                                worst = std::max(worst,
                                                 res.coalv[static_cast<size_t>(j)][static_cast<size_t>(product.step(v, joint))]);
                            }
                            if (worst < best) {
                                best = worst;
                                best_a = a;
                            }
                        }
                        values[static_cast<size_t>(j) - 1] = best;
                        argmin[static_cast<size_t>(j) - 1] = best_a;
                    }
                    status[slot] = kept;
                    kept_value[slot] = std::move(values);
                    kept_argmin[slot] = std::move(argmin);
                }
                survivors.push_back(c);
            }
            if (!survivors.empty()) joined.push_back({v, std::move(survivors)});
        }

        if (joined.empty()) {
            if (!report.discarded.empty()) res.rounds.push_back(std::move(report));
            break;
        }

        for (const joiner& jn : joined) {
            int v = jn.state;
            state_plan& plan = res.plans[static_cast<size_t>(v)];
            plan.level = round;
            res.level_of[static_cast<size_t>(v)] = round;
            for (int c : jn.survivors) {
                size_t slot = static_cast<size_t>(v) * static_cast<size_t>(num_cands) + static_cast<size_t>(c);
                plan.admitted.push_back(table.cands[static_cast<size_t>(c)]);
                plan.cand_value.push_back(kept_value[slot]);
                plan.cand_argmin.push_back(kept_argmin[slot]);
            }
            // The guarantee a follower carries at v is the worst admitted
            // candidate, since the leader remains free to pick any of them.
            for (int j = 1; j < players; ++j) {
                int worst = -1;
                for (const auto& cv : plan.cand_value) worst = std::max(worst, cv[static_cast<size_t>(j) - 1]);
                res.coalv[static_cast<size_t>(j)][static_cast<size_t>(v)] = worst;
            }
            // The leader now reaches the target level from v; it keeps its
            // solo guarantee when that is already better.
            res.coalv[0][static_cast<size_t>(v)] = std::min(res.coalv[0][static_cast<size_t>(v)], level);
            report.joined.push_back(v);
        }
        for (const joiner& jn : joined) in_v[static_cast<size_t>(jn.state)] = 1;
        res.rounds.push_back(std::move(report));
    }

    res.success = in_v[static_cast<size_t>(product.initial)] != 0;
    return res;
}

admissible_solution synthesize(const product_game& product,
                               const std::vector<std::vector<int>>& val,
                               const synthesis_options& opts) {
    admissible_solution sol;
    sol.val = val;
    for (int level = 0; level <= product.rank_max[0]; ++level) {
        level_result res = synthesize_level(product, val, level, opts);
        sol.candidate_evaluations += res.candidate_evaluations;
        if (res.success) {
            sol.l_star = level;
            sol.plan = std::move(res);
            for (int p = 0; p < product.num_players(); ++p)
                sol.interior.push_back(msw_strategy(product, p, val[static_cast<size_t>(p)]));
            return sol;
        }
    }
    throw property_error("synthesize: construction failed even at the maximum rank");
}

const state_plan& admissible_solution::plan_at(int v) const {
    const state_plan& p = plan.plans.at(static_cast<size_t>(v));
    if (p.level < 0) throw input_error("no plan recorded for state " + std::to_string(v));
    return p;
}

const coalition_action& admissible_solution::choice(int v) const {
    const state_plan& p = plan_at(v);
    if (p.admitted.empty()) throw input_error("state " + std::to_string(v) + " has no admitted move");
    return p.admitted.front();
}

std::vector<int> admissible_solution::coalition_members(const product_game&, int v) const {
    if (!exterior(v)) return {0};
    return plan.coalitions[static_cast<size_t>(choice(v).coalition)];
}

int admissible_solution::respond(const product_game& product, int v, int player) const {
    if (exterior(v)) {
        const state_plan& p = plan_at(v);
        const coalition_action& cand = p.admitted.front();
        const std::vector<int>& members = plan.coalitions[static_cast<size_t>(cand.coalition)];
        for (size_t i = 0; i < members.size(); ++i)
            if (members[i] == player) return cand.actions[i];
        int a = p.cand_argmin.front()[static_cast<size_t>(player) - 1];
        if (a < 0) throw property_error("respond: missing recorded reply");
        return a;
    }
    (void)product;
    return interior[static_cast<size_t>(player)][static_cast<size_t>(v)];
}

int follower_action(const admissible_solution& sol, int v, const std::vector<int>& coalition,
                    const std::vector<int>& coalition_actions, int follower) {
    const state_plan& p = sol.plan_at(v);
    for (size_t c = 0; c < p.admitted.size(); ++c) {
        const coalition_action& cand = p.admitted[c];
        if (sol.plan.coalitions[static_cast<size_t>(cand.coalition)] != coalition) continue;
        if (cand.actions != coalition_actions) continue;
        if (follower <= 0 || follower >= static_cast<int>(sol.val.size()))
            throw input_error("follower_action: follower index out of range");
        for (int member : coalition)
            if (member == follower)
                throw input_error("follower_action: player is a coalition member");
        return p.cand_argmin[c][static_cast<size_t>(follower) - 1];
    }
    throw input_error("follower_action: candidate not recorded at this state");
}

} // namespace gsyn
