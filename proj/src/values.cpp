#include "gsyn/values.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace gsyn {

predecessor_index build_predecessors(const product_game& product) {
    const int n = product.num_states();
    const int nj = product.num_joint();
    predecessor_index idx;
    std::vector<int> count(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int j = 0; j < nj; ++j) ++count[static_cast<size_t>(product.step(v, j))];
    idx.offsets.assign(static_cast<size_t>(n) + 1, 0);
    for (int u = 0; u < n; ++u) idx.offsets[static_cast<size_t>(u) + 1] = idx.offsets[static_cast<size_t>(u)] + count[static_cast<size_t>(u)];
    idx.edges.resize(static_cast<size_t>(n) * static_cast<size_t>(nj));
    std::vector<int> fill(idx.offsets.begin(), idx.offsets.end() - 1);
    for (int v = 0; v < n; ++v)
        for (int j = 0; j < nj; ++j) {
            int u = product.step(v, j);
            idx.edges[static_cast<size_t>(fill[static_cast<size_t>(u)]++)] = {v, j};
        }
    return idx;
}

namespace {

// Mixed-radix index of the team members' actions inside a joint action.
struct team_view {
    std::vector<int> members;
    std::vector<int> member_stride;  // stride in the team index
    int team_actions = 1;

    team_view(const game_graph& g, const std::vector<int>& team) : members(team) {
        member_stride.assign(team.size(), 1);
        for (size_t i = team.size(); i-- > 0;) {
            member_stride[i] = team_actions;
            team_actions *= g.num_actions(team[i]);
        }
    }

    int project(const game_graph& g, int joint) const {
        int idx = 0;
        for (size_t i = 0; i < members.size(); ++i) {
            int a = (joint / g.strides[static_cast<size_t>(members[i])]) % g.num_actions(members[i]);
            idx += a * member_stride[i];
        }
        return idx;
    }
};

} // namespace

attractor_result sure_win_attractor(const product_game& product, const std::vector<int>& team,
                                    const std::vector<char>& target,
                                    const predecessor_index& pred) {
    const game_graph& g = product.spec.game;
    const int n = product.num_states();
    const int nj = product.num_joint();
    team_view tv(g, team);

    // completions per team action: product of the other players' menus
    int completions = 1;
    for (int p = 0; p < g.num_players(); ++p)
        if (std::find(team.begin(), team.end(), p) == team.end()) completions *= g.num_actions(p);

    attractor_result res;
    res.win.assign(static_cast<size_t>(n), 0);
    res.action.assign(static_cast<size_t>(n), -1);
    res.depth.assign(static_cast<size_t>(n), -1);

    std::vector<int> cnt(static_cast<size_t>(n) * static_cast<size_t>(tv.team_actions), completions);
    std::queue<int> work;
    for (int v = 0; v < n; ++v)
        if (target[static_cast<size_t>(v)]) {
            res.win[static_cast<size_t>(v)] = 1;
            res.depth[static_cast<size_t>(v)] = 0;
            work.push(v);
        }

    while (!work.empty()) {
        int u = work.front();
        work.pop();
        for (int e = pred.offsets[static_cast<size_t>(u)]; e < pred.offsets[static_cast<size_t>(u) + 1]; ++e) {
            auto [v, joint] = pred.edges[static_cast<size_t>(e)];
            int ta = tv.project(g, joint);
            int& c = cnt[static_cast<size_t>(v) * static_cast<size_t>(tv.team_actions) + static_cast<size_t>(ta)];
            if (--c == 0 && !res.win[static_cast<size_t>(v)]) {
                res.win[static_cast<size_t>(v)] = 1;
                res.action[static_cast<size_t>(v)] = ta;
                int worst = 0;
                for (int j = 0; j < nj; ++j)
                    if (tv.project(g, j) == ta)
                        worst = std::max(worst, res.depth[static_cast<size_t>(product.step(v, j))]);
                res.depth[static_cast<size_t>(v)] = worst + 1;
                work.push(v);
            }
        }
    }
    return res;
}

std::vector<char> sure_win(const product_game& product, int player, const std::vector<char>& target) {
    predecessor_index pred = build_predecessors(product);
    return sure_win_attractor(product, {player}, target, pred).win;
}

std::vector<int> compute_values(const product_game& product, int rank_player,
                                const std::vector<int>& team, const predecessor_index& pred) {
    const int n = product.num_states();
    const int rmax = product.rank_max[static_cast<size_t>(rank_player)];
    std::vector<int> val(static_cast<size_t>(n), std::numeric_limits<int>::max());
    for (int k = 0; k <= rmax; ++k) {
        std::vector<char> layer(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v)
            if (product.ranks[static_cast<size_t>(rank_player)][static_cast<size_t>(v)] <= k) layer[static_cast<size_t>(v)] = 1;
        attractor_result att = sure_win_attractor(product, team, layer, pred);
        for (int v = 0; v < n; ++v)
            if (att.win[static_cast<size_t>(v)] && val[static_cast<size_t>(v)] > k) val[static_cast<size_t>(v)] = k;
    }
    return val;
}

std::vector<std::vector<int>> compute_all_values(const product_game& product) {
    predecessor_index pred = build_predecessors(product);
    std::vector<std::vector<int>> val;
    for (int p = 0; p < product.num_players(); ++p)
        val.push_back(compute_values(product, p, {p}, pred));
    return val;
}

std::vector<int> msw_strategy(const product_game& product, int player, const std::vector<int>& val) {
    const int n = product.num_states();
    predecessor_index pred = build_predecessors(product);
    std::vector<int> strat(static_cast<size_t>(n), 0);
    int rmax = product.rank_max[static_cast<size_t>(player)];
    for (int k = 0; k <= rmax; ++k) {
        bool any = false;
        for (int v = 0; v < n; ++v)
            if (val[static_cast<size_t>(v)] == k &&
                product.ranks[static_cast<size_t>(player)][static_cast<size_t>(v)] > k) any = true;
        if (!any) continue;
        std::vector<char> layer(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v)
            if (product.ranks[static_cast<size_t>(player)][static_cast<size_t>(v)] <= k) layer[static_cast<size_t>(v)] = 1;
        attractor_result att = sure_win_attractor(product, {player}, layer, pred);
        for (int v = 0; v < n; ++v)
            if (val[static_cast<size_t>(v)] == k && !layer[static_cast<size_t>(v)]) {
                // Inside the winning region but outside the layer: follow the
                // attractor. Ties already resolved to the recorded action.
                if (att.action[static_cast<size_t>(v)] < 0)
                    throw property_error("msw_strategy: state lacks an attractor action");
                strat[static_cast<size_t>(v)] = att.action[static_cast<size_t>(v)];
            }
    }
    return strat;
}

} // namespace gsyn
