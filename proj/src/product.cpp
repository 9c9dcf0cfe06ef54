#include "gsyn/product.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gsyn {

uint32_t product_game::player_class(int player, int v) const {
    return mp_set(spec.prefs[static_cast<size_t>(player)], satisfied[static_cast<size_t>(v)]);
}

std::string product_game::describe_state(int v) const {
    std::ostringstream out;
    out << spec.game.state_names[static_cast<size_t>(state_game[static_cast<size_t>(v)])] << " [";
    bool first = true;
    for (int k = 0; k < spec.num_goals(); ++k) {
        if ((satisfied[static_cast<size_t>(v)] >> k) & 1u) {
            if (!first) out << ',';
            out << (k + 1);
            first = false;
        }
    }
    out << ']';
    return out.str();
}

namespace {

struct interner {
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> keys;
    size_t budget;

    explicit interner(size_t budget) : budget(budget) {}

    int intern(const std::vector<int>& key, bool& fresh) {
        auto [it, inserted] = ids.emplace(key, static_cast<int>(keys.size()));
        fresh = inserted;
        if (inserted) {
            keys.push_back(key);
            if (keys.size() > budget)
                throw budget_error("build_product: state budget of " + std::to_string(budget) +
                                   " exceeded");
        }
        return it->second;
    }
};

} // namespace

product_game build_product(const problem_spec& spec, const product_options& opts) {
    product_game product;
    product.spec = spec;
    product.options = opts;
    const game_graph& g = product.spec.game;
    const int m = product.spec.num_goals();

    for (int k = 0; k < m; ++k)
        product.automata.push_back(compile_dfa(product.spec.goals[static_cast<size_t>(k)], static_cast<int>(g.atoms.size())));

    auto satisfied_of = [&](const std::vector<int>& key) {
        uint32_t mask = 0;
        for (int k = 0; k < m; ++k)
            if (product.automata[static_cast<size_t>(k)].accepting[static_cast<size_t>(key[static_cast<size_t>(k) + 1])]) mask |= 1u << k;
        return mask;
    };

    // A key is (game state, q_1, ..., q_m). The automata read the label of
    // the key's game state on entry, so the initial key already consumed the
    // initial label.
    interner states(opts.state_budget);
    auto successor_key = [&](const std::vector<int>& key, int joint) {
        std::vector<int> next(key.size());
        int s2 = g.step(key[0], joint);
        next[0] = s2;
        for (int k = 0; k < m; ++k)
            next[static_cast<size_t>(k) + 1] =
                product.automata[static_cast<size_t>(k)].step(key[static_cast<size_t>(k) + 1], g.labels[static_cast<size_t>(s2)]);
        return next;
    };

    std::vector<int> init_key(static_cast<size_t>(m) + 1);
    init_key[0] = g.initial;
    for (int k = 0; k < m; ++k)
        init_key[static_cast<size_t>(k) + 1] =
            product.automata[static_cast<size_t>(k)].step(product.automata[static_cast<size_t>(k)].initial, g.labels[static_cast<size_t>(g.initial)]);

    bool fresh = false;
    product.initial = states.intern(init_key, fresh);

    if (opts.full_product) {
        // Enumerate every combination; transitions still follow the labels.
        std::vector<int> key(static_cast<size_t>(m) + 1, 0);
        for (;;) {
            states.intern(key, fresh);
            int pos = m;
            for (; pos >= 0; --pos) {
                int limit = pos == 0 ? g.num_states() : product.automata[static_cast<size_t>(pos) - 1].num_states;
                if (++key[static_cast<size_t>(pos)] < limit) break;
                key[static_cast<size_t>(pos)] = 0;
            }
            if (pos < 0) break;
        }
    }

    for (size_t v = 0; v < states.keys.size(); ++v) {
        std::vector<int> key = states.keys[v];
        product.state_game.push_back(key[0]);
        for (int k = 0; k < m; ++k) product.state_q.push_back(key[static_cast<size_t>(k) + 1]);
        product.satisfied.push_back(satisfied_of(key));
        for (int joint = 0; joint < g.num_joint; ++joint) {
            int u = states.intern(successor_key(key, joint), fresh);
            product.trans.push_back(u);
        }
    }

    const int n = product.num_states();
    for (int p = 0; p < g.num_players(); ++p) {
        std::vector<uint32_t> classes;
        classes.reserve(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) classes.push_back(product.player_class(p, v));
        product.orders.push_back(compute_ranks(product.spec.prefs[static_cast<size_t>(p)], classes));
        product.rank_max.push_back(product.orders.back().rank_max);
        std::vector<int> pr(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v)
            pr[static_cast<size_t>(v)] = product.orders.back().rank_of(product.player_class(p, v));
        product.ranks.push_back(std::move(pr));
    }
    return product;
}

int rank_of(const product_game& product, int player, int v) {
    if (player < 0 || player >= product.num_players())
        throw input_error("rank_of: player out of range");
    if (v < 0 || v >= product.num_states())
        throw input_error("rank_of: state out of range");
    return product.ranks[static_cast<size_t>(player)][static_cast<size_t>(v)];
}

std::vector<std::pair<int, int>> incomparable_growth_edges(const product_game& product, int player) {
    std::vector<std::pair<int, int>> out;
    const preference_model& model = product.spec.prefs[static_cast<size_t>(player)];
    for (int v = 0; v < product.num_states(); ++v) {
        uint32_t cv = product.player_class(player, v);
        for (int joint = 0; joint < product.num_joint(); ++joint) {
            int u = product.step(v, joint);
            uint32_t cu = product.player_class(player, u);
            if (compare_classes(model, cu, cv) == class_rel::incomparable)
                out.emplace_back(v, u);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace gsyn
