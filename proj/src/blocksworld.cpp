#include "gsyn/blocksworld.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace gsyn {

namespace {

struct arm_action {
    enum kind_t { noop, pick, place } kind = noop;
    int arg = -1;  // block for pick, location for place
};

// All picks land before any place; within each phase arms act in priority
// order (arm 0 first), so simultaneous places at one location stack bottom
// to top by priority.
bw_state apply_round(const bw_state& s, const std::vector<arm_action>& acts) {
    bw_state t = s;
    for (size_t arm = 0; arm < acts.size(); ++arm) {
        const arm_action& a = acts[arm];
        if (a.kind != arm_action::pick) continue;
        if (t.held[arm] != -1) continue;
        for (auto& stack : t.stacks) {
            auto it = std::find(stack.begin(), stack.end(), a.arg);
            if (it == stack.end()) continue;
            stack.erase(it);
            t.held[arm] = a.arg;
            break;
        }
    }
    for (size_t arm = 0; arm < acts.size(); ++arm) {
        const arm_action& a = acts[arm];
        if (a.kind != arm_action::place) continue;
        if (t.held[arm] == -1) continue;
        t.stacks[static_cast<size_t>(a.arg)].push_back(t.held[arm]);
        t.held[arm] = -1;
    }
    return t;
}

bool directly_on(const bw_state& s, int above, int below) {
    for (const auto& stack : s.stacks)
        for (size_t i = 0; i + 1 < stack.size(); ++i)
            if (stack[i] == below && stack[i + 1] == above) return true;
    return false;
}

bool at_location(const bw_state& s, int block, int loc) {
    const auto& stack = s.stacks[static_cast<size_t>(loc)];
    return std::find(stack.begin(), stack.end(), block) != stack.end();
}

std::string block_name(int b) { return "B" + std::to_string(b + 1); }

struct bw_domain {
    std::vector<std::string> arm_names;
    std::vector<std::vector<arm_action>> acts;        // per arm
    std::vector<std::vector<std::string>> act_names;  // per arm
    bw_state init;
    std::vector<std::string> atoms;
    uint32_t (*label_fn)(const bw_state&) = nullptr;
    std::vector<std::string> goal_texts;
    std::vector<std::vector<std::pair<int, int>>> pref_edges;
};

problem_spec build_from(const bw_domain& d) {
    problem_spec spec;
    game_graph& g = spec.game;
    g.player_names = d.arm_names;
    g.actions = d.act_names;
    g.atoms = d.atoms;

    int num_joint = 1;
    std::vector<int> strides(d.acts.size(), 1);
    for (int arm = static_cast<int>(d.acts.size()) - 1; arm >= 0; --arm) {
        strides[static_cast<size_t>(arm)] = num_joint;
        num_joint *= static_cast<int>(d.acts[static_cast<size_t>(arm)].size());
    }

    std::map<bw_state, int> ids;
    std::vector<bw_state> order;
    std::queue<int> work;
    ids[d.init] = 0;
    order.push_back(d.init);
    work.push(0);
    std::vector<int> trans;
    while (!work.empty()) {
        int v = work.front();
        work.pop();
        bw_state cur = order[static_cast<size_t>(v)];  // copy: order may reallocate
        if (trans.size() < static_cast<size_t>(v + 1) * static_cast<size_t>(num_joint))
            trans.resize(static_cast<size_t>(v + 1) * static_cast<size_t>(num_joint), -1);
        for (int joint = 0; joint < num_joint; ++joint) {
            std::vector<arm_action> acts;
            for (size_t arm = 0; arm < d.acts.size(); ++arm) {
                int a = (joint / strides[arm]) % static_cast<int>(d.acts[arm].size());
                acts.push_back(d.acts[arm][static_cast<size_t>(a)]);
            }
            bw_state next = apply_round(cur, acts);
            auto [it, fresh] = ids.try_emplace(next, static_cast<int>(order.size()));
            if (fresh) {
                order.push_back(next);
                work.push(it->second);
            }
            trans[static_cast<size_t>(v) * static_cast<size_t>(num_joint) + static_cast<size_t>(joint)] = it->second;
        }
    }

    for (const bw_state& s : order) {
        g.state_names.push_back(bw_state_name(s));
        g.labels.push_back(d.label_fn(s));
    }
    g.initial = 0;
    g.trans = std::move(trans);
    spec.goal_texts = d.goal_texts;
    spec.pref_edges = d.pref_edges;
    finalize_problem(spec);
    return spec;
}

uint32_t small_label(const bw_state& s) {
    uint32_t mask = 0;
    if (at_location(s, 0, 1)) mask |= 1u;                // d1
    if (s.stacks[1].size() == 2) mask |= 2u;             // d2
    return mask;
}

} // namespace

bw_state bw_initial() {
    bw_state s;
    s.stacks = {{0, 1, 2, 3}, {}, {}};
    s.held = {-1, -1, -1};
    return s;
}

bw_state bw_step(const bw_state& s, const std::vector<int>& actions) {
    static const std::vector<std::vector<arm_action>> tables = {
        {{arm_action::noop, -1}, {arm_action::pick, 0},
         {arm_action::place, 0}, {arm_action::place, 1}, {arm_action::place, 2}},
        {{arm_action::noop, -1}, {arm_action::pick, 1},
         {arm_action::place, 0}, {arm_action::place, 1}, {arm_action::place, 2}},
        {{arm_action::noop, -1}, {arm_action::pick, 2}, {arm_action::pick, 3},
         {arm_action::place, 0}, {arm_action::place, 1}, {arm_action::place, 2}},
    };
    if (actions.size() != 3) throw input_error("bw_step: expected three arm actions");
    std::vector<arm_action> acts;
    for (size_t arm = 0; arm < 3; ++arm) {
        if (actions[arm] < 0 || actions[arm] >= static_cast<int>(tables[arm].size()))
            throw input_error("bw_step: action id out of range");
        acts.push_back(tables[arm][static_cast<size_t>(actions[arm])]);
    }
    return apply_round(s, acts);
}

uint32_t bw_label(const bw_state& s) {
    uint32_t mask = 0;
    if (directly_on(s, 0, 2) || (at_location(s, 0, 1) && at_location(s, 1, 2))) mask |= 1u;
    if (s.stacks[2].size() == 2) mask |= 2u;
    if (directly_on(s, 3, 0)) mask |= 4u;
    return mask;
}

std::string bw_state_name(const bw_state& s) {
    std::string name;
    for (const auto& stack : s.stacks) {
        if (!name.empty()) name += '_';
        if (stack.empty()) name += 'x';
        for (int b : stack) name += block_name(b);
    }
    name += '_';
    for (int h : s.held) name += h < 0 ? "n" : block_name(h);
    return name;
}

problem_spec build_blocksworld() {
    bw_domain d;
    d.arm_names = {"P1", "P2", "P3"};
    d.acts = {
        {{arm_action::noop, -1}, {arm_action::pick, 0},
         {arm_action::place, 0}, {arm_action::place, 1}, {arm_action::place, 2}},
        {{arm_action::noop, -1}, {arm_action::pick, 1},
         {arm_action::place, 0}, {arm_action::place, 1}, {arm_action::place, 2}},
        {{arm_action::noop, -1}, {arm_action::pick, 2}, {arm_action::pick, 3},
         {arm_action::place, 0}, {arm_action::place, 1}, {arm_action::place, 2}},
    };
    d.act_names = {
        {"noop", "pick", "place1", "place2", "place3"},
        {"noop", "pick", "place1", "place2", "place3"},
        {"noop", "pickB3", "pickB4", "place1", "place2", "place3"},
    };
    d.init = bw_initial();
    d.atoms = {"e1", "e2", "e3"};
    d.label_fn = &bw_label;
    d.goal_texts = {"F(e1 & F e2)", "!e2 U e3", "F(e3 & F e2)"};
    d.pref_edges = {
        {{0, 1}, {0, 2}},  // P1: goal 1 over 2 and over 3
        {{0, 2}, {1, 2}},  // P2: goals 1 and 2 over 3
        {{2, 0}, {1, 0}},  // P3: goals 3 and 2 over 1
    };
    return build_from(d);
}

problem_spec build_blocksworld_small() {
    bw_domain d;
    d.arm_names = {"P1", "P2"};
    d.acts = {
        {{arm_action::noop, -1}, {arm_action::pick, 0}, {arm_action::place, 1}},
        {{arm_action::noop, -1}, {arm_action::pick, 1}, {arm_action::place, 1}},
    };
    d.act_names = {
        {"noop", "pick", "place2"},
        {"noop", "pick", "place2"},
    };
    d.init.stacks = {{0, 1}, {}};
    d.init.held = {-1, -1};
    d.atoms = {"d1", "d2"};
    d.label_fn = &small_label;
    d.goal_texts = {"F(d1 & F d2)", "!d2 U d1"};
    d.pref_edges = {
        {{0, 1}},  // P1 prefers goal 1
        {{1, 0}},  // P2 prefers goal 2
    };
    return build_from(d);
}

} // namespace gsyn
