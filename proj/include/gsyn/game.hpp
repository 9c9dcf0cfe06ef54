#pragma once

#include "gsyn/formula.hpp"
#include "gsyn/prefs.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gsyn {

// Deterministic concurrent game arena. The transition table is total: every
// state has a successor for every joint action. Joint actions are stored in
// mixed radix with player 0 varying slowest.
struct game_graph {
    std::vector<std::string> player_names;
    std::vector<std::vector<std::string>> actions;  // per player
    std::vector<std::string> atoms;
    std::vector<std::string> state_names;
    std::vector<uint32_t> labels;  // per state, bit i = atom i
    int initial = 0;
    int num_joint = 1;
    std::vector<int> strides;  // per player
    std::vector<int> trans;    // [state * num_joint + joint]

    int num_players() const { return static_cast<int>(player_names.size()); }
    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_actions(int player) const { return static_cast<int>(actions[static_cast<size_t>(player)].size()); }

    int joint_index(const std::vector<int>& per_player) const;
    std::vector<int> split_joint(int joint) const;
    int step(int state, int joint) const { return trans[static_cast<size_t>(state) * static_cast<size_t>(num_joint) + static_cast<size_t>(joint)]; }

    int state_by_name(const std::string& name) const;   // -1 if absent
    int action_by_name(int player, const std::string& name) const;  // -1 if absent
    std::string joint_name(int joint) const;            // "(a,b,c)"
};

struct problem_spec {
    game_graph game;
    std::vector<std::string> goal_texts;
    std::vector<formula_ptr> goals;
    std::vector<std::vector<std::pair<int, int>>> pref_edges;  // per player: (better, worse), 0-based
    std::vector<preference_model> prefs;                       // per player

    int num_goals() const { return static_cast<int>(goal_texts.size()); }
};

// Coalitions the leader (player 0) can form: {0} and {0, i} for each other
// player i, in that order.
std::vector<std::vector<int>> feasible_coalitions(int num_players);

// Accepts the sectioned text format; a leading '{' switches to the JSON
// rendering of the same data. Errors carry 1-based line numbers for text
// input. The transition table must be total.
problem_spec load_problem(const std::string& text);

// For specs assembled in code rather than loaded: computes strides, checks
// the dense transition table, parses goal texts, builds preference models.
void finalize_problem(problem_spec& spec);

std::string save_problem_text(const problem_spec& spec);
std::string save_problem_json(const problem_spec& spec);

} // namespace gsyn
