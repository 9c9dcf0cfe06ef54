#pragma once

#include "gsyn/product.hpp"
#include "gsyn/synthesis.hpp"

#include <string>
#include <vector>

namespace gsyn {

// One executed round. Display fields are prerendered strings so a parsed
// trace compares equal to the one that produced the file. The final row of
// a trace carries no move, so its coalition and action cells stay empty.
struct trace_row {
    int step = 0;
    std::string game_state;
    std::string label;         // atom names joined by '|'
    std::string coalition;     // 1-based member ids joined by '|'
    std::string joint_action;  // per-player action names joined by '|'
    std::string satisfied;     // 1-based goal ids joined by '|'
    std::vector<int> rank;     // per player

    bool operator==(const trace_row&) const = default;
};

struct sim_trace {
    std::vector<trace_row> rows;
    // Side data filled by simulate() and absent after parsing; not part of
    // trace equality.
    std::vector<int> states;                  // product state per row
    std::vector<std::vector<int>> coalv_row;  // per row: follower guarantees
    bool lasso = false;
};

// Play the solution from the initial state: the leader's chosen coalition
// dictates member actions, every other player answers with its recorded
// reply, interior states follow the value-preserving policies. Stops after
// `horizon` moves or when a product state repeats, whichever comes first.
sim_trace simulate(const product_game& product, const admissible_solution& sol, int horizon);

enum class trace_format { text, csv };

std::string render_trace(const sim_trace& t, trace_format format);

// Inverse of the csv rendering; throws input_error on malformed input.
sim_trace parse_trace_csv(const std::string& text);

} // namespace gsyn
