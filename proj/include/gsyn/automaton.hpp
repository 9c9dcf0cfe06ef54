#pragma once

#include "gsyn/formula.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gsyn {

// Deterministic automaton over the powerset alphabet of the atom list.
// Accepting states are absorbing: once a good prefix has been read the
// automaton stays accepting forever.
struct goal_automaton {
    int num_states = 0;
    int num_atoms = 0;
    int initial = 0;
    std::vector<char> accepting;  // per state
    std::vector<int> trans;       // [state * (1 << num_atoms) + symbol]

    int step(int state, uint32_t symbol) const;
    bool accepts(const word& w) const;
};

// Range-checked single step.
int dfa_step(const goal_automaton& a, int state, uint32_t symbol);

// Compile a formula to a minimal DFA whose language is exactly the set of
// finite words satisfied by eval_word. State ids are contiguous with the
// initial state at 0. Throws budget_error if the formula has more than 64
// distinct subterms or determinization exceeds 65536 states.
goal_automaton compile_dfa(const formula_ptr& f, int num_atoms);

// One line per transition plus a header naming initial and accepting states.
std::string render_automaton(const goal_automaton& a,
                             const std::vector<std::string>& atoms);

} // namespace gsyn
