#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gsyn {

// Syntactically co-safe LTL over a fixed atom list. Negation is only
// permitted on atoms; "eventually" is stored as until(tt, f).
enum class formula_kind { tt, atom, not_atom, conj, disj, next, until };

struct formula;
using formula_ptr = std::shared_ptr<const formula>;

struct formula {
    formula_kind kind;
    int atom = -1;            // atom / not_atom: index into the atom list
    formula_ptr left;         // conj/disj/until: left operand; next: operand
    formula_ptr right;        // conj/disj/until: right operand
};

formula_ptr make_tt();
formula_ptr make_atom(int idx);
formula_ptr make_not_atom(int idx);
formula_ptr make_conj(formula_ptr l, formula_ptr r);
formula_ptr make_disj(formula_ptr l, formula_ptr r);
formula_ptr make_next(formula_ptr f);
formula_ptr make_until(formula_ptr l, formula_ptr r);
formula_ptr make_eventually(formula_ptr f);

// Surface syntax: p, !p, &, |, X, U, F, parentheses. Precedence is
// unary > U > & > |, with U right-associative. Negation of a compound
// subformula is rejected. Atom names come from `atoms`; X, F, U and
// true are reserved words.
formula_ptr parse_formula(const std::string& text, const std::vector<std::string>& atoms);

std::string to_string(const formula& f, const std::vector<std::string>& atoms);

// One position of a finite word: bit i set means atom i holds.
using word = std::vector<uint32_t>;

// Finite-word satisfaction: atoms need their position to exist, X needs a
// successor position, U needs its right operand within the word. For the
// formulas produced by parse_formula this coincides with "some prefix of
// an infinite extension is accepted".
bool eval_word(const formula_ptr& f, const word& w);

// Distinct nodes of the syntax DAG in child-before-parent order.
std::vector<const formula*> collect_subterms(const formula_ptr& f);

} // namespace gsyn
