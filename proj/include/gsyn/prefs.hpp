#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gsyn {

// Preorder over goal formulas 0..m-1, stored as its reflexive-transitive
// closure. Cycles in the input edges collapse to equivalences.
struct preference_model {
    int m = 0;
    std::vector<char> geq;  // geq[a * m + b]: a is at least as preferred as b

    bool at_least(int a, int b) const { return geq[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)] != 0; }
    bool strictly_better(int a, int b) const { return at_least(a, b) && !at_least(b, a); }
    bool equivalent(int a, int b) const { return at_least(a, b) && at_least(b, a); }
};

// Edges are (better, worse) pairs over formula indices.
preference_model build_preference(int m, const std::vector<std::pair<int, int>>& edges);

// Most-preferred subset of a satisfied set: drop every formula that some
// other satisfied formula strictly beats. Equivalent formulas all stay.
uint32_t mp_set(const preference_model& model, uint32_t satisfied);

enum class class_rel { strictly_better, strictly_worse, equivalent, incomparable };

// Lifted order on mp-classes: c1 is at least as good as c2 when every
// formula of c2 has an at-least-as-good counterpart in c1. The empty class
// sits strictly below every non-empty class.
class_rel compare_classes(const preference_model& model, uint32_t c1, uint32_t c2);

bool class_at_least(const preference_model& model, uint32_t c1, uint32_t c2);

// Subsets of `classes` that no other member strictly beats / that strictly
// beat no other member.
std::vector<uint32_t> max_classes(const preference_model& model, const std::vector<uint32_t>& classes);
std::vector<uint32_t> min_classes(const preference_model& model, const std::vector<uint32_t>& classes);

// Ranks from iterated peeling: rank 0 is the maximal layer, each next rank
// is the maximal layer of what remains.
struct class_order {
    std::vector<uint32_t> classes;
    std::vector<int> rank;
    int rank_max = 0;

    int index_of(uint32_t cls) const;
    int rank_of(uint32_t cls) const;  // throws if cls is not listed
};

class_order compute_ranks(const preference_model& model, std::vector<uint32_t> classes);

} // namespace gsyn
