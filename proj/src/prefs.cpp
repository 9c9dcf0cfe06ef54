#include "gsyn/prefs.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <string>

namespace gsyn {

preference_model build_preference(int m, const std::vector<std::pair<int, int>>& edges) {
    if (m < 0) throw input_error("build_preference: negative formula count");
    preference_model model;
    model.m = m;
    model.geq.assign(static_cast<size_t>(m) * static_cast<size_t>(m), 0);
    auto set = [&](int a, int b) { model.geq[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)] = 1; };
    for (int i = 0; i < m; ++i) set(i, i);
    for (auto [better, worse] : edges) {
        if (better < 0 || better >= m || worse < 0 || worse >= m)
            throw input_error("build_preference: edge index out of range");
        set(better, worse);
    }
    // Floyd-Warshall closure.
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i) {
            if (!model.at_least(i, k)) continue;
            for (int j = 0; j < m; ++j)
                if (model.at_least(k, j)) set(i, j);
        }
    return model;
}

uint32_t mp_set(const preference_model& model, uint32_t satisfied) {
    uint32_t out = 0;
    for (int a = 0; a < model.m; ++a) {
        if (!((satisfied >> a) & 1u)) continue;
        bool beaten = false;
        for (int b = 0; b < model.m && !beaten; ++b)
            if (((satisfied >> b) & 1u) && model.strictly_better(b, a)) beaten = true;
        if (!beaten) out |= 1u << a;
    }
    return out;
}

bool class_at_least(const preference_model& model, uint32_t c1, uint32_t c2) {
    for (int b = 0; b < model.m; ++b) {
        if (!((c2 >> b) & 1u)) continue;
        bool covered = false;
        for (int a = 0; a < model.m && !covered; ++a)
            if (((c1 >> a) & 1u) && model.at_least(a, b)) covered = true;
        if (!covered) return false;
    }
    return true;
}

class_rel compare_classes(const preference_model& model, uint32_t c1, uint32_t c2) {
    bool fwd = class_at_least(model, c1, c2);
    bool bwd = class_at_least(model, c2, c1);
    if (fwd && bwd) return class_rel::equivalent;
    if (fwd) return class_rel::strictly_better;
    if (bwd) return class_rel::strictly_worse;
    return class_rel::incomparable;
}

std::vector<uint32_t> max_classes(const preference_model& model, const std::vector<uint32_t>& classes) {
    std::vector<uint32_t> out;
    for (uint32_t c : classes) {
        bool beaten = false;
        for (uint32_t d : classes) {
            if (d == c) continue;
            if (compare_classes(model, d, c) == class_rel::strictly_better) { beaten = true; break; }
        }
        if (!beaten) out.push_back(c);
    }
    return out;
}

std::vector<uint32_t> min_classes(const preference_model& model, const std::vector<uint32_t>& classes) {
    std::vector<uint32_t> out;
    for (uint32_t c : classes) {
        bool beats = false;
        for (uint32_t d : classes) {
            if (d == c) continue;
            if (compare_classes(model, c, d) == class_rel::strictly_better) { beats = true; break; }
        }
        if (!beats) out.push_back(c);
    }
    return out;
}

int class_order::index_of(uint32_t cls) const {
    auto it = std::find(classes.begin(), classes.end(), cls);
    if (it == classes.end()) return -1;
    return static_cast<int>(it - classes.begin());
}

int class_order::rank_of(uint32_t cls) const {
    int i = index_of(cls);
    if (i < 0) throw input_error("rank_of: class not present in this order");
    return rank[static_cast<size_t>(i)];
}

class_order compute_ranks(const preference_model& model, std::vector<uint32_t> classes) {
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    class_order order;
    order.classes = classes;
    order.rank.assign(classes.size(), -1);

    std::vector<uint32_t> remaining = classes;
    int level = 0;
    while (!remaining.empty()) {
        std::vector<uint32_t> layer = max_classes(model, remaining);
        if (layer.empty())
            throw property_error("compute_ranks: empty maximal layer");
        for (uint32_t c : layer) {
            auto idx = std::find(order.classes.begin(), order.classes.end(), c) - order.classes.begin();
            order.rank[static_cast<size_t>(idx)] = level;
        }
        std::vector<uint32_t> rest;
        for (uint32_t c : remaining)
            if (std::find(layer.begin(), layer.end(), c) == layer.end()) rest.push_back(c);
        remaining = std::move(rest);
        ++level;
    }
    order.rank_max = level > 0 ? level - 1 : 0;
    return order;
}

} // namespace gsyn
