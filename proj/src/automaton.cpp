#include "gsyn/automaton.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace gsyn {

int goal_automaton::step(int state, uint32_t symbol) const {
    return trans[static_cast<size_t>(state) * (1u << num_atoms) + symbol];
}

bool goal_automaton::accepts(const word& w) const {
    int q = initial;
    for (uint32_t sym : w) q = step(q, sym);
    return accepting[static_cast<size_t>(q)] != 0;
}

int dfa_step(const goal_automaton& a, int state, uint32_t symbol) {
    if (state < 0 || state >= a.num_states)
        throw input_error("dfa_step: state " + std::to_string(state) + " out of range");
    if (symbol >= (1u << a.num_atoms))
        throw input_error("dfa_step: symbol " + std::to_string(symbol) + " out of range");
    return a.step(state, symbol);
}

namespace {

// Nondeterministic obligation-set view of the formula: an NFA state is a
// bitmask of pending subterms, the empty mask accepts, and reading a symbol
// rewrites each obligation into the alternatives returned here.
struct obligation_nfa {
    std::vector<const formula*> nodes;
    std::unordered_map<const formula*, int> id;

    explicit obligation_nfa(const formula_ptr& f) {
        nodes = collect_subterms(f);
        if (nodes.size() > 64)
            throw budget_error("compile_dfa: formula closure exceeds 64 subterms");
        for (size_t i = 0; i < nodes.size(); ++i) id[nodes[i]] = static_cast<int>(i);
    }

    uint64_t bit(const formula* g) const { return uint64_t{1} << id.at(g); }

    // Successor masks for a single obligation under one symbol.
    std::vector<uint64_t> moves(const formula* g, uint32_t symbol) const {
        switch (g->kind) {
        case formula_kind::tt:
            return {0};
        case formula_kind::atom:
            if ((symbol >> g->atom) & 1u) return {0};
            return {};
        case formula_kind::not_atom:
            if (!((symbol >> g->atom) & 1u)) return {0};
            return {};
        case formula_kind::conj: {
            auto l = moves(g->left.get(), symbol);
            auto r = moves(g->right.get(), symbol);
            std::vector<uint64_t> out;
            for (uint64_t ml : l)
                for (uint64_t mr : r) out.push_back(ml | mr);
            return out;
        }
        case formula_kind::disj: {
            auto out = moves(g->left.get(), symbol);
            auto r = moves(g->right.get(), symbol);
            out.insert(out.end(), r.begin(), r.end());
            return out;
        }
        case formula_kind::next:
            return {bit(g->left.get())};
        case formula_kind::until: {
            // g == l U r: either r is discharged now, or l holds now and the
            // until obligation carries over to the next position.
            auto out = moves(g->right.get(), symbol);
            for (uint64_t m : moves(g->left.get(), symbol)) out.push_back(m | bit(g));
            return out;
        }
        }
        return {};
    }

    std::vector<uint64_t> mask_moves(uint64_t mask, uint32_t symbol) const {
        std::vector<uint64_t> acc{0};
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
            if (!((mask >> i) & 1u)) continue;
            auto opts = moves(nodes[static_cast<size_t>(i)], symbol);
            if (opts.empty()) return {};
            std::vector<uint64_t> next;
            next.reserve(acc.size() * opts.size());
            for (uint64_t a : acc)
                for (uint64_t o : opts) next.push_back(a | o);
            acc = std::move(next);
        }
        return acc;
    }
};

// Keep only set-minimal masks: a mask with strictly more obligations than
// another accepts a subset of its words and is redundant.
void prune_to_minimal(std::vector<uint64_t>& masks) {
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<uint64_t> keep;
    for (uint64_t m : masks) {
        bool dominated = false;
        for (uint64_t k : keep) {
            if ((k & m) == k) { dominated = true; break; }
        }
        if (!dominated) keep.push_back(m);
    }
    masks = std::move(keep);
}

constexpr int kMaxDfaStates = 1 << 16;

goal_automaton minimize(const goal_automaton& a) {
    const int nsym = 1 << a.num_atoms;
    std::vector<int> cls(static_cast<size_t>(a.num_states));
    for (int q = 0; q < a.num_states; ++q) cls[static_cast<size_t>(q)] = a.accepting[static_cast<size_t>(q)] ? 1 : 0;

    int num_classes = 2;
    for (;;) {
        std::map<std::vector<int>, int> sig_to_class;
        std::vector<int> next(static_cast<size_t>(a.num_states));
        for (int q = 0; q < a.num_states; ++q) {
            std::vector<int> sig;
            sig.reserve(static_cast<size_t>(nsym) + 1);
            sig.push_back(cls[static_cast<size_t>(q)]);
            for (int s = 0; s < nsym; ++s)
                sig.push_back(cls[static_cast<size_t>(a.trans[static_cast<size_t>(q) * nsym + s])]);
            auto [it, inserted] = sig_to_class.emplace(std::move(sig), static_cast<int>(sig_to_class.size()));
            (void)inserted;
            next[static_cast<size_t>(q)] = it->second;
        }
        int n = static_cast<int>(sig_to_class.size());
        cls = std::move(next);
        if (n == num_classes) break;
        num_classes = n;
    }

    // Renumber classes breadth-first from the initial state's class.
    std::vector<int> renum(static_cast<size_t>(num_classes), -1);
    std::vector<int> rep(static_cast<size_t>(num_classes), -1);
    for (int q = a.num_states - 1; q >= 0; --q) rep[static_cast<size_t>(cls[static_cast<size_t>(q)])] = q;
    std::queue<int> bfs;
    int assigned = 0;
    renum[static_cast<size_t>(cls[static_cast<size_t>(a.initial)])] = assigned++;
    bfs.push(cls[static_cast<size_t>(a.initial)]);
    while (!bfs.empty()) {
        int c = bfs.front();
        bfs.pop();
        int q = rep[static_cast<size_t>(c)];
        for (int s = 0; s < nsym; ++s) {
            int d = cls[static_cast<size_t>(a.trans[static_cast<size_t>(q) * nsym + s])];
            if (renum[static_cast<size_t>(d)] < 0) {
                renum[static_cast<size_t>(d)] = assigned++;
                bfs.push(d);
            }
        }
    }

    goal_automaton out;
    out.num_atoms = a.num_atoms;
    out.num_states = assigned;
    out.initial = 0;
    out.accepting.assign(static_cast<size_t>(assigned), 0);
    out.trans.assign(static_cast<size_t>(assigned) * static_cast<size_t>(nsym), 0);
    for (int c = 0; c < num_classes; ++c) {
        int nc = renum[static_cast<size_t>(c)];
        if (nc < 0) continue;  // unreachable after merging
        int q = rep[static_cast<size_t>(c)];
        out.accepting[static_cast<size_t>(nc)] = a.accepting[static_cast<size_t>(q)];
        for (int s = 0; s < nsym; ++s) {
            int d = renum[static_cast<size_t>(cls[static_cast<size_t>(a.trans[static_cast<size_t>(q) * nsym + s])])];
            out.trans[static_cast<size_t>(nc) * static_cast<size_t>(nsym) + static_cast<size_t>(s)] = d;
        }
    }
    return out;
}

} // namespace

goal_automaton compile_dfa(const formula_ptr& f, int num_atoms) {
    if (num_atoms < 0 || num_atoms > 16)
        throw budget_error("compile_dfa: atom count must be between 0 and 16");
    obligation_nfa nfa(f);
    const int nsym = 1 << num_atoms;

    // Subset construction over obligation masks. A subset state accepts as
    // soon as it contains the empty mask; acceptance is then made absorbing.
    std::map<std::vector<uint64_t>, int> ids;
    std::vector<std::vector<uint64_t>> sets;
    std::vector<char> acc;
    auto intern = [&](std::vector<uint64_t> masks) {
        prune_to_minimal(masks);
        bool accepting = !masks.empty() && masks.front() == 0;
        if (accepting) masks = {0};  // collapse all accepting subsets
        auto [it, inserted] = ids.emplace(masks, static_cast<int>(sets.size()));
        if (inserted) {
            sets.push_back(it->first);
            acc.push_back(accepting ? 1 : 0);
            if (static_cast<int>(sets.size()) > kMaxDfaStates)
                throw budget_error("compile_dfa: determinization exceeds " +
                                   std::to_string(kMaxDfaStates) + " states");
        }
        return it->second;
    };

    int init = intern({nfa.bit(f.get())});
    std::vector<int> trans;
    for (size_t q = 0; q < sets.size(); ++q) {
        trans.resize((q + 1) * static_cast<size_t>(nsym));
        for (int s = 0; s < nsym; ++s) {
            int dst;
            if (acc[q]) {
                dst = static_cast<int>(q);  // absorbing accept
            } else {
                std::vector<uint64_t> next;
                for (uint64_t m : sets[q])
                    for (uint64_t n : nfa.mask_moves(m, static_cast<uint32_t>(s)))
                        next.push_back(n);
                dst = intern(std::move(next));
            }
            trans[q * static_cast<size_t>(nsym) + static_cast<size_t>(s)] = dst;
        }
    }

    goal_automaton raw;
    raw.num_states = static_cast<int>(sets.size());
    raw.num_atoms = num_atoms;
    raw.initial = init;
    raw.accepting = std::move(acc);
    raw.trans = std::move(trans);
    return minimize(raw);
}

std::string render_automaton(const goal_automaton& a,
                             const std::vector<std::string>& atoms) {
    std::ostringstream out;
    out << "states " << a.num_states << " initial " << a.initial << " accepting";
    for (int q = 0; q < a.num_states; ++q)
        if (a.accepting[static_cast<size_t>(q)]) out << ' ' << q;
    out << '\n';
    const int nsym = 1 << a.num_atoms;
    for (int q = 0; q < a.num_states; ++q) {
        for (int s = 0; s < nsym; ++s) {
            out << q << " {";
            bool first = true;
            for (int i = 0; i < a.num_atoms; ++i) {
                if ((s >> i) & 1) {
                    if (!first) out << ',';
                    out << atoms[static_cast<size_t>(i)];
                    first = false;
                }
            }
            out << "} " << a.trans[static_cast<size_t>(q) * static_cast<size_t>(nsym) + static_cast<size_t>(s)] << '\n';
        }
    }
    return out.str();
}

} // namespace gsyn
