#include "gsyn/formula.hpp"
#include "gsyn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace gsyn {

formula_ptr make_tt() {
    return std::make_shared<formula>(formula{formula_kind::tt, -1, nullptr, nullptr});
}
formula_ptr make_atom(int idx) {
    return std::make_shared<formula>(formula{formula_kind::atom, idx, nullptr, nullptr});
}
formula_ptr make_not_atom(int idx) {
    return std::make_shared<formula>(formula{formula_kind::not_atom, idx, nullptr, nullptr});
}
formula_ptr make_conj(formula_ptr l, formula_ptr r) {
    return std::make_shared<formula>(formula{formula_kind::conj, -1, std::move(l), std::move(r)});
}
formula_ptr make_disj(formula_ptr l, formula_ptr r) {
    return std::make_shared<formula>(formula{formula_kind::disj, -1, std::move(l), std::move(r)});
}
formula_ptr make_next(formula_ptr f) {
    return std::make_shared<formula>(formula{formula_kind::next, -1, std::move(f), nullptr});
}
formula_ptr make_until(formula_ptr l, formula_ptr r) {
    return std::make_shared<formula>(formula{formula_kind::until, -1, std::move(l), std::move(r)});
}
formula_ptr make_eventually(formula_ptr f) {
    return make_until(make_tt(), std::move(f));
}

namespace {

struct token {
    enum kind_t { ident, bang, amp, pipe, lparen, rparen, op_x, op_f, op_u, end } kind;
    std::string text;
    size_t pos;
};

std::vector<token> lex(const std::string& text) {
    std::vector<token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '!') { out.push_back({token::bang, "!", i}); ++i; continue; }
        if (c == '&') { out.push_back({token::amp, "&", i}); ++i; continue; }
        if (c == '|') { out.push_back({token::pipe, "|", i}); ++i; continue; }
        if (c == '(') { out.push_back({token::lparen, "(", i}); ++i; continue; }
        if (c == ')') { out.push_back({token::rparen, ")", i}); ++i; continue; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            if (word == "X") out.push_back({token::op_x, word, i});
            else if (word == "F") out.push_back({token::op_f, word, i});
            else if (word == "U") out.push_back({token::op_u, word, i});
            else out.push_back({token::ident, word, i});
            i = j;
            continue;
        }
        throw input_error("formula: unexpected character '" + std::string(1, c) +
                          "' at offset " + std::to_string(i));
    }
    out.push_back({token::end, "", text.size()});
    return out;
}

struct parser {
    const std::vector<token>& toks;
    const std::vector<std::string>& atoms;
    size_t at = 0;

    const token& peek() const { return toks[at]; }
    token take() { return toks[at++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("formula: " + msg + " at offset " + std::to_string(peek().pos));
    }

    int atom_index(const token& t) const {
        auto it = std::find(atoms.begin(), atoms.end(), t.text);
        if (it == atoms.end())
            throw input_error("formula: unknown atom '" + t.text + "' at offset " +
                              std::to_string(t.pos));
        return static_cast<int>(it - atoms.begin());
    }

    // disj := conj ('|' conj)*
    formula_ptr parse_disj() {
        formula_ptr f = parse_conj();
        while (peek().kind == token::pipe) {
            take();
            f = make_disj(f, parse_conj());
        }
        return f;
    }

    // conj := until ('&' until)*
    formula_ptr parse_conj() {
        formula_ptr f = parse_until();
        while (peek().kind == token::amp) {
            take();
            f = make_conj(f, parse_until());
        }
        return f;
    }

    // until := unary ('U' until)?   (right-associative)
    formula_ptr parse_until() {
        formula_ptr f = parse_unary();
        if (peek().kind == token::op_u) {
            take();
            f = make_until(f, parse_until());
        }
        return f;
    }

    formula_ptr parse_unary() {
        switch (peek().kind) {
        case token::op_x: take(); return make_next(parse_unary());
        case token::op_f: take(); return make_eventually(parse_unary());
        case token::bang: {
            take();
            if (peek().kind == token::ident) {
                token t = take();
                return make_not_atom(atom_index(t));
            }
            fail("negation is only allowed on atoms");
        }
        default: return parse_primary();
        }
    }

    formula_ptr parse_primary() {
        if (peek().kind == token::lparen) {
            take();
            formula_ptr f = parse_disj();
            if (peek().kind != token::rparen) fail("expected ')'");
            take();
            return f;
        }
        if (peek().kind == token::ident) {
            token t = take();
            if (t.text == "true")
                throw input_error("formula: 'true' is reserved at offset " +
                                  std::to_string(t.pos));
            return make_atom(atom_index(t));
        }
        fail("expected an atom, '(', or a unary operator");
    }
};

} // namespace

formula_ptr parse_formula(const std::string& text, const std::vector<std::string>& atoms) {
    std::vector<token> toks = lex(text);
    parser p{toks, atoms};
    formula_ptr f = p.parse_disj();
    if (p.peek().kind != token::end) p.fail("trailing input");
    return f;
}

namespace {

bool is_eventually(const formula& f) {
    return f.kind == formula_kind::until && f.left->kind == formula_kind::tt;
}

int precedence(const formula& f) {
    switch (f.kind) {
    case formula_kind::disj: return 0;
    case formula_kind::conj: return 1;
    case formula_kind::until: return is_eventually(f) ? 3 : 2;
    default: return 3;
    }
}

void print(const formula& f, const std::vector<std::string>& atoms, int parent_prec,
           std::string& out) {
    int prec = precedence(f);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (f.kind) {
    case formula_kind::tt: out += "true"; break;
    case formula_kind::atom: out += atoms.at(static_cast<size_t>(f.atom)); break;
    case formula_kind::not_atom:
        out += '!';
        out += atoms.at(static_cast<size_t>(f.atom));
        break;
    case formula_kind::conj:
        print(*f.left, atoms, 1, out);
        out += " & ";
        print(*f.right, atoms, 2, out);
        break;
    case formula_kind::disj:
        print(*f.left, atoms, 0, out);
        out += " | ";
        print(*f.right, atoms, 1, out);
        break;
    case formula_kind::next:
        out += "X ";
        print(*f.left, atoms, 3, out);
        break;
    case formula_kind::until:
        if (is_eventually(f)) {
            out += "F ";
            print(*f.right, atoms, 3, out);
        } else {
            print(*f.left, atoms, 3, out);
            out += " U ";
            print(*f.right, atoms, 2, out);
        }
        break;
    }
    if (parens) out += ')';
}

} // namespace

std::string to_string(const formula& f, const std::vector<std::string>& atoms) {
    std::string out;
    print(f, atoms, 0, out);
    return out;
}

std::vector<const formula*> collect_subterms(const formula_ptr& f) {
    std::vector<const formula*> order;
    std::unordered_set<const formula*> seen;
    // Iterative post-order so deep formulas cannot overflow the stack.
    std::vector<std::pair<const formula*, bool>> stack{{f.get(), false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (seen.count(node)) continue;
        if (expanded) {
            seen.insert(node);
            order.push_back(node);
            continue;
        }
        stack.push_back({node, true});
        if (node->right) stack.push_back({node->right.get(), false});
        if (node->left) stack.push_back({node->left.get(), false});
    }
    return order;
}

bool eval_word(const formula_ptr& f, const word& w) {
    if (w.empty()) return false;
    std::vector<const formula*> nodes = collect_subterms(f);
    std::unordered_map<const formula*, size_t> index;
    for (size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;

    const size_t n = w.size();
    std::vector<char> cur(nodes.size()), nxt(nodes.size());
    for (size_t ti = n; ti-- > 0;) {
        bool has_next = ti + 1 < n;
        for (size_t i = 0; i < nodes.size(); ++i) {
            const formula* g = nodes[i];
            bool v = false;
            switch (g->kind) {
            case formula_kind::tt: v = true; break;
            case formula_kind::atom: v = (w[ti] >> g->atom) & 1u; break;
            case formula_kind::not_atom: v = !((w[ti] >> g->atom) & 1u); break;
            case formula_kind::conj:
                v = cur[index.at(g->left.get())] && cur[index.at(g->right.get())];
                break;
            case formula_kind::disj:
                v = cur[index.at(g->left.get())] || cur[index.at(g->right.get())];
                break;
            case formula_kind::next:
                v = has_next && nxt[index.at(g->left.get())];
                break;
            case formula_kind::until:
                // f U g == g | (f & X(f U g)) with a strict next.
                v = cur[index.at(g->right.get())] ||
                    (cur[index.at(g->left.get())] && has_next && nxt[i]);
                break;
            }
            cur[i] = v;
        }
        nxt = cur;
    }
    return cur[index.at(f.get())] != 0;
}

} // namespace gsyn
