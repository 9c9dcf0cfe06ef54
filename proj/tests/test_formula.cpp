#include "doctest.h"

#include "gsyn/errors.hpp"
#include "gsyn/formula.hpp"

using namespace gsyn;

namespace {

const std::vector<std::string> kAtoms = {"e1", "e2", "e3"};

word mk(std::initializer_list<uint32_t> syms) { return word(syms); }

}  // namespace

TEST_CASE("parse bare atom") {
    auto f = parse_formula("e1", kAtoms);
    CHECK(f->kind == formula_kind::atom);
    CHECK(f->atom == 0);
}

TEST_CASE("parse negated atom") {
    auto f = parse_formula("!e2", kAtoms);
    CHECK(f->kind == formula_kind::not_atom);
    CHECK(f->atom == 1);
}

TEST_CASE("parse eventually nesting") {
    auto f = parse_formula("F(e1 & F e2)", kAtoms);
    REQUIRE(f->kind == formula_kind::until);
    CHECK(f->left->kind == formula_kind::tt);
    auto body = f->right;
    REQUIRE(body->kind == formula_kind::conj);
    CHECK(body->left->kind == formula_kind::atom);
    CHECK(body->left->atom == 0);
    REQUIRE(body->right->kind == formula_kind::until);
    CHECK(body->right->left->kind == formula_kind::tt);
    CHECK(body->right->right->atom == 1);
}

TEST_CASE("parse until with negated guard") {
    auto f = parse_formula("!e2 U e3", kAtoms);
    REQUIRE(f->kind == formula_kind::until);
    CHECK(f->left->kind == formula_kind::not_atom);
    CHECK(f->left->atom == 1);
    CHECK(f->right->kind == formula_kind::atom);
    CHECK(f->right->atom == 2);
}

TEST_CASE("precedence: unary over U over conj over disj") {
    auto f = parse_formula("e1 | e2 & e3 U e1", kAtoms);
    REQUIRE(f->kind == formula_kind::disj);
    CHECK(f->left->atom == 0);
    REQUIRE(f->right->kind == formula_kind::conj);
    CHECK(f->right->left->atom == 1);
    REQUIRE(f->right->right->kind == formula_kind::until);
    CHECK(f->right->right->left->atom == 2);
    CHECK(f->right->right->right->atom == 0);
}

TEST_CASE("until is right associative") {
    auto f = parse_formula("e1 U e2 U e3", kAtoms);
    REQUIRE(f->kind == formula_kind::until);
    CHECK(f->left->atom == 0);
    REQUIRE(f->right->kind == formula_kind::until);
    CHECK(f->right->left->atom == 1);
    CHECK(f->right->right->atom == 2);
}

TEST_CASE("next binds tighter than conj") {
    auto f = parse_formula("X e1 & e2", kAtoms);
    REQUIRE(f->kind == formula_kind::conj);
    CHECK(f->left->kind == formula_kind::next);
    CHECK(f->left->left->atom == 0);
    CHECK(f->right->atom == 1);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_formula("U e1", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("!(e1 & e2)", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("(e1", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("zz", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("e1 e2", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("true", kAtoms), input_error);
    CHECK_THROWS_AS(parse_formula("e1 &", kAtoms), input_error);
}

TEST_CASE("to_string round trips through the parser") {
    const char* texts[] = {
        "e1",
        "!e2",
        "F(e1 & F e2)",
        "!e2 U e3",
        "F(e3 & F e2)",
        "e1 | e2 & e3",
        "X(e1 U e2)",
        "(e1 | e2) U (e3 & !e1)",
    };
    for (const char* t : texts) {
        auto f = parse_formula(t, kAtoms);
        std::string printed = to_string(*f, kAtoms);
        auto g = parse_formula(printed, kAtoms);
        CHECK(to_string(*g, kAtoms) == printed);
    }
}

TEST_CASE("eval_word basics") {
    auto fe1 = parse_formula("F e1", kAtoms);
    CHECK(eval_word(fe1, mk({0, 1})));
    CHECK(eval_word(fe1, mk({1})));
    CHECK_FALSE(eval_word(fe1, mk({0, 0})));
    CHECK_FALSE(eval_word(fe1, mk({})));

    auto atom = parse_formula("e1", kAtoms);
    CHECK(eval_word(atom, mk({1})));
    CHECK(eval_word(atom, mk({3, 0})));
    CHECK_FALSE(eval_word(atom, mk({2})));
    CHECK_FALSE(eval_word(atom, mk({})));
}

TEST_CASE("eval_word until semantics") {
    auto f = parse_formula("!e2 U e3", kAtoms);
    CHECK_FALSE(eval_word(f, mk({2, 4})));
    CHECK(eval_word(f, mk({0, 4})));
    CHECK(eval_word(f, mk({4})));
    // guard is not required at the position where the goal fires
    CHECK(eval_word(f, mk({6})));
    CHECK(eval_word(f, mk({0, 6})));
    CHECK_FALSE(eval_word(f, mk({2, 0, 4})));
}

TEST_CASE("eval_word nested eventually") {
    auto f = parse_formula("F(e1 & F e2)", kAtoms);
    CHECK(eval_word(f, mk({1, 0, 2})));
    CHECK(eval_word(f, mk({3})));
    CHECK_FALSE(eval_word(f, mk({1, 0, 0})));
    CHECK_FALSE(eval_word(f, mk({2, 1})));
    CHECK(eval_word(f, mk({2, 1, 2})));
}

TEST_CASE("eval_word next needs a successor position") {
    auto f = parse_formula("X e1", kAtoms);
    CHECK_FALSE(eval_word(f, mk({1})));
    CHECK(eval_word(f, mk({0, 1})));
    CHECK_FALSE(eval_word(f, mk({1, 0})));
}

TEST_CASE("collect_subterms is child before parent and duplicate free") {
    auto f = parse_formula("F(e1 & F e2)", kAtoms);
    auto nodes = collect_subterms(f);
    CHECK(nodes.back() == f.get());
    for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = i + 1; j < nodes.size(); ++j) CHECK(nodes[i] != nodes[j]);
        const formula* n = nodes[i];
        auto pos_of = [&](const formula* x) {
            for (size_t k = 0; k < nodes.size(); ++k)
                if (nodes[k] == x) return k;
            return nodes.size();
        };
        if (n->left) CHECK(pos_of(n->left.get()) < i);
        if (n->right) CHECK(pos_of(n->right.get()) < i);
    }
}
