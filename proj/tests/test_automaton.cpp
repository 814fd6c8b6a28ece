#include <doctest.h>

#include "support/random_regex.hpp"

#include "qreg/automaton.hpp"
#include "qreg/derivatives.hpp"

#include <set>

using namespace qreg;

namespace {

// Closure computed with ordered sets of printed canonical forms.
std::set<std::string> naive_closure(const Regex& e, const Alphabet& alphabet)
{
    std::set<std::string> seen;
    std::vector<Regex> todo{canonicalize(e).embed()};
    while (!todo.empty()) {
        Regex x = todo.back();
        todo.pop_back();
        if (!seen.insert(print(x)).second)
            continue;
        for (char a : alphabet)
            todo.push_back(canonicalize(step(x, a)).embed());
    }
    return seen;
}

} // namespace

TEST_SUITE("automaton")
{
    TEST_CASE("star of a letter")
    {
        const Regex as = parse("a*");
        const QuotientAutomaton aut = build({as}, Alphabet("a"));
        CHECK(aut.size() == naive_closure(as, Alphabet("a")).size());
        // a*, 1;a*, and 0;a* + 1;a* whose successor folds back onto itself
        CHECK(aut.size() == 3);
        for (StateId s = 0; s < aut.size(); ++s)
            CHECK(aut.output(s));
        CHECK(aut.state(0).embed() == as);
        CHECK(aut.state(1).embed() == Regex::seq(Regex::one(), as));
        CHECK(aut.next(0, 'a') == 1);
        CHECK(aut.next(1, 'a') == 2);
        CHECK(aut.next(2, 'a') == 2);
    }

    TEST_CASE("zero is a single rejecting loop")
    {
        const QuotientAutomaton aut = build({Regex::zero()}, Alphabet("a"));
        REQUIRE(aut.size() == 1);
        CHECK_FALSE(aut.output(0));
        CHECK(aut.next(0, 'a') == 0);
    }

    TEST_CASE("roots keep their order and may coincide")
    {
        const QuotientAutomaton aut = build({parse("a*"), parse("a+1"), parse("1+a")}, Alphabet("a"));
        REQUIRE(aut.roots().size() == 3);
        CHECK(aut.roots()[0] == 0);
        CHECK(aut.roots()[1] == aut.roots()[2]);
        CHECK(aut.find(parse("a+1")) == aut.roots()[1]);
        CHECK_FALSE(aut.find(parse("b")).has_value());
    }

    TEST_CASE("product pairs")
    {
        const QuotientAutomaton aut = build({parse("a*"), parse("a+1")}, Alphabet("a"));
        const auto pairs = product_pairs(aut, aut.roots()[0], aut.roots()[1]);
        REQUIRE_FALSE(pairs.empty());
        CHECK(pairs.front() == StatePair(aut.roots()[0], aut.roots()[1]));
        const std::size_t n = aut.size();
        CHECK(pairs.size() <= n * (n + 1) / 2);

        const auto diag = product_pairs(aut, 0, 0);
        for (const auto& p : diag)
            CHECK(p.diagonal());

        const QuotientAutomaton single = build({parse("a")}, Alphabet("ab"));
        for (const auto& p : product_pairs(single, 0, 0))
            CHECK(p.diagonal());
    }

    TEST_CASE("state cap and foreign letters")
    {
        BuildOptions tiny;
        tiny.max_states = 2;
        CHECK_THROWS_AS(build({parse("a*")}, Alphabet("a"), tiny), StateLimitExceeded);
        CHECK_THROWS_AS(build({parse("b")}, Alphabet("a")), std::invalid_argument);
    }

    TEST_CASE("the automaton recognises the language")
    {
        testing::Rng rng(31);
        const auto words = testing::all_words("ab", 6);
        for (int i = 0; i < 200; ++i) {
            const Regex e = testing::random_regex(rng, 15, "ab");
            const QuotientAutomaton aut = build({e}, Alphabet("ab"));
            INFO(print(e));
            for (const auto& w : words)
                CHECK(aut.output(aut.run(aut.roots()[0], w)) == member(e, w));
        }
    }

    TEST_CASE("transitions are total and states distinct")
    {
        testing::Rng rng(32);
        for (int i = 0; i < 1000; ++i) {
            const Regex e = testing::random_regex(rng, 30, "ab");
            const QuotientAutomaton aut = build({e}, Alphabet("ab"));
            const Dfa& dfa = aut.dfa();
            CHECK(dfa.transitions.size() == aut.size() * 2);
            for (StateId t : dfa.transitions)
                CHECK(t < aut.size());
            if (i % 50 == 0)
                CHECK(aut.size() == naive_closure(e, Alphabet("ab")).size());
        }
    }

    TEST_CASE("dot output")
    {
        const std::string dot = to_dot(build({parse("a*")}, Alphabet("a")));
        CHECK(dot.find("digraph") != std::string::npos);
        CHECK(dot.find("doublecircle") != std::string::npos);
    }
}
