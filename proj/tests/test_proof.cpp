#include <doctest.h>

#include "support/mutate.hpp"
#include "support/paper_example.hpp"
#include "support/random_regex.hpp"

#include "qreg/oracle.hpp"
#include "qreg/proof.hpp"

using namespace qreg;

namespace {

const Config kHalf;

bool rejects(const Derivation& d, const Config& cfg = kHalf, const std::vector<Judgement>& hyps = {})
{
    return !check(d, cfg, hyps).ok;
}

} // namespace

TEST_SUITE("proof")
{
    TEST_CASE("rule names round-trip")
    {
        for (Rule r : all_rules())
            CHECK(rule_from_name(rule_name(r)) == r);
        CHECK(rule_name(Rule::OneS) == "1S");
        CHECK(rule_name(Rule::ZeroS) == "0S");
        CHECK_FALSE(rule_from_name("Cut").has_value());
    }

    TEST_CASE("hand-built derivation of a* ==_1/4 a + 1")
    {
        const Derivation d = testing::hand_built_example();
        CHECK(d.conclusion() == Judgement{parse("a*"), parse("a+1"), Rational(1, 4)});
        const CheckResult r = check(d, kHalf);
        INFO(r.path, " ", r.message);
        CHECK(r.ok);
    }

    TEST_CASE("side conditions")
    {
        const Regex a = parse("a");
        const Regex b = parse("b");
        CHECK(rejects(Derivation(Judgement{a, b, Rational(0)}, Rule::Refl)));
        CHECK(rejects(Derivation(Judgement{a, a, Rational(1, 2)}, Rule::Refl)));

        const Derivation base = top(parse("a*"), Regex::zero());
        const Derivation half = npref('a', base, Rational(1, 2));
        CHECK_FALSE(rejects(half));
        const Derivation quarter_from_half = npref('a', max_to(refl(a), Rational(1, 2)), Rational(1, 8));
        CHECK(rejects(quarter_from_half));
        CHECK(rejects(npref('a', base, Rational(1, 4))));

        // Max must strictly raise
        CHECK(rejects(Derivation(Judgement{a, a, Rational(0)}, Rule::Max, {refl(a)})));
        // Triang sums epsilons and needs the stated midpoint
        const Derivation t = triang(top(a, b), top(b, a));
        CHECK(t.conclusion().eps == 2);
        CHECK_FALSE(rejects(t));
        Meta bad = t.meta();
        bad.midpoint = a;
        CHECK(rejects(Derivation(t.conclusion(), Rule::Triang, t.premises(), bad)));
        // Top is always fine at 1 but not below
        CHECK(rejects(Derivation(Judgement{a, b, Rational(1, 2)}, Rule::Top)));
        // axioms must match their shape
        CHECK_FALSE(rejects(sl1(a)));
        CHECK(rejects(Derivation(Judgement{Regex::sum(a, b), a, Rational(0)}, Rule::SL1)));
        CHECK(rejects(Derivation(Judgement{Regex::star(a), Regex::star(a), Rational(0)}, Rule::Tight)));
        // SL5 needs the max of both premises
        const Derivation s = sl5(top(a, b), refl(a));
        CHECK_FALSE(rejects(s));
        CHECK(rejects(Derivation(Judgement{s.conclusion().left, s.conclusion().right, Rational(2)}, Rule::SL5,
                                 s.premises())));
        // NExp needs equal epsilons
        CHECK(rejects(Derivation(Judgement{Regex::sum(a, a), Regex::sum(b, a), Rational(1)}, Rule::NExp,
                                 {top(a, b), refl(a)})));
        CHECK_FALSE(rejects(nexp_sum(top(a, b), refl_at(a, 1))));
    }

    TEST_CASE("hypotheses must be declared")
    {
        const Judgement h{parse("a"), parse("b"), Rational(1, 2)};
        CHECK(rejects(hypothesis(h)));
        CHECK_FALSE(rejects(hypothesis(h), kHalf, {h}));
        CHECK(rejects(hypothesis(Judgement{h.left, h.right, Rational(1, 4)}), kHalf, {h}));
    }

    TEST_CASE("failure paths point at the broken node")
    {
        const Derivation good = testing::hand_built_example();
        const Derivation broken = Derivation(good.conclusion(), good.rule(),
                                             {good.premises()[0],
                                              Derivation(good.premises()[1].conclusion(), Rule::Refl)},
                                             good.meta());
        const CheckResult r = check(broken, kHalf);
        CHECK_FALSE(r.ok);
        CHECK(r.path == "root/1");
        CHECK(r.rule == Rule::Refl);
    }

    TEST_CASE("synthesis examples")
    {
        const auto d = std::get<Derivation>(synthesize(parse("a*"), parse("a+1"), Rational(1, 4), kHalf));
        CHECK(d.conclusion() == Judgement{parse("a*"), parse("a+1"), Rational(1, 4)});
        CHECK(check(d, kHalf).ok);

        const auto same = std::get<Derivation>(synthesize(parse("a;b"), parse("a;b"), Rational(0), kHalf));
        CHECK(same.rule() == Rule::Refl);
        CHECK(same.premises().empty());

        const auto refusal = std::get<Refusal>(synthesize(parse("a*"), parse("a+1"), Rational(1, 8), kHalf));
        CHECK(refusal.distance == Rational(1, 4));
        CHECK(refusal.witness == Word("aa"));

        const auto loose = std::get<Derivation>(synthesize(parse("a*"), parse("a+1"), Rational(2, 7), kHalf));
        CHECK(loose.conclusion().eps == Rational(2, 7));
        CHECK(check(loose, kHalf).ok);
    }

    TEST_CASE("language-equal pairs use a template")
    {
        const auto d = std::get<Derivation>(synthesize(parse("a*"), parse("(a+1)*"), Rational(0), kHalf));
        CHECK(d.rule() == Rule::ContTemplate);
        CHECK(check(d, kHalf).ok);
        const auto aci = std::get<Derivation>(synthesize(parse("a+b"), parse("b+a+a"), Rational(0), kHalf));
        CHECK(aci.rule() != Rule::ContTemplate);
        CHECK(check(aci, kHalf).ok);
    }

    TEST_CASE("templates for unequal languages are rejected")
    {
        TemplateSpec spec;
        spec.schema = "provability";
        spec.params = {{"left", "a*"}, {"right", "a+1"}};
        CHECK(rejects(cont_template(Judgement{parse("a*"), parse("a+1"), Rational(0)}, spec)));
        // far enough apart that spot checks alone would pass
        spec.params = {{"left", "aaaaaaaaaaaa"}, {"right", "aaaaaaaaaaaa+aaaaaaaaaaaaa"}};
        CHECK(rejects(cont_template(Judgement{parse("aaaaaaaaaaaa"), parse("aaaaaaaaaaaa+aaaaaaaaaaaaa"),
                                              Rational(0)},
                                    spec)));
        spec.schema = "nonsense";
        CHECK(rejects(cont_template(Judgement{parse("a"), parse("a"), Rational(0)}, spec)));
    }

    TEST_CASE("normal form proofs")
    {
        const Derivation a = normal_form_proof(parse("a"), Alphabet("a"));
        CHECK(a.conclusion().right == parse("a;1 + 0"));
        CHECK(check(a, kHalf).ok);

        const Derivation zero = normal_form_proof(parse("0"), Alphabet("a"));
        CHECK(zero.conclusion().right == parse("a;0 + 0"));
        CHECK(check(zero, kHalf).ok);

        const Derivation tight_star = normal_form_proof(parse("(a+1)*"), Alphabet("a"));
        CHECK(check(tight_star, kHalf).ok);
        bool uses_tight = false;
        for (const auto& n : testing::distinct_nodes(tight_star))
            uses_tight = uses_tight || n.rule() == Rule::Tight;
        CHECK(uses_tight);

        testing::Rng rng(51);
        for (int i = 0; i < 150; ++i) {
            const Regex e = testing::random_regex(rng, 12, "ab");
            const Derivation d = normal_form_proof(e, Alphabet("ab"));
            INFO(print(e));
            CHECK(d.conclusion() == Judgement{e, fundamental_decomposition(e, Alphabet("ab")), Rational(0)});
            const CheckResult r = check(d, kHalf);
            INFO(r.path, " ", r.message);
            CHECK(r.ok);
        }
    }

    TEST_CASE("ACI proofs")
    {
        testing::Rng rng(52);
        for (int i = 0; i < 150; ++i) {
            const Regex e = testing::random_regex(rng, 14, "ab");
            const Regex r = testing::random_aci_rewrite(rng, e);
            const Derivation d = aci_proof(e, r);
            CHECK(d.conclusion() == Judgement{e, r, Rational(0)});
            CHECK(check(d, kHalf).ok);
        }
        CHECK_THROWS_AS(aci_proof(parse("a"), parse("b")), std::invalid_argument);
    }

    TEST_CASE("generalized prefix")
    {
        const Derivation premise = top(parse("a*"), parse("0"));
        const Derivation by_letter = generalized_prefix(premise, parse("a"), Rational(1, 2), kHalf);
        CHECK(by_letter.rule() == Rule::NPref);
        CHECK(check(by_letter, kHalf).ok);

        const Derivation by_zero = generalized_prefix(premise, parse("0"), Rational(1, 2), kHalf);
        CHECK(by_zero.conclusion().left == parse("0;a*"));
        CHECK(check(by_zero, kHalf).ok);

        const Derivation by_sum = generalized_prefix(premise, parse("a+b"), Rational(1, 2), kHalf);
        CHECK(by_sum.conclusion() == Judgement{parse("(a+b);a*"), parse("(a+b);0"), Rational(1, 2)});
        CHECK(check(by_sum, kHalf).ok);
        bool has_sl5 = false;
        bool has_d2 = false;
        for (const auto& n : testing::distinct_nodes(by_sum)) {
            has_sl5 = has_sl5 || n.rule() == Rule::SL5;
            has_d2 = has_d2 || n.rule() == Rule::D2;
        }
        CHECK(has_sl5);
        CHECK(has_d2);

        for (const char* e : {"a;b", "(a+b);(b+1)", "a;b*", "(a;1);b", "0;a*", "b+0"}) {
            const Derivation d = generalized_prefix(premise, parse(e), Rational(1, 2), kHalf);
            INFO(e);
            CHECK(check(d, kHalf).ok);
        }
        CHECK_THROWS_AS(generalized_prefix(premise, parse("a*"), Rational(1, 2), kHalf), std::invalid_argument);
    }

    TEST_CASE("star unrolling")
    {
        const Judgement hyp{parse("a*"), parse("a;a* + 1"), Rational(0)};
        const Derivation two = star_unroll_proof(hyp, 2, kHalf);
        CHECK(two.conclusion() == Judgement{parse("a*"), parse("a*;1"), Rational(1, 4)});
        CHECK(check(two, kHalf, {hyp}).ok);
        CHECK(rejects(two, kHalf));

        const Derivation zero = star_unroll_proof(hyp, 0, kHalf);
        CHECK(zero.conclusion().eps == 1);
        CHECK(check(zero, kHalf, {hyp}).ok);

        CHECK(star_unroll_proof(hyp, 3, kHalf).conclusion().eps == Rational(1, 8));
        for (unsigned n = 0; n <= 10; ++n)
            CHECK(check(star_unroll_proof(hyp, n, kHalf), kHalf, {hyp}).ok);

        const Judgement other{parse("a*"), parse("a*;a + 1"), Rational(0)};
        CHECK_THROWS(star_unroll_proof(other, 2, kHalf));
        const Judgement shaped{parse("x"), parse("(a;b);x + a"), Rational(0)};
        for (unsigned n = 0; n <= 4; ++n)
            CHECK(check(star_unroll_proof(shaped, n, kHalf), kHalf, {shaped}).ok);
    }

    TEST_CASE("Salomaa rule")
    {
        const Judgement hyp{parse("a*"), parse("a;a* + 1"), Rational(0)};
        const Derivation d = salomaa_rule(hyp, kHalf);
        CHECK(d.conclusion() == Judgement{parse("a*"), parse("a*;1"), Rational(0)});
        CHECK(d.rule() == Rule::ContTemplate);
        REQUIRE(d.meta().templ.has_value());
        for (unsigned n = 0; n <= 8; ++n)
            CHECK(check(instantiate(*d.meta().templ, n, kHalf), kHalf, {hyp}).ok);
        CHECK(distance(parse("a*"), parse("a*;1"), kHalf).rational == 0);

        const Judgement nullable{parse("a*"), parse("a*;a* + 1"), Rational(0)};
        CHECK_THROWS_AS(salomaa_rule(nullable, kHalf), std::invalid_argument);
        CHECK_THROWS_AS(unroll_hypothesis_parts(Judgement{parse("a"), parse("a"), Rational(0)}),
                        std::invalid_argument);
    }

    TEST_CASE("bisimulation certificates")
    {
        CHECK(check_bisim(BisimCertificate{}, parse("a;b"), parse("a;b"), kHalf));
        CHECK(check_bisim(derivative_closure(parse("a*"), parse("(a+1)*")), parse("a*"), parse("(a+1)*"), kHalf));
        CHECK_FALSE(check_bisim(derivative_closure(parse("a*"), parse("a+1")), parse("a*"), parse("a+1"), kHalf));
        CHECK_FALSE(check_bisim(BisimCertificate{}, parse("a*"), parse("(a+1)*"), kHalf));
    }

    TEST_CASE("synthesized certificates are sound and mutants cannot lie")
    {
        testing::Rng rng(53);
        const Config cfg;
        int checked = 0;
        for (int i = 0; i < 60; ++i) {
            const Regex e = testing::random_regex(rng, 8, "ab");
            const Regex f = testing::random_regex(rng, 8, "ab");
            const Rational d = distance(e, f, cfg).rational;
            const auto r = synthesize(e, f, d, cfg);
            REQUIRE(std::holds_alternative<Derivation>(r));
            const Derivation& proof = std::get<Derivation>(r);
            CHECK(check(proof, cfg).ok);
            for (int k = 0; k < 3; ++k) {
                const Derivation m = testing::mutate(rng, proof, cfg, "ab");
                if (check(m, cfg).ok) {
                    ++checked;
                    const Judgement& j = m.conclusion();
                    CHECK(distance(j.left, j.right, cfg).rational <= j.eps);
                }
            }
        }
        MESSAGE("mutants still passing: ", checked);
    }

    TEST_CASE("synthesis is exact")
    {
        testing::Rng rng(54);
        const Config cfg(Rational(1, 3));
        for (int i = 0; i < 60; ++i) {
            const Regex e = testing::random_regex(rng, 8, "ab");
            const Regex f = testing::random_regex(rng, 8, "ab");
            const Rational d = distance(e, f, cfg).rational;
            if (d == 0)
                continue;
            CHECK(std::holds_alternative<Refusal>(synthesize(e, f, d * Rational(9, 10), cfg)));
            const auto above = synthesize(e, f, d + Rational(1, 7), cfg);
            REQUIRE(std::holds_alternative<Derivation>(above));
            CHECK(check(std::get<Derivation>(above), cfg).ok);
        }
    }

    TEST_CASE("chain rejects gaps")
    {
        CHECK_THROWS(chain({refl(parse("a")), refl(parse("b"))}));
        CHECK(chain({refl(parse("a"))}).rule() == Rule::Refl);
    }
}
