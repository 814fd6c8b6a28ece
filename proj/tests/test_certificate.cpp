#include <doctest.h>

#include "support/paper_example.hpp"
#include "support/random_regex.hpp"

#include "qreg/certificate.hpp"

using namespace qreg;
using nlohmann::json;

namespace {

Certificate example_certificate()
{
    return Certificate{Rational(1, 2), {}, testing::hand_built_example()};
}

} // namespace

TEST_SUITE("certificate")
{
    TEST_CASE("hand-built example round-trips")
    {
        const Certificate cert = example_certificate();
        const Certificate back = deserialize(serialize(cert));
        CHECK(back.lambda == cert.lambda);
        CHECK(same_tree(back.root, cert.root));
        CHECK(check(back).ok);
        CHECK(serialize(back) == serialize(cert));
    }

    TEST_CASE("shared nodes are written once")
    {
        const Derivation shared = top(parse("a"), parse("b"));
        const Derivation root = triang(shared, symm(shared));
        const json doc = to_json(Certificate{Rational(1, 2), {}, root});
        const std::string text = doc.dump();
        CHECK(text.find("\"ref\"") != std::string::npos);
        const Certificate back = certificate_from_json(doc);
        CHECK(back.root.premises()[0].id() == back.root.premises()[1].premises()[0].id());
        CHECK(node_count(back.root) == 3);
    }

    TEST_CASE("rationals are exact")
    {
        json doc = to_json(example_certificate());
        CHECK(doc["root"]["conclusion"]["eps"] == "1/4");
        const Judgement j = judgement_from_json(json{{"left", "a*"}, {"right", "a+1"}, {"eps", "1/4"}});
        CHECK(j.eps == Rational(1, 4));
        const Judgement d = judgement_from_json(json{{"left", "a"}, {"right", "a"}, {"eps", "0.125"}});
        CHECK(d.eps == Rational(1, 8));
    }

    TEST_CASE("malformed documents are rejected")
    {
        json doc = to_json(example_certificate());
        json bad_rule = doc;
        bad_rule["root"]["rule"] = "Cut";
        CHECK_THROWS_AS(certificate_from_json(bad_rule), CertificateFormatError);

        json bad_version = doc;
        bad_version["version"] = 7;
        CHECK_THROWS_AS(certificate_from_json(bad_version), CertificateFormatError);

        json bad_lambda = doc;
        bad_lambda["lambda"] = "3/2";
        CHECK_THROWS_AS(certificate_from_json(bad_lambda), CertificateFormatError);

        json bad_eps = doc;
        bad_eps["root"]["conclusion"]["eps"] = "-1/4";
        CHECK_THROWS_AS(certificate_from_json(bad_eps), CertificateFormatError);

        json bad_expr = doc;
        bad_expr["root"]["conclusion"]["left"] = "a+";
        CHECK_THROWS_AS(certificate_from_json(bad_expr), CertificateFormatError);

        json dangling = doc;
        dangling["root"]["premises"][0] = json{{"ref", 99}};
        CHECK_THROWS_AS(certificate_from_json(dangling), CertificateFormatError);

        const std::string text = serialize(example_certificate());
        CHECK_THROWS_AS(deserialize(text.substr(0, text.size() / 2)), CertificateFormatError);
        CHECK_THROWS_AS(deserialize("[]"), CertificateFormatError);
    }

    TEST_CASE("templates and hypotheses survive")
    {
        const Judgement hyp{parse("a*"), parse("a;a* + 1"), Rational(0)};
        Derivation d = salomaa_rule(hyp, Config());
        const Certificate cert{Rational(1, 2), {hyp}, d};
        const Certificate back = deserialize(serialize(cert));
        REQUIRE(back.hypotheses.size() == 1);
        CHECK(back.hypotheses[0] == hyp);
        CHECK(back.root.meta() == d.meta());
        CHECK(check(back).ok);
    }

    TEST_CASE("synthesized certificates round-trip")
    {
        testing::Rng rng(61);
        const Config cfg(Rational(3, 4));
        for (int i = 0; i < 40; ++i) {
            const Regex e = testing::random_regex(rng, 8, "ab");
            const Regex f = testing::random_regex(rng, 8, "ab");
            const auto r = prove(e, f, distance(e, f, cfg).rational, cfg);
            const auto& cert = std::get<Certificate>(r);
            const Certificate back = deserialize(serialize(cert, -1));
            CHECK(same_tree(back.root, cert.root));
            CHECK(back.lambda == cfg.lambda());
        }
    }
}
