#include <doctest.h>

#include "qreg/certificate.hpp"
#include "qreg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = qreg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents)
{
    auto path = std::filesystem::temp_directory_path() / ("qreg_cli_test_" + name);
    std::ofstream(path) << contents;
    return path.string();
}

bool tamper_npref(json& node)
{
    if (node.contains("rule") && node["rule"] == "NPref") {
        node["conclusion"]["eps"] = "1/1024";
        return true;
    }
    if (node.contains("premises"))
        for (auto& p : node["premises"])
            if (tamper_npref(p))
                return true;
    return false;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("dist reports")
    {
        Run r = run({"dist", "a*", "a+1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("distance:   1/4") != std::string::npos);
        CHECK(r.out.find("witness:    \"aa\"") != std::string::npos);

        r = run({"dist", "a*", "0", "--json"});
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["distance"] == "1");
        CHECK(doc["witness"] == "");

        r = run({"dist", "a", "a", "--json"});
        doc = json::parse(r.out);
        CHECK(doc["distance"] == "0");
        CHECK(doc["witness"] == "-");

        r = run({"dist", "a*", "a+1", "--lambda", "0.25", "--verify", "--json", "--trace"});
        REQUIRE(r.code == 0);
        doc = json::parse(r.out);
        CHECK(doc["distance"] == "1/16");
        CHECK(doc["verified"] == true);
        CHECK(doc["trace"].back() == "1/16");
    }

    TEST_CASE("input errors exit with 2")
    {
        CHECK(run({"dist", "a+", "a"}).code == 2);
        CHECK(run({"dist", "a", "a", "--lambda", "1"}).code == 2);
        CHECK(run({"dist", "b", "a", "--alphabet", "a"}).code == 2);
        CHECK(run({"prove", "a", "b", "x/y"}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"check", "/nonexistent/file.json"}).code == 2);
    }

    TEST_CASE("prove then check")
    {
        Run r = run({"prove", "a*", "a+1", "1/4"});
        REQUIRE(r.code == 0);
        const std::string cert = temp_file("prove.json", r.out);
        Run c = run({"check", cert});
        CHECK(c.code == 0);
        CHECK(c.out == "ok: a* ==_1/4 a + 1\n");

        r = run({"prove", "a*", "a+1", "1/8"});
        CHECK(r.code == 1);
        CHECK(r.err.find("1/4") != std::string::npos);
        CHECK(r.err.find("\"aa\"") != std::string::npos);

        r = run({"prove", "a;b", "a;b", "0"});
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["root"]["rule"] == "Refl");
        CHECK(doc["root"].value("premises", json::array()).empty());

        r = run({"prove", "a*", "a+1", "--tight"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["root"]["conclusion"]["eps"] == "1/4");
    }

    TEST_CASE("check rejects tampering and truncation")
    {
        Run r = run({"prove", "a*", "a+1", "1/4"});
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        REQUIRE(tamper_npref(doc["root"]));
        Run c = run({"check", temp_file("tampered.json", doc.dump())});
        CHECK(c.code == 1);
        CHECK(c.err.find("check failed at root") != std::string::npos);

        Run t = run({"check", temp_file("truncated.json", r.out.substr(0, r.out.size() / 3))});
        CHECK(t.code == 2);
    }

    TEST_CASE("batch")
    {
        const std::string file = temp_file("batch.tsv", "a*\ta+1\na*\t0\na+1\t0\n");
        Run r = run({"batch", file, "-j", "2"});
        CHECK(r.code == 0);
        CHECK(r.out == "a*\ta+1\t1/4\t\"aa\"\t\na*\t0\t1\t\"\"\t\na+1\t0\t1\t\"\"\t\n");

        Run empty = run({"batch", temp_file("empty.tsv", "")});
        CHECK(empty.code == 0);
        CHECK(empty.out.empty());

        Run bad = run({"batch", temp_file("bad.tsv", "a*\ta+1\n(a\tb\n")});
        CHECK(bad.code != 0);
        std::istringstream lines(bad.out);
        std::string first, second;
        std::getline(lines, first);
        std::getline(lines, second);
        CHECK(first.rfind("a*\ta+1\t1/4", 0) == 0);
        CHECK(second.substr(second.rfind('\t') + 1).size() > 0);
    }

    TEST_CASE("nf")
    {
        Run r = run({"nf", "a"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("a ==_0 a;1 + 0\n", 0) == 0);
        const std::string cert = temp_file("nf.json", r.out.substr(r.out.find('\n') + 1));
        CHECK(run({"check", cert}).code == 0);
    }
}
