#include "spaceform/cli.hpp"
#include "spaceform/obstruction.hpp"

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>

using namespace spaceform;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

obstruction::Json json_of(const Result& r) { return obstruction::Json::parse(r.out); }

// Restores an environment variable when the scope ends.
struct EnvGuard {
    std::string name;
    std::optional<std::string> saved;
    explicit EnvGuard(std::string n) : name(std::move(n))
    {
        if (const char* v = std::getenv(name.c_str()))
            saved = v;
    }
    ~EnvGuard()
    {
        if (saved)
            setenv(name.c_str(), saved->c_str(), 1);
        else
            unsetenv(name.c_str());
    }
};

}  // namespace

TEST_CASE("groups subcommands")
{
    const auto g = run({"groups", "classify", "7", "9", "2", "--format", "json"});
    REQUIRE(g.code == cli::kExitOk);
    const auto j = json_of(g);
    CHECK(j["d"] == 3);
    CHECK(j["order"] == 63);
    CHECK(j["cyclic"] == false);

    const auto cyc = run({"groups", "classify", "1", "5", "1", "--format", "json"});
    CHECK(cyc.code == cli::kExitOk);
    CHECK(json_of(cyc)["cyclic"] == true);

    const auto bad = run({"groups", "classify", "7", "9", "3"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("not admissible") != std::string::npos);

    CHECK(run({"groups", "classify", "7", "9", "2", "--audit"}).code == cli::kExitOk);
    CHECK(run({"groups", "classify", "7", "9", "0x2"}).code == cli::kExitUsage);
    CHECK(run({"groups", "subgroup-index", "7", "9", "2"}).code == cli::kExitOk);

    const auto en = run({"groups", "enumerate", "--a-max", "20", "--b-max", "20", "--d", "3", "--format", "json"});
    REQUIRE(en.code == cli::kExitOk);
    for (const auto& row : json_of(en))
        CHECK(row["d"] == 3);
}

TEST_CASE("the enumeration cap comes from the environment")
{
    EnvGuard guard("OBSTRUCT_MAX_GROUP_ORDER");
    setenv("OBSTRUCT_MAX_GROUP_ORDER", "100", 1);
    CHECK(run({"groups", "enumerate", "--a-max", "20", "--b-max", "20"}).code == cli::kExitUsage);
    CHECK(run({"groups", "enumerate", "--a-max", "10", "--b-max", "10"}).code == cli::kExitOk);
    setenv("OBSTRUCT_MAX_GROUP_ORDER", "many", 1);
    CHECK(run({"groups", "enumerate", "--a-max", "10", "--b-max", "10"}).code == cli::kExitUsage);
    setenv("OBSTRUCT_MAX_GROUP_ORDER", "62", 1);
    CHECK(run({"groups", "classify", "7", "9", "2", "--audit"}).code == cli::kExitUsage);
}

TEST_CASE("rep build")
{
    const auto free = run({"rep", "build", "--p", "3", "--n", "17", "--verify-free"});
    REQUIRE(free.code == cli::kExitOk);
    const auto j = json_of(free);
    CHECK(j["free"] == true);
    CHECK(j["torus_rank"] == 3);
    CHECK(j["period"] == 18);

    CHECK(run({"rep", "build", "--p", "3", "--n", "16"}).code == cli::kExitUsage);
    const auto hopf = run({"rep", "build", "--p", "5", "--n", "9", "--verify-hopf"});
    REQUIRE(hopf.code == cli::kExitOk);
    CHECK(json_of(hopf)["hopf_free"] == true);
    CHECK(run({"rep", "build", "--p", "3", "--n", "5", "--beta", "sideways"}).code == cli::kExitUsage);
}

TEST_CASE("steenrod subcommands")
{
    const auto pp = run({"steenrod", "normalize", "--p", "3", "P1 P1"});
    CHECK(pp.code == cli::kExitOk);
    CHECK(pp.out.find("2*P2") != std::string::npos);
    const auto bb = run({"steenrod", "normalize", "--p", "3", "b b", "--format", "json"});
    CHECK(json_of(bb)["normal_form"] == "0");
    CHECK(run({"steenrod", "normalize", "--p", "3", "x"}).code == cli::kExitUsage);
    CHECK(run({"steenrod", "normalize", "--p", "4", "P1"}).code == cli::kExitUsage);

    const auto ids = run({"steenrod", "identities", "--p", "5", "--format", "json"});
    REQUIRE(ids.code == cli::kExitOk);
    const auto j = json_of(ids);
    CHECK(j["pass"] == true);
    CHECK(j["identities"][0]["identity"] == "P5 b = P1 b P4 + b P5");

    CHECK(run({"steenrod", "act", "--p", "3", "--k", "2", "P1"}).code == cli::kExitOk);
}

TEST_CASE("obstruct emits reports that round-trip")
{
    const auto r13 = run({"obstruct", "--n", "13", "--r", "2", "--rational-sphere"});
    REQUIRE(r13.code == cli::kExitOk);
    const auto report = obstruction::report_from_json(json_of(r13));
    CHECK(report == obstruction::apply_all({13, 2, {obstruction::Flag::RationalSphereCover}}));
    CHECK(std::any_of(report.applied.begin(), report.applied.end(),
                      [](const auto& c) { return c.kind == obstruction::Kind::Cyclic; }));

    const auto r7 = run({"obstruct", "--n", "7", "--r", "1", "--rational-sphere", "--circle"});
    REQUIRE(r7.code == cli::kExitOk);
    CHECK(r7.out.find("every odd-order subgroup is cyclic") != std::string::npos);

    const auto q = run({"obstruct", "--n", "5", "--r", "3", "--q", "1/1"});
    CHECK(q.code == cli::kExitOk);
    CHECK(obstruction::report_from_json(json_of(q)) == obstruction::apply_all({5, 3, {}}, Fraction(1)));

    CHECK(run({"obstruct", "--n", "12", "--r", "1"}).code == cli::kExitUsage);
    CHECK(run({"obstruct", "--n", "7", "--r", "1.5"}).code == cli::kExitUsage);
    CHECK(run({"obstruct", "--n", "7", "--r", "1", "--q", "0.5"}).code == cli::kExitUsage);
    CHECK(run({"obstruct", "--n", "7", "--r", "1", "--q", "-1"}).code == cli::kExitUsage);
    CHECK(run({"obstruct", "--n", "7", "--r", "2", "--circle"}).code == cli::kExitUsage);
    CHECK(run({"obstruct", "--n", "7", "--r", "1", "--format", "text"}).code == cli::kExitOk);
}

TEST_CASE("usage errors and help")
{
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"obstruct", "--n", "7", "--r", "1", "--bogus"}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    const auto help = run({"--help"});
    CHECK(help.code == cli::kExitOk);
    CHECK(help.out.find("obstruct") != std::string::npos);
    CHECK(run({"verify", "paper-checks", "--only", "steenrod,nonsense"}).code == cli::kExitUsage);
    CHECK(run({"verify", "paper-checks", "--n-max", "20"}).code == cli::kExitUsage);
}

TEST_CASE("paper checks are deterministic")
{
    const std::vector<std::string> args{"verify", "paper-checks", "--only", "steenrod,engine"};
    const auto first = run(args), second = run(args);
    CHECK(first.code == cli::kExitOk);
    CHECK(first.out == second.out);
    CHECK(first.out.find("FAIL") == std::string::npos);
    CHECK(first.out.find("0 failed") != std::string::npos);

    const auto j = run({"verify", "paper-checks", "--only", "codes", "--format", "json"});
    REQUIRE(j.code == cli::kExitOk);
    CHECK(json_of(j)["failed"] == 0);
    CHECK(json_of(j)["checks"].size() == 2);
}
