#include "doctest.h"

#include "test_support.hpp"

#include "ringelect/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ringelect;
using namespace testing_support;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

const char* kThreeRing = R"({
  "names": [2, 1, 3],
  "tick_len": [1, 1, 1],
  "link_delay": [0, 0, 0],
  "wake": [{"pos": 0, "time": 0}, {"pos": 1, "time": 0}, {"pos": 2, "time": 0}],
  "policy": {"kind": "power2"}
})";

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("ringelect_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& content) const
    {
        std::ofstream(path / name) << content;
        return (path / name).string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_scenario: valid input")
{
    const Scenario s = parse_scenario(kThreeRing);
    CHECK(s.config.size() == 3);
    CHECK(s.config.names[1] == Name(1));
    CHECK(s.config.wake.size() == 3);
    CHECK(std::holds_alternative<Power2>(s.config.policy));
    CHECK_FALSE(s.declared_s.has_value());

    const Scenario big = parse_scenario(R"({"names": ["18446744073709551615", 1], "tick_len": [1, "100000000000000000000"],
      "link_delay": [0, 0], "wake": [{"pos": 1, "time": 0}], "policy": {"kind": "relative"}})");
    CHECK(big.config.names[0] == Name(UINT64_MAX));
    CHECK(big.config.tick_len[1] == BigInt("100000000000000000000"));

    const Scenario scaled = parse_scenario(R"({"names": [1, 2], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "scaled", "rho_num": 5, "rho_den": 2}, "declared_s": 1})");
    CHECK(std::get<ScaledPower>(scaled.config.policy).rho == Rational(5, 2));
    CHECK(*scaled.declared_s == 1);

    const Scenario table = parse_scenario(R"({"names": [1, 2], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "table", "map": {"1": 2, "2": 5}}})");
    CHECK(std::get<Table>(table.config.policy).ticks.at(Name(2)) == 5);

    // round trip through the canonical form
    const Scenario again = parse_scenario(scenario_to_json(s).dump());
    CHECK(scenario_to_json(again) == scenario_to_json(s));
    CHECK(scenario_digest(again) == scenario_digest(s));
    CHECK(scenario_digest(s).rfind("fnv1a64:", 0) == 0);
    CHECK(scenario_digest(s).size() == 8 + 16);
}

TEST_CASE("parse_scenario: errors name the field and line")
{
    try {
        parse_scenario("{\n  \"names\": [1, 2],\n  \"tick_len\": [1],\n  \"link_delay\": [0, 0],\n"
                       "  \"wake\": [{\"pos\": 0, \"time\": 0}]\n}");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.field() == "tick_len");
        CHECK(e.line() == 3);
    }
    try {
        parse_scenario("{\n  \"names\": [1, 2,\n");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() >= 2);
    }
    CHECK_THROWS_AS(parse_scenario(R"({"names": [1, 2], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "fastest"}})"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"names": [1, 2], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}]})"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"names": [1, -2], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}]})"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"names": [1, 1], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "power2"}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"names": [1, 2], "tick_len": [1, 1000], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "power2"}, "declared_s": 10})"), ConfigError);
}

TEST_CASE("json and csv layouts")
{
    const Scenario s = parse_scenario(kThreeRing);
    const Outcome o = run_election(s.config);
    const json rec = make_result_record(s, 7, o);
    for (const char* key : {"digest", "seed", "scenario", "outcome", "bounds", "checks"}) {
        CHECK(rec.contains(key));
    }
    for (const char* key : {"winner", "passes", "election_passes_by_origin", "bits", "first_wake", "completion",
                            "ticks_elapsed", "winner_circuit_ticks", "winner_circle_time", "overtakes",
                            "max_readable_backlog", "events"}) {
        CHECK(rec["outcome"].contains(key));
    }
    CHECK(rec["outcome"]["passes"]["election"] == 5);
    CHECK(rec["outcome"]["passes"]["total"] == 11);
    CHECK(rec["bounds"]["eq5_expected"]["exact"] == "213/16");
    CHECK(rec["bounds"]["eq5_expected"]["decimal"] == "13.312500");
    CHECK(rec["checks"]["winner_is_min"] == true);
    CHECK(rec["seed"] == 7);

    CHECK(rational_to_json(Rational(2, 3))["decimal"] == "0.666667");
    CHECK(rational_to_json(Rational(4))["exact"] == "4");
    CHECK(bigint_to_json(BigInt("100000000000000000000")) == "100000000000000000000");
    CHECK(bigint_to_json(42) == 42);
    CHECK(bigint_from_json(json("123"), "x") == 123);

    const std::string avg = average_csv(average_case_experiment(4, 3, 1, PolicyChoice::Power2));
    CHECK(avg.substr(0, avg.find('\n')) == kAverageCsvHeader);
    CHECK(std::count(avg.begin(), avg.end(), '\n') == 4);
    const std::string cmp = compare_csv(compare_protocols({4, 6}, 3, 1), 3);
    CHECK(cmp.substr(0, cmp.find('\n')) == kCompareCsvHeader);
    CHECK(std::count(cmp.begin(), cmp.end(), '\n') == 3);
}

TEST_CASE("verify_record")
{
    const Scenario s = parse_scenario(kThreeRing);
    json rec = make_result_record(s, std::nullopt, run_election(s.config));
    std::string mismatch;
    CHECK(verify_record(rec, mismatch));
    rec["outcome"]["passes"]["election"] = 6;
    CHECK_FALSE(verify_record(rec, mismatch));
    CHECK(mismatch.find("passes") != std::string::npos);
}

TEST_CASE("run_command")
{
    TempDir dir;
    const std::string cfg = dir.write("ring.json", kThreeRing);

    Run r = cli({"simulate", "--config", cfg});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["outcome"]["passes"]["election"] == 5);

    r = cli({"simulate", "--config", cfg, "--trace"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("time=0 kind=WAKE pos=0 detail=spontaneous\n", 0) == 0);

    r = cli({"adversary", "--n", "4"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["outcome"]["passes"]["election"] == 10);

    r = cli({"bounds", "--config", cfg, "--format", "text"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("213/16") != std::string::npos);

    r = cli({"ringsize", "--config", cfg});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "3\n");

    CHECK(cli({"simulate", "--bogus"}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({"simulate"}).code == kExitConfig);
    CHECK(cli({"simulate", "--config", dir.file("missing.json")}).code == kExitConfig);
    CHECK(cli({"average", "--n", "1", "--trials", "3", "--seed", "1"}).code == kExitConfig);

    const std::string dup = dir.write("dup.json", R"({"names": [1, 1], "tick_len": [1, 1], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "power2"}})");
    r = cli({"simulate", "--config", dup});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("duplicate") != std::string::npos);

    const std::string het = dir.write("het.json", R"({"names": [1, 2], "tick_len": [1, 2], "link_delay": [0, 0],
      "wake": [{"pos": 0, "time": 0}], "policy": {"kind": "power2"}})");
    CHECK(cli({"ringsize", "--config", het}).code == kExitConfig);

    // replaying a tampered record is an invariant fault
    const std::string rec_path = dir.file("rec.json");
    CHECK(cli({"simulate", "--config", cfg, "--out", rec_path}).code == kExitOk);
    CHECK(cli({"simulate", "--verify", rec_path}).code == kExitOk);
    json rec = json::parse(slurp(rec_path));
    rec["outcome"]["winner"] = 2;
    const std::string bad = dir.write("bad.json", rec.dump());
    CHECK(cli({"simulate", "--verify", bad}).code == kExitFault);
}

TEST_CASE("repeated invocations write identical bytes")
{
    TempDir dir;
    const std::string cfg = dir.write("ring.json", kThreeRing);
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"simulate", "--config", cfg, "--trace", "--out"},
             {"average", "--n", "12", "--trials", "40", "--seed", "9", "--out"},
             {"average", "--n", "12", "--trials", "40", "--seed", "9", "--threads", "3", "--out"},
             {"compare", "--n-list", "4,8", "--trials", "5", "--seed", "2", "--out"}}) {
        auto a = args, b = args;
        a.push_back(dir.file("a.out"));
        b.push_back(dir.file("b.out"));
        CHECK(cli(a).code == kExitOk);
        CHECK(cli(b).code == kExitOk);
        CHECK(slurp(dir.file("a.out")) == slurp(dir.file("b.out")));
        CHECK_FALSE(slurp(dir.file("a.out")).empty());
    }
}
