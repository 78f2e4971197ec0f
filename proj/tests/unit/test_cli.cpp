#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "commands.hpp"
#include "json.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = clab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count and histogram examples") {
    auto r = run({"count", "--p", "3", "--m", "1", "--alpha2", "1", "--alpha3", "1", "--N", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "8\n");
    r = run({"histogram", "--p", "3", "--m", "1", "--alpha2", "1", "--N", "1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "alpha3,count\n0,2\n1,8\n2,8\n");
    r = run({"histogram", "--p", "3", "--alpha2", "1", "--N", "1", "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["histogram"]["counts"] == nlohmann::json::array({2, 8, 8}));
}

TEST_CASE("main-term JSON") {
    const auto r = run({"main-term", "--p", "5", "--m", "1", "--alpha2", "1", "--N", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"C_q\": \"128/25\"") != std::string::npos);
    const auto csv = run({"main-term", "--p", "5", "--alpha2", "1", "--N", "10", "--format", "csv"});
    CHECK(csv.out.find("C_q,128/25\n") != std::string::npos);
}

TEST_CASE("check subcommands: pass, usage error, cap") {
    CHECK(run({"variance-check", "--p", "3", "--m", "2", "--alpha2", "1", "--N", "2"}).code == 0);
    const auto q = run({"quadruple-check", "--p", "7", "--m", "1", "--alpha2", "5", "--N", "6"});
    CHECK(q.code == 0);
    const auto j = nlohmann::json::parse(q.out);
    CHECK(j["quadruple"]["lhs"] == j["quadruple"]["rhs"]);
    const auto bad = run({"variance-check", "--p", "3", "--m", "1", "--alpha2", "3", "--N", "2"});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("coprime") != std::string::npos);
    CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
    CHECK(run({"variance-check", "--p", "101", "--m", "2", "--alpha2", "1", "--N", "2"}).code == 2);
    CHECK(run({"variance-check", "--p", "101", "--m", "2", "--alpha2", "1", "--N", "2", "--q-cap", "20000"}).code == 0);
}

TEST_CASE("gauss-check") {
    CHECK(run({"gauss-check", "--p-max", "3"}).code == 0);
    const auto four = run({"gauss-check", "--p-max", "4"});
    CHECK(four.code == 0);
    CHECK(four.out.find("gauss: p<=4 primes=1 ") != std::string::npos);
    CHECK(run({"gauss-check", "--p-max", "31"}).code == 0);
    CHECK(run({"gauss-check", "--p-max", "501"}).code == 2);
    CHECK(run({"gauss-check"}).code == 2);
}

TEST_CASE("exppair subcommands") {
    auto r = run({"exppair", "apply", "--word", "ABA2B"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("1/9,13/18 f=11/25\n", 0) == 0);
    r = run({"exppair", "apply", "--word", ""});
    CHECK(r.out.rfind("0,1 f=1/2\n", 0) == 0);
    CHECK(run({"exppair", "apply", "--word", "ABC"}).code == 2);
    r = run({"exppair", "bracket"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("0.439875556384 / 0.439875557961\n", 0) == 0);
    r = run({"exppair", "search", "--budget", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("nodes_expanded") != std::string::npos);
    CHECK(run({"exppair", "search", "--budget", "0"}).code == 2);
    CHECK(run({"exppair"}).code == 2);
}

TEST_CASE("thresholds, bound-ratios, padic-count") {
    auto r = run({"thresholds", "--p", "101", "--m", "1", "--mode", "unconditional", "--epsilon", "0.01"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["windows"].size() == 1);
    CHECK(j["windows"][0]["lower_exponent"].get<double>() == doctest::Approx(11.0 / 24 + 0.01));
    CHECK(j["windows"][0]["N_min"].get<double>() == doctest::Approx(std::pow(101.0, 0.468333333333) / 2));
    CHECK(run({"thresholds", "--p", "101", "--mode", "bogus"}).code == 2);
    r = run({"thresholds", "--p", "101"});
    CHECK(nlohmann::json::parse(r.out)["windows"].size() == 3);
    CHECK(run({"thresholds", "--p", "101", "--Delta", "0.5"}).code == 0);
    CHECK(run({"thresholds", "--p", "101", "--Delta", "2"}).code == 2);

    r = run({"bound-ratios", "--p", "3", "--m", "7", "--N", "100", "--k", "1/9", "--l", "13/18"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
    CHECK(run({"bound-ratios", "--p", "3", "--m", "7", "--N", "100", "--k", "3/4", "--l", "13/18"}).code == 2);

    r = run({"padic-count", "--p", "3", "--gamma", "2", "--N", "3", "--alpha2", "1", "--alpha3", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "24\n");
    CHECK(run({"padic-count", "--p", "3", "--gamma", "-1", "--N", "3", "--alpha2", "1", "--alpha3", "1"}).code == 2);
    CHECK(run({"padic-count", "--p", "3", "--gamma", "x", "--N", "3", "--alpha2", "1", "--alpha3", "1"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count", "--p", "4", "--alpha2", "1", "--alpha3", "1", "--N", "1"}).code == 2);
    CHECK(run({"count", "--p", "3", "--alpha2", "1", "--N", "1"}).code == 2);
    CHECK(run({"count", "--p", "3", "--alpha2", "1", "--alpha3", "1", "--N", "-1"}).code == 2);
    CHECK(run({"histogram", "--p", "3", "--alpha2", "1", "--N", "1", "--format", "xml"}).code == 2);
    CHECK(run({"exceptional", "--p", "3", "--alpha2", "1", "--N", "1"}).code == 2);
    CHECK(run({"count", "--p", "3", "--alpha2", "1", "--alpha3", "1", "--N", "1", "--output", "/nonexistent/x"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is byte-identical across thread counts and CONGRUENCE_LAB_THREADS overrides --threads") {
    const std::vector<std::string> base{"histogram", "--p", "101", "--alpha2", "3", "--N", "30", "--route", "sweep"};
    auto with = [&](const char* t) {
        auto a = base;
        a.push_back("--threads");
        a.push_back(t);
        return run(a);
    };
    const auto one = with("1");
    CHECK(one.code == 0);
    CHECK(with("4").out == one.out);
    CHECK(with("4").out == with("4").out);
    CHECK(with("0").code == 2);
    setenv("CONGRUENCE_LAB_THREADS", "3", 1);
    CHECK(with("0").code == 0);  // the environment wins over an invalid flag
    CHECK(with("0").out == one.out);
    setenv("CONGRUENCE_LAB_THREADS", "many", 1);
    CHECK(with("2").code == 2);
    unsetenv("CONGRUENCE_LAB_THREADS");

    const auto e1 = run({"exceptional", "--p", "101", "--alpha2", "1", "--N", "12", "--delta", "0.25", "--sample", "5"});
    const auto e2 = run({"exceptional", "--p", "101", "--alpha2", "1", "--N", "12", "--delta", "0.25", "--sample", "5", "--threads", "3"});
    CHECK(e1.code == 0);
    CHECK(e1.out == e2.out);
    CHECK(nlohmann::json::parse(e1.out)["exceptional"]["sample"].size() == 5);
}

TEST_CASE("--output writes the report to a file") {
    const std::string path = "cli_output_test.csv";
    const auto r = run({"histogram", "--p", "3", "--alpha2", "1", "--N", "1", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "alpha3,count\n0,2\n1,8\n2,8\n");
    std::remove(path.c_str());
}
