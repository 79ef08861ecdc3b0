#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* exe = std::getenv("NONLOCAL_CLI");
    REQUIRE(exe != nullptr);
    const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    Run r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::vector<double> row(const std::string& l) {
    std::vector<double> v;
    std::istringstream is(l);
    for (std::string c; std::getline(is, c, ',');) v.push_back(std::stod(c));
    return v;
}

const std::string small_grid = " --n 1024 --L 40 --xmax 2 --stride 16";

} // namespace

TEST_CASE("kernel table: header, values and exit status") {
    const auto r = run("kernel --family cauchy --t 1 --x 0,1");
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "x,t,k,error");
    CHECK(row(ls[1])[2] == doctest::Approx(1 / 3.141592653589793).epsilon(1e-15));
    CHECK(row(ls[2])[2] == doctest::Approx(0.5 / 3.141592653589793).epsilon(1e-15));
    CHECK(lines(run("kernel --family heat:1 --dim 3 --t 1 --x 1").out)[0] == "r,t,k,error");
}

TEST_CASE("exit codes") {
    CHECK(run("kernel --family stable:3 --t 1 --x 0").code == 1);
    CHECK(run("kernel --family bogus --t 1").code == 2);
    CHECK(run("evolve --initial gaussian:-1 --symbol stable:1 --times 1").code == 2);
    CHECK(run("current --initial gaussian:1 --symbol stable:1.5 --times 1" + small_grid).code == 1);
    CHECK(run("no-such-command").code == 2);
    CHECK(run("figure --id 9").code == 2);
    CHECK(run("kernel --format xml --family cauchy --t 1").code == 2);
}

TEST_CASE("evolve output and JSON document") {
    const auto c = run("evolve --initial gaussian:1 --symbol cauchy --times 0,1 --complex" + small_grid);
    CHECK(c.code == 0);
    const auto ls = lines(c.out);
    CHECK(ls[0] == "x,t,rho,re,im");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto v = row(ls[i]);
        CHECK(v[2] == doctest::Approx(v[3] * v[3] + v[4] * v[4]).epsilon(1e-12));
    }

    const auto j = run("evolve --format json --initial quad_lorentz:1 --symbol stable:1 --times 1 --n 4096 --L 200 --xmax 1");
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    for (const char* key : {"command", "version", "config", "error_estimate", "warnings", "columns", "rows"})
        CHECK(doc.contains(key));
    CHECK(doc["command"] == "evolve");
    CHECK(doc["config"]["initial"] == "quad_lorentz:1");
    CHECK(doc["error_estimate"].contains("oracle_linf_rho"));
    CHECK(doc["columns"].size() == 3);
    for (const auto& r : doc["rows"]) CHECK(r.size() == 3);
}

TEST_CASE("output is deterministic and honours --out") {
    const std::string args = "evolve --initial gaussian:1 --symbol salpeter:1 --times 0.5,2" + small_grid;
    const auto a = run(args), b = run(args + " --threads 1");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const std::string path = "test_cli_out.csv";
    CHECK(run(args + " --out " + path).code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == a.out);
    std::remove(path.c_str());
}

TEST_CASE("config file values yield to explicit flags") {
    const std::string path = "test_cli_config.json";
    {
        std::ofstream out(path);
        out << R"({"family": "cauchy", "times": [2], "x": [0]})";
    }
    const auto a = run("kernel --config " + path);
    REQUIRE(a.code == 0);
    CHECK(row(lines(a.out)[1])[1] == 2.0);
    const auto b = run("kernel --config " + path + " --t 1");
    REQUIRE(b.code == 0);
    CHECK(row(lines(b.out)[1])[1] == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("current and propagate tables") {
    const auto c = run("current --initial gaussian:1 --symbol cauchy --times 0,1" + small_grid);
    REQUIRE(c.code == 0);
    const auto ls = lines(c.out);
    CHECK(ls[0] == "x,t,j");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto v = row(ls[i]);
        if (v[1] == 0.0) CHECK(std::abs(v[2]) < 1e-10);
    }
    const auto p = run("propagate --family cauchy --t 1 --eps 0.1 --x 0,2");
    REQUIRE(p.code == 0);
    CHECK(lines(p.out)[0] == "x,t,eps,re,im");
    CHECK(run("propagate --family cauchy --t 1 --eps 0 --x 0").code == 1);
}

TEST_CASE("figure presets") {
    const auto f4 = run("figure --id 4");
    REQUIRE(f4.code == 0);
    CHECK(lines(f4.out)[0] == "r,t,r2rho");
    const auto f1 = run("figure --id 1 --times 1");
    REQUIRE(f1.code == 0);
    CHECK(lines(f1.out)[0] == "x,t,rho");
}

TEST_CASE("selftest") {
    const auto s = run("selftest");
    CHECK(s.code == 0);
    CHECK(s.out.find("[PASS]") != std::string::npos);
    CHECK(s.out.find("[FAIL]") == std::string::npos);
}
