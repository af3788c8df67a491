#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dimer/cli.hpp"

namespace {
struct Run {
    int code;
    std::string out, err;
};
Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = dimer::cli::run(args, o, e);
    return {c, o.str(), e.str()};
}
int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }
}  // namespace

TEST_CASE("criticality") {
    auto r = run({"criticality", "--a", "1", "--b", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "a,b,abs_diff,regime,torus_root\n1,4,3,non-critical,false\n");
    CHECK(run({"criticality", "--a", "1", "--b", "1"}).out.find(",critical,true") != std::string::npos);
    CHECK(run({"criticality", "--a", "0", "--b", "1"}).code == 1);
}

TEST_CASE("roots") {
    auto r = run({"roots", "--a", "1", "--b", "4", "--samples", "256"});
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 257);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "theta,r1p,r1m,r2p,r2m");
    while (std::getline(is, line)) {
        double th, r1p;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &th, &r1p) == 2);
        CHECK(r1p > 1.0);
    }
    auto u = run({"roots", "--a", "1", "--b", "1", "--samples", "256"});
    CHECK(u.out.find("\n0,1,1,") != std::string::npos);
    CHECK(run({"roots", "--samples", "1"}).code == 1);
}

TEST_CASE("invk") {
    auto r = run({"invk", "--i", "up", "--j", "up", "--n0", "2", "--n", "5", "--m", "3", "--a", "1", "--b", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("i,j,n0,n,m,value,imag_residual\nup,up,2,5,3,0.0169", 0) == 0);
    CHECK(run({"invk", "--i", "up", "--j", "up", "--n0", "2", "--n", "5"}).code == 1);
    CHECK(run({"invk", "--i", "left", "--j", "up", "--n0", "2", "--n", "5", "--m", "1"}).code == 1);
    auto s = run({"invk", "--i", "up", "--j", "down", "--n0", "1", "--sweep", "--n-lo", "0", "--n-hi", "1", "--m-lo",
                  "0", "--m-hi", "2"});
    CHECK(s.code == 0);
    CHECK(lines(s.out) == 7);
    // deterministic output
    CHECK(run({"invk", "--i", "up", "--j", "up", "--n0", "2", "--n", "5", "--m", "3"}).out ==
          run({"invk", "--i", "up", "--j", "up", "--n0", "2", "--n", "5", "--m", "3"}).out);
}

TEST_CASE("json mirrors csv") {
    auto r = run({"--format", "json", "criticality", "--a", "1", "--b", "4"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["records"][0]["regime"] == "non-critical");
    CHECK(j["records"][0]["abs_diff"].get<double>() == 3.0);
    CHECK(run({"--format", "xml", "criticality"}).code == 1);
}

TEST_CASE("green") {
    auto r = run({"green", "--i", "up", "--j", "down", "--n", "3", "--n0", "3", "--theta", "0.4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("i,j,n,n0,theta,re,im,coeff_solve_relerr\n", 0) == 0);
    CHECK(run({"green", "--n0", "2", "--theta", "0"}).code == 2);
}

TEST_CASE("asymptote") {
    auto r = run({"asymptote", "--case", "cor1", "--i", "up", "--j", "up", "--n0", "1", "--n", "2", "--a", "1", "--b",
                  "4", "--schedule", "25,50,100,200"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("var,asymptotic,quadrature,ratio\n25,", 0) == 0);
    CHECK(r.out.find("# error_exponent=") != std::string::npos);
    auto six = run({"asymptote", "--case", "cor6", "--p", "2", "--schedule", "10,20"});
    CHECK(six.code == 0);
    CHECK(lines(six.out) == 4);
    CHECK(run({"asymptote", "--case", "cor3", "--n0", "-1", "--schedule", "-10,-20"}).code == 1);
    CHECK(run({"asymptote", "--case", "cor1", "--schedule", "10,x"}).code == 1);
    CHECK(run({"asymptote", "--case", "cor9", "--schedule", "10"}).code == 1);
}

TEST_CASE("oracle") {
    auto c = run({"oracle", "--kind", "count", "--n-lo", "0", "--n-hi", "1", "--m-lo", "0", "--m-hi", "1", "--a", "1",
                  "--b", "1"});
    CHECK(c.code == 0);
    CHECK(c.out.find(",36,true") != std::string::npos);
    auto g = run({"oracle", "--kind", "green", "--n0", "2", "--theta", "1.0", "--N", "60"});
    CHECK(g.code == 0);
    auto w = run({"oracle", "--kind", "window", "--boundary", "cylinder", "--n-lo", "-15", "--n-hi", "60", "--m-lo",
                  "-20", "--m-hi", "19", "--i", "up", "--j", "up", "--n0", "1", "--n", "2", "--m", "0"});
    CHECK(w.code == 0);
    CHECK(w.out.rfind("window,integral,rel_err\n", 0) == 0);
    CHECK(run({"oracle", "--kind", "count", "--n-lo", "0", "--n-hi", "4", "--m-lo", "0", "--m-hi", "4"}).code == 1);
}

TEST_CASE("output file and usage") {
    std::string path = "cli_test_out.csv";
    CHECK(run({"--out", path, "criticality"}).code == 0);
    std::ifstream f(path);
    std::string head;
    std::getline(f, head);
    CHECK(head == "a,b,abs_diff,regime,torus_root");
    std::remove(path.c_str());
    CHECK(run({"--out", "/nonexistent/dir/x.csv", "criticality"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"validate", "--level", "medium"}).code == 1);
}

TEST_CASE("validate fast") {
    auto r = run({"validate", "--level", "fast"});
    CHECK(r.code == 0);
    CHECK(r.out.find(",false,") == std::string::npos);
}
