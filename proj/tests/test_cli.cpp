#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "prodcode/serialize.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = prodcode::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bounds table") {
    const auto r = run({"bounds", "--n", "4", "--r", "2", "--k", "1..4"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "k,partial_k,rs_degree_lower,lower_opt,lrc_upper,grid_upper,gridv2_upper,exact,witness_a,witness_b,witness_nr,witness_nc\n"
          "1,0,16,16,16,16,,16,2,2,3,4\n"
          "2,1,15,15,15,16,15,15,2,2,3,4\n"
          "3,4,12,12,12,12,12,12,1,2,3,4\n"
          "4,8,8,9,11,9,9,9,1,1,3,3\n");
    const auto big = run({"bounds", "--n", "128", "--r", "64", "--k", "4032", "--format", "json"});
    CHECK(big.code == 0);
    CHECK(prodcode::Json::parse(big.out)["rows"][0]["lower_opt"] == 4940);
    const auto sweep = run({"bounds", "--n", "32", "--r", "8"});
    CHECK(count_lines(sweep.out) == 65);
    CHECK(run({"bounds", "--n", "32", "--r", "8"}).out == sweep.out);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"bounds", "--n", "4", "--r", "5"}).code == 2);
    CHECK(run({"bounds", "--n", "4", "--r", "2", "--k", "0..3"}).code == 2);
    CHECK(run({"bounds", "--n", "4", "--r", "2", "--k", "3..2"}).code == 2);
    CHECK(run({"bounds", "--n", "4", "--r", "2", "--format", "xml"}).code == 2);
    CHECK(run({"bounds", "--r", "2"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"figure", "--name", "eg9"}).code == 2);
    CHECK(run({"build", "--n", "6", "--r", "2"}).code == 2);
    CHECK(run({"build", "--n", "4", "--q-log", "3", "--r", "2"}).code == 2);
    CHECK(run({"build", "--q-log", "2", "--r", "2", "--field-poly", "15"}).code == 2);
    CHECK(run({"encode", "--q-log", "2", "--r", "2", "--k", "2", "--msg", "1"}).code == 2);
    CHECK(run({"erasure-sim", "--q-log", "2", "--r", "2", "--model", "uniform", "--p", "2"}).code == 2);
    CHECK(run({"erasure-sim", "--q-log", "2", "--r", "2", "--model", "other"}).code == 2);
    CHECK(run({"verify", "--level", "slow"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("profile") {
    const auto r = run({"profile", "--n", "4", "--r", "3", "--ref"});
    REQUIRE(r.code == 0);
    const auto j = prodcode::Json::parse(r.out);
    CHECK(j["D"] == prodcode::Json::array({0, 1, 2, 4, 5, 8, 9, 12, 16}));
    CHECK(j["ref_oracle"]["agrees"] == true);
    CHECK(j["reaches_length"] == true);
}

TEST_CASE("build and encode") {
    const auto b = run({"build", "--q-log", "2", "--r", "2", "--k", "3"});
    REQUIRE(b.code == 0);
    CHECK(b.out.rfind(R"(# {"q":4,"M":4,"reduction_poly_hex":"13","r":2,"k":3,"coordinate_order":"Zf-major"})", 0) == 0);
    CHECK(count_lines(b.out) == 4);
    const auto j = prodcode::Json::parse(run({"build", "--n", "4", "--r", "2", "--format", "json"}).out);
    CHECK(j["G"].size() == 4);
    CHECK(j["pair"]["Zg_hex"] == prodcode::Json::array({"0", "2", "c", "e"}));

    const auto e = run({"encode", "--q-log", "2", "--r", "2", "--k", "3", "--msg", "1,0,0"});
    CHECK(e.code == 0);
    CHECK(e.out == "1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n");
}

TEST_CASE("distance") {
    const auto r = run({"distance", "--q-log", "2", "--r", "2", "--k", "4"});
    REQUIRE(r.code == 0);
    const auto j = prodcode::Json::parse(r.out);
    CHECK(j["distance"] == 9);
    CHECK(j["exact"] == true);
    CHECK(j["second_weight"] == 12);
    const auto fb = run({"distance", "--q-log", "2", "--r", "2", "--k", "4", "--budget", "100", "--trials", "2000"});
    REQUIRE(fb.code == 0);
    CHECK(fb.err.find("warning") != std::string::npos);
    const auto jf = prodcode::Json::parse(fb.out);
    CHECK(jf["exact"] == false);
    CHECK(jf["distance_upper_estimate"] >= 9);
    const auto big = run({"distance", "--q-log", "1", "--r", "1", "--budget", "2^30"});
    CHECK(big.code == 0);
    CHECK(big.err.find("warning") != std::string::npos);
    // another c gives an equivalent code
    const auto other = prodcode::Json::parse(run({"distance", "--q-log", "2", "--r", "2", "--k", "4", "--c", "3"}).out);
    CHECK(other["distance"] == 9);
    CHECK(run({"distance", "--q-log", "2", "--r", "2", "--c", "6"}).code == 2);
    const auto csv = run({"distance", "--q-log", "2", "--r", "2", "--k", "3", "--format", "csv"});
    CHECK(csv.out == "weight,count\n0,1\n12,300\n15,2880\n16,915\n");
}

TEST_CASE("erasure simulation is seeded") {
    const std::vector<std::string> args{"erasure-sim", "--q-log", "2", "--r", "2", "--k", "3",
                                        "--model", "uniform", "--p", "0.4", "--trials", "500", "--seed", "17"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    CHECK(run(args).out == a.out);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    CHECK(run(threaded).out == a.out);
    const auto fig1 = prodcode::Json::parse(run({"erasure-sim", "--q-log", "2", "--r", "2", "--k", "4", "--model", "fig1"}).out);
    CHECK(fig1["rate"] == 0.0);
    CHECK(fig1["params"]["size_condition"] == true);
    const auto fig2 = prodcode::Json::parse(run({"erasure-sim", "--q-log", "3", "--r", "3", "--k", "7", "--model", "fig2", "--trials", "100"}).out);
    CHECK(fig2["rate"] == 0.0);
    const auto none = prodcode::Json::parse(run({"erasure-sim", "--q-log", "2", "--r", "2", "--model", "cells", "--t", "0", "--trials", "20"}).out);
    CHECK(none["rate"] == 1.0);
}

TEST_CASE("figure output") {
    const auto a = run({"figure", "--name", "eg1"});
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("k,value,series\n", 0) == 0);
    // 64 lower, 64 grid, 63 v2 rows (k = 1 has none)
    CHECK(count_lines(a.out) == 1 + 64 + 64 + 63);
    CHECK(run({"figure", "--name", "eg1"}).out == a.out);
    CHECK(a.out.find("63,650,grid_upper\n") != std::string::npos);
    CHECK(a.out.find("63,770,gridv2_upper\n") != std::string::npos);
}

TEST_CASE("--out writes a file") {
    const auto path = std::filesystem::temp_directory_path() / "prodcode_cli_out.csv";
    const auto r = run({"bounds", "--n", "4", "--r", "2", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run({"bounds", "--n", "4", "--r", "2"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("verify") {
    const auto ok = run({"verify", "--level", "fast"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    const auto bad = run({"verify", "--field-poly", "11"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL field axioms") != std::string::npos);
    CHECK(bad.out.find("field axiom violated") != std::string::npos);
}

}  // TEST_SUITE
