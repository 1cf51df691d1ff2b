#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "puregauss/puregauss.h"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(PG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expect_code = 0) {
    Run r = run(args);
    CHECK_MESSAGE(r.code == expect_code, args);
    json j = json::parse(r.out);
    for (const char* key : {"command", "parameters", "result", "elapsed", "version"}) REQUIRE(j.contains(key));
    return j;
}

json capi(pg_status s, char*& out) {
    REQUIRE(s == PG_OK);
    json j = json::parse(out);
    pg_string_free(out);
    out = nullptr;
    return j;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("pg_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("C API purity and errors") {
    char* out = nullptr;
    json j = capi(pg_purity_json(14, 23, 0, &out), out);
    CHECK(j["pure"] == true);
    CHECK(j["f"] == 3);
    CHECK(j["p_bar"] == 9);
    CHECK(j["label"] == "P2");
    CHECK(j["stickelberger"] == j["aoki"]);

    out = nullptr;
    CHECK(pg_purity_json(14, 7, 0, &out) == PG_ERR_DOMAIN);
    CHECK(out == nullptr);
    CHECK(std::string(pg_last_error()).size() > 0);
    CHECK(pg_purity_json(14, 23, 2, &out) == PG_ERR_DOMAIN);
    CHECK(pg_gauss_sum_json(3, 20, 2, 1, 0, &out) == PG_ERR_RESOURCE);
    CHECK(pg_flatpoly_json(3, 5, 0, 10, &out) == PG_ERR_RESOURCE);
    CHECK(std::string(pg_version()) == PG_VERSION_EXPECTED);
}

TEST_CASE("C API difference-set handle") {
    uint64_t I[21] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 20, 40};
    pg_shds* h = nullptr;
    REQUIRE(pg_shds_build(67, 3, 1, 42, I, 21, 0, &h) == PG_OK);
    REQUIRE(h);
    char* out = nullptr;
    json d = capi(pg_shds_describe_json(h, &out), out);
    CHECK(d["Y"] == json::array({3}));
    CHECK(d["m1"] == 7);
    json v = capi(pg_shds_verify_json(h, 0, &out), out);
    CHECK(v["verified"] == true);
    CHECK(v["dual_matches"] == true);
    json du = capi(pg_shds_dual_json(h, &out), out);
    CHECK(du["shift"] == 14);
    json inv = capi(pg_shds_invariant_json(h, 3, 3, 0, 0, &out), out);
    CHECK(inv["distinct_values_found"] >= 3);
    pg_shds_free(h);

    uint64_t bad[21];
    for (int i = 0; i < 21; ++i) bad[i] = static_cast<uint64_t>(i);
    h = nullptr;
    CHECK(pg_shds_build(67, 3, 1, 42, bad, 21, 0, &h) == PG_ERR_DOMAIN);
    CHECK(h == nullptr);
    CHECK(pg_shds_build(67, 3, 1, 42, I, 21, 0, nullptr) == PG_ERR_DOMAIN);
    CHECK(pg_shds_verify_json(nullptr, 0, &out) == PG_ERR_DOMAIN);
    pg_shds_free(nullptr);
}

TEST_CASE("CLI purity") {
    json a = run_json("purity --N 14 --p 23");
    CHECK(a["command"] == "purity");
    CHECK(a["result"]["pure"] == true);
    CHECK(a["result"]["label"] == "P2");
    CHECK(run_json("purity --N 6 --p 67")["result"]["pure"] == false);
    CHECK(run_json("purity --N 2 --p 3")["result"]["pure"] == true);
    json e = run_json("purity --N 14 --p 7", 2);
    CHECK(e["result"].contains("error"));
    CHECK(run("purity --N 14").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("CLI classification") {
    json r = run_json("classify --f 7 --explain");
    CHECK(r["result"]["rows"].size() == 1);
    CHECK(r["result"]["rows"][0]["p_bar"] == 129);
    CHECK(r["result"]["candidates"].size() == 19);
    CHECK(r["result"]["pruning"][0]["survivors"] == json::array({254, 762, 10922, 32766}));
    Run csv = run("classify --f 3 --emit csv");
    CHECK(csv.code == 0);
    CHECK(csv.out == "N,f,p_bar,label\n14,3,9,Index2\n42,3,25,Index4_case2\n78,3,55,Index8_case2\n");
    Run scan = run("classify --nmax 100 --emit csv");
    CHECK(scan.code == 0);
    CHECK(std::count(scan.out.begin(), scan.out.end(), '\n') == 9);
    CHECK(run("classify --f 4").code == 2);
    CHECK(run("classify --nmax 6000").code == 2);
}

TEST_CASE("CLI Gauss sums and sign constants") {
    json g = run_json("gauss --p 3 --f 1 --N 2");
    CHECK(g["result"]["value"]["conductor"] == 6);
    CHECK(g["result"]["pure"] == true);
    json s = run_json("sign --p 67 --f 3 --N 42");
    CHECK(s["result"]["s"][0] == 0);
    CHECK(s["result"]["identity_failures"].empty());
    CHECK(run("gauss --p 3 --f 1 --N 4").code == 2);
    CHECK(run("--field-cap 100 gauss --p 23 --f 3 --N 14").code == 3);
}

TEST_CASE("CLI difference-set workflow") {
    TempDir tmp;
    std::string inst = (tmp.path / "inst.json").string();
    std::string idx = (tmp.path / "I.txt").string();
    {
        std::ofstream f(idx);
        for (int x : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 20, 40}) f << x << "\n";
    }
    json b = run_json("shds --instance " + inst + " build --p 67 --f 3 --N 42 --index-set " + idx);
    CHECK(b["command"] == "shds build");
    CHECK(std::filesystem::exists(inst));
    json v = run_json("shds --instance " + inst + " verify");
    CHECK(v["result"]["verified"] == true);
    json d = run_json("shds --instance " + inst + " dual");
    CHECK(d["result"]["shift"] == 14);
    json n = run_json("shds --instance " + inst + " invariant --a 3");
    CHECK(n["result"]["distinct_values_found"] >= 3);

    run_json("shds --instance " + inst + " build --p 23 --f 3 --N 14 --default");
    json bf = run_json("shds --instance " + inst + " verify --brute-force");
    CHECK(bf["result"]["brute_force"]["lambda"] == 3041);

    {
        std::ofstream f(idx);
        for (int x = 0; x < 21; ++x) f << x << "\n";
    }
    json bad = run_json("shds --instance " + inst + " build --p 67 --f 3 --N 42 --index-set " + idx, 2);
    CHECK(bad["result"].contains("error"));
    CHECK(run("shds --instance " + (tmp.path / "missing.json").string() + " verify").code == 2);

    json fp = run_json("shds flatpoly --p1 3 --p2 5");
    CHECK(fp["result"]["witness"].is_null());
    CHECK(run_json("shds flatpoly --p1 3 --p2 5 --relaxed")["result"]["witness"].size() == 15);
}
