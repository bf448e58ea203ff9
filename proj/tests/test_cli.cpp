#include "doctest.h"
#include "temper/cli.hpp"
#include "temper/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace temper;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("temper_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

} // namespace

TEST_CASE("check prints a verdict") {
    TempDir dir;
    auto good = dir.write("good.json", R"({"schema": "temper-spec/1", "family": {"name": "sl_block", "pattern": "H11", "sizes": [2, 2, 2]}})");
    auto r = cli({"check", good});
    CHECK(r.code == 0);
    Json v = parse_json_text(r.out);
    CHECK(v["tempered"] == true);
    CHECK(v["evidence"]["kind"] == "certificate");

    auto w = cli({"check", good, "--witness-only"});
    CHECK(w.code == 0);
    CHECK(parse_json_text(w.out).is_null());

    auto bad = dir.write("bad.json", R"({"schema": "temper-spec/1", "family": {"name": "sl_block", "pattern": "H11", "sizes": [3, 1, 1]}})");
    auto wb = cli({"check", bad, "--witness-only"});
    CHECK(wb.code == 0);
    CHECK(parse_json_text(wb.out)["kind"] == "witness");

    auto dom = cli({"check", good, "--dominant-chamber"});
    CHECK(parse_json_text(dom.out)["tempered"] == true);
    auto full = cli({"check", good, "--no-prune"});
    CHECK(parse_json_text(full.out)["evidence"]["antipodal"] == false);
}

TEST_CASE("exit codes for bad input") {
    TempDir dir;
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"check"}).code == 2);
    CHECK(cli({"check", (dir.path / "missing.json").string()}).code == 2);
    auto garbage = dir.write("garbage.json", "{not json");
    CHECK(cli({"check", garbage}).code == 2);
    auto zero = dir.write("zero.json", R"({"schema": "temper-spec/1", "pair": {"space": {"ambient_dim": 1},
        "h": {"weights": [{"form": ["1/0"], "mult": 1}]}, "g_over_h": {"weights": []}}})");
    auto r = cli({"check", zero});
    CHECK(r.code == 2);
    CHECK(r.err.find("$.pair.h.weights[0].form[0]") != std::string::npos);
    auto closure = dir.write("closure.json", R"({"schema": "temper-spec/1", "family": {"name": "sl_block",
        "kinds": ["full", "full", "full"], "upper": [[1, 2], [2, 3]], "sizes": [1, 1, 1]}})");
    CHECK(cli({"check", closure}).code == 3);
    CHECK(cli({"volume", "decay", "--matrix", "[[0,1],[-1,0]]"}).code == 3);
    CHECK(cli({"volume", "decay", "--matrix", "[[0,1],[-1"}).code == 2);
    CHECK(cli({"scan", "table9"}).code == 2);
    CHECK(cli({"scan", "table1/H1", "--format", "xml"}).code == 2);
}

TEST_CASE("scan output") {
    auto r = cli({"scan", "table1/H3", "--pmax", "3", "--qmax", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("table1/H3") != std::string::npos);
    auto j = cli({"scan", "table1/H3", "--pmax", "2", "--qmax", "2", "--json"});
    CHECK(j.code == 0);
    Json doc = parse_json_text(j.out);
    CHECK(doc["mismatches"] == 0);
    CHECK(doc["reports"][0]["points"].size() == 4);
}

TEST_CASE("recheck of files") {
    TempDir dir;
    auto spec = dir.write("s.json", R"({"schema": "temper-spec/1", "family": {"name": "so_pair", "params": [1, 1, 1, 1]}})");
    auto ev = (dir.path / "ev.json").string();
    REQUIRE(cli({"check", spec, "--evidence-out", ev}).code == 0);
    auto ok = cli({"recheck", ev});
    CHECK(ok.code == 0);
    CHECK(parse_json_text(ok.out)["ok"] == true);

    Json cert = read_json_file(ev);
    REQUIRE(cert["ray_values"].size() > 0);
    cert["ray_values"][0] = "-1";
    auto tampered = dir.write("t.json", cert.dump());
    auto bad = cli({"recheck", tampered});
    CHECK(bad.code == 1);
    CHECK(parse_json_text(bad.out)["ok"] == false);

    auto verdict = dir.write("v.json", cli({"check", spec}).out);
    CHECK(cli({"recheck", verdict}).code == 0);

    auto neg = dir.write("n.json", R"({"schema": "temper-spec/1", "family": {"name": "product_sl", "parts": [3, 1]}})");
    auto wfile = dir.write("w.json", cli({"check", neg, "--witness-only"}).out);
    CHECK(cli({"recheck", wfile}).code == 0);
    Json w = read_json_file(wfile);
    w["value"] = "1";
    CHECK(cli({"recheck", dir.write("w2.json", w.dump())}).code == 1);

    CHECK(cli({"recheck", dir.write("junk.json", R"({"kind": "banana"})")}).code == 2);
}

TEST_CASE("volume commands") {
    auto r = cli({"volume", "decay", "--matrix", "diag(1,-1)", "--samples", "20000", "--tmax", "3", "--steps", "7"});
    CHECK(r.code == 0);
    Json j = parse_json_text(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["t"].size() == 7);
    auto t = cli({"volume", "translate", "--dim", "2", "--trials", "5", "--samples", "5000"});
    CHECK(t.code == 0);
    CHECK(parse_json_text(t.out)["passes"] == 5);
}
