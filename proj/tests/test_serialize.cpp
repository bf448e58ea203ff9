#include "doctest.h"
#include "temper/serialize.hpp"

using namespace temper;

namespace {

Json reparse(const Json& j) { return parse_json_text(j.dump()); }

std::string input_error(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("rationals are strings") {
    CHECK(to_json(Rational(3)) == Json("3"));
    CHECK(to_json(Rational(-1, 2)) == Json("-1/2"));
    Json doc = parse_json_text(R"({"a": "3/6", "b": 4, "c": "1/0", "d": 1.5, "e": "x"})");
    JsonCursor c(doc);
    CHECK(c["a"].rational() == Rational(1, 2));
    CHECK(c["b"].rational() == Rational(4));
    std::string msg = input_error([&] { c["c"].rational(); });
    CHECK(msg.find("$.c") != std::string::npos);
    CHECK(msg.find("malformed rational") != std::string::npos);
    CHECK_THROWS_AS(c["d"].rational(), InputError);
    CHECK_THROWS_AS(c["e"].rational(), InputError);
    CHECK_THROWS_AS(c["missing"], InputError);
}

TEST_CASE("malformed documents name the location") {
    std::string msg = input_error([] { parse_json_text("{\"a\": [1, 2,"); });
    CHECK_FALSE(msg.empty());
    Json doc = parse_json_text(R"({"x": [[1, "a"]]})");
    msg = input_error([&] { JsonCursor(doc)["x"][0][1].integer(); });
    CHECK(msg.find("$.x[0][1]") != std::string::npos);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("pair specs round trip") {
    auto spec = build_sl_block(find_preset("table2/H7", 3).pattern({2, 1, 2}));
    spec.v_module = spec.h_module.renamed("V");
    Json j = reparse(to_json(spec));
    PairSpec back = pair_from_json(JsonCursor(j));
    CHECK(*back.space() == *spec.space());
    CHECK(back.h_module == spec.h_module);
    CHECK(back.g_module == spec.g_module);
    REQUIRE(back.v_module);
    CHECK(*back.v_module == *spec.v_module);
    CHECK(back.metadata == spec.metadata);
}

TEST_CASE("certificates and witnesses round trip") {
    auto good = check(build_sl_block(find_preset("table2/H10", 3).pattern({2, 2, 1})));
    REQUIRE(good.tempered);
    const auto& cert = good.result.certificate();
    Json j = reparse(to_json(cert));
    CHECK(j["schema"] == kCertificateSchema);
    auto back = certificate_from_json(JsonCursor(j));
    CHECK(back.rays == cert.rays);
    CHECK(back.ray_values == cert.ray_values);
    CHECK(back.hyperplanes == cert.hyperplanes);
    CHECK(back.chambers.size() == cert.chambers.size());
    CHECK(back.antipodal == cert.antipodal);
    CHECK(back.function == cert.function);
    CHECK(recheck(back).ok);

    // a single edited ray value is caught after the round trip
    j["ray_values"][0] = "12345";
    CHECK_FALSE(recheck(certificate_from_json(JsonCursor(j))).ok);

    auto bad = check(build_sl_block(find_preset("table2/H10", 3).pattern({4, 1, 1})));
    REQUIRE_FALSE(bad.tempered);
    Json w = reparse(to_json(bad.result.witness()));
    auto wb = witness_from_json(JsonCursor(w));
    CHECK(wb.direction == bad.result.witness().direction);
    CHECK(wb.value == bad.result.witness().value);
    CHECK(recheck(wb).ok);

    Json v = to_json(bad);
    CHECK(v["schema"] == kVerdictSchema);
    CHECK(v["tempered"] == false);
    CHECK(v["evidence"]["kind"] == "witness");
}

TEST_CASE("symmetric certificates keep their orbits") {
    CheckOptions o;
    o.use_symmetry = true;
    auto v = check(build_sl_block(find_preset("table2/H10", 3).pattern({2, 2, 2})), o);
    REQUIRE(v.tempered);
    auto back = certificate_from_json(JsonCursor(reparse(to_json(v.result.certificate()))));
    CHECK(back.orbits == v.result.certificate().orbits);
    CHECK_FALSE(back.orbits.empty());
    CHECK(recheck(back).ok);
}

TEST_CASE("matrix inputs round trip") {
    auto in = quaternionic_pair_matrices(1, 0, 1, 1);
    Json j = reparse(to_json(in));
    auto back = matrices_from_json(JsonCursor(j));
    CHECK(back.ambient_dim == in.ambient_dim);
    CHECK(back.g_basis == in.g_basis);
    CHECK(back.h_basis == in.h_basis);
    CHECK(back.torus_basis == in.torus_basis);
    CHECK(back.diagonalizer == in.diagonalizer);
}

TEST_CASE("spec files") {
    auto run = [](const char* text) { return run_spec(parse_spec(parse_json_text(text)), CheckOptions{}); };
    CHECK(run(R"({"schema": "temper-spec/1", "family": {"name": "sl_block", "pattern": "H11", "sizes": [2, 1, 2]}})").tempered);
    CHECK_FALSE(run(R"({"schema": "temper-spec/1", "family": {"name": "sl_block", "kinds": ["full", "identity"], "upper": [[1, 2]], "sizes": [4, 2]}})").tempered);
    CHECK(run(R"({"schema": "temper-spec/1", "family": {"name": "product_sl", "parts": [2, 1]}})").tempered);
    CHECK_FALSE(run(R"({"schema": "temper-spec/1", "family": {"name": "sp_in_sl", "m": 2}})").tempered);
    CHECK(run(R"({"schema": "temper-spec/1", "family": {"name": "so_pair", "params": [1, 1, 1, 1]}})").tempered);
    CHECK(run(R"({"schema": "temper-spec/1", "family": {"name": "complex_product", "type": "so", "m": 3, "n": 1}})").tempered);
    CHECK(run(R"({"schema": "temper-spec/1", "tensor": {"variant": 1, "k": 2, "l": 2, "n": 4}})").tempered);
    CHECK_FALSE(run(R"({"schema": "temper-spec/1", "tensor": {"variant": 2, "a": 1, "b": 1, "c": 4}})").tempered);
    CHECK(run(R"({"schema": "temper-spec/1", "pair": {
        "space": {"ambient_dim": 1},
        "h": {"weights": [{"form": ["2"], "mult": 1}, {"form": ["-2"], "mult": 1}]},
        "g_over_h": {"weights": [{"form": ["2"], "mult": 1}, {"form": ["-2"], "mult": 1}]}}})").tempered);

    auto err = [](const char* text) { return input_error([&] { parse_spec(parse_json_text(text)); }); };
    CHECK(err(R"({"family": {}})").find("schema") != std::string::npos);
    CHECK(err(R"({"schema": "temper-spec/2", "family": {}})").find("$.schema") != std::string::npos);
    CHECK_FALSE(err(R"({"schema": "temper-spec/1"})").empty());
    CHECK(err(R"({"schema": "temper-spec/1", "family": {"name": "sl_block", "pattern": "H11", "sizes": [2, 1]}})").find("$.family") != std::string::npos);
    CHECK(err(R"({"schema": "temper-spec/1", "family": {"name": "nope"}})").find("$.family.name") != std::string::npos);
    CHECK(err(R"({"schema": "temper-spec/1", "family": {"name": "product_sl", "parts": [2, 1], "extra": 1}})").find("extra") != std::string::npos);
    CHECK_FALSE(err(R"({"schema": "temper-spec/1", "tensor": {"variant": 1, "k": 5, "l": 1, "n": 4}})").empty());
    CHECK_THROWS_AS(parse_spec(parse_json_text(R"({"schema": "temper-spec/1", "family": {"name": "sl_block", "kinds": ["full", "full", "full"], "upper": [[1, 2], [2, 3]], "sizes": [1, 1, 1]}})")), DomainError);
}
