#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfano/json_io.hpp"

using namespace pfano;
using gf::PrimeField;
using io::json;

TEST_CASE("matrix round trip") {
    matrix::BlockMatrix m =
        indexcoding::canonical_encoder(2, PrimeField(2)).matrix;
    json j = io::matrix_to_json(m);
    CHECK(j["q"] == 2);
    CHECK(j["t"] == 1);
    CHECK(j["rows"] == 3);
    CHECK(j["blocks"] == 19);
    CHECK(io::matrix_from_json(j) == m);
}

TEST_CASE("matrix parsing rejects bad input") {
    json j = io::matrix_to_json(
        matroid::canonical_matrix(2, PrimeField(3)));
    json missing = j;
    missing.erase("rows");
    CHECK_THROWS_AS(io::matrix_from_json(missing), ParseError);
    json bad_entry = j;
    bad_entry["entries"][0][0] = 3;  // not canonical mod 3
    CHECK_THROWS_AS(io::matrix_from_json(bad_entry), ParseError);
    json short_row = j;
    short_row["entries"][1] = json::array({1, 0});
    CHECK_THROWS_AS(io::matrix_from_json(short_row), ParseError);
    json bad_q = j;
    bad_q["q"] = 6;
    CHECK_THROWS_AS(io::matrix_from_json(bad_q), NotPrimeError);
}

TEST_CASE("instance round trip keeps family metadata") {
    indexcoding::IndexCodingInstance inst =
        indexcoding::build_p_fano_instance(3);
    json j = io::instance_to_json(inst);
    CHECK(j["family"] == "p-fano");
    CHECK(j["p"] == 3);
    CHECK(j["m"] == 33);
    indexcoding::IndexCodingInstance back = io::instance_from_json(j);
    CHECK(back.m == inst.m);
    CHECK(back.family == inst.family);
    CHECK(back.p == inst.p);
    CHECK(back.interfering == inst.interfering);
}

TEST_CASE("custom instances serialize with a null p") {
    indexcoding::IndexCodingInstance inst =
        indexcoding::make_instance(3, {{2}, {3}, {1}});
    json j = io::instance_to_json(inst);
    CHECK(j["p"].is_null());
    indexcoding::IndexCodingInstance back = io::instance_from_json(j);
    CHECK(back.interfering == inst.interfering);
}

TEST_CASE("instance parsing rejects bad input") {
    json j = io::instance_to_json(indexcoding::build_p_fano_instance(2));
    json bad_family = j;
    bad_family["family"] = "fano-ish";
    CHECK_THROWS_AS(io::instance_from_json(bad_family), ParseError);
    json self_loop = j;
    self_loop["interfering"][0] = json::array({1, 2});
    CHECK_THROWS_AS(io::instance_from_json(self_loop), ParseError);
    json wrong_m = j;
    wrong_m["m"] = 18;
    CHECK_THROWS_AS(io::instance_from_json(wrong_m), ParseError);
}

TEST_CASE("constraints round trip") {
    matroid::MatroidConstraints c = matroid::p_nonfano_constraints(3);
    json j = io::constraints_to_json(c);
    CHECK(j["n"] == 9);
    CHECK(j["rank"] == 4);
    matroid::MatroidConstraints back = io::constraints_from_json(j);
    CHECK(back.ground_size == c.ground_size);
    CHECK(back.rank_value == c.rank_value);
    CHECK(back.basis_sets == c.basis_sets);
    CHECK(back.circuit_sets == c.circuit_sets);
    json bad = j;
    bad["circuits"].push_back(json::array({1, 2, 3, 4}));  // equals a basis
    CHECK_THROWS_AS(io::constraints_from_json(bad), ParseError);
}

TEST_CASE("report serializations carry the contract fields") {
    indexcoding::IndexCodingInstance inst =
        indexcoding::build_p_fano_instance(2);
    indexcoding::Encoder enc = indexcoding::canonical_encoder(2, PrimeField(2));
    json rep = io::decoding_report_to_json(
        indexcoding::check_decoding(enc, inst));
    CHECK(rep["all_ok"] == true);
    CHECK(rep["users"].size() == 19);
    CHECK(rep["users"][0].contains("rank_with"));
    CHECK(rep["users"][0].contains("rank_without"));

    json mais = io::mais_to_json(indexcoding::mais(inst));
    CHECK(mais["size"] == 3);

    search::SearchOutcome o = search::search_scalar_representation(
        matroid::p_fano_constraints(2), PrimeField(3));
    json so = io::search_outcome_to_json(o);
    CHECK(so["verdict"] == "exhausted");
    CHECK(so["matrix"].is_null());
    CHECK(so["candidates"].is_number());
    CHECK(so.contains("normalization"));
    CHECK(so.contains("elapsed_ms"));

    search::OptimalityDecision d = search::decide_family_optimality(
        indexcoding::Family::PFano, 2, PrimeField(2));
    json dj = io::decision_to_json(d, "p-fano", 2, 2);
    CHECK(dj["verdict"] == "achievable");
    CHECK(dj["rate"] == json::array({3, 1}));
}
