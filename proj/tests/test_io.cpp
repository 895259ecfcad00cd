#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace nilforge;

TEST_CASE("rationals serialize as canonical strings and accept integers") {
    CHECK(rational_json(make_rational(-6, 4)) == "-3/2");
    CHECK(rational_json(Rational(4)) == "4");
    CHECK(rational_from_json(Json("10/4")) == Rational(5, 2));
    CHECK(rational_from_json(Json(7)) == 7);
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), FormatError);
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), FormatError);
}

TEST_CASE("algebra documents round trip with and without a pointing") {
    for (const char* name : {"dim9", "e6"}) {
        NilAlgebra a = testing::milnor(name);
        Pointing p = default_pointing(a);
        Json j = algebra_json(a, &p);
        Pointing back;
        NilAlgebra b = algebra_from_json(parse_json(j.dump()), &back);
        CHECK(a == b);
        CHECK(back.omega == p.omega);
        Pointing none;
        CHECK(algebra_from_json(algebra_json(a), &none) == a);
        CHECK(none.omega.empty());
    }
}

TEST_CASE("shipped algebra documents equal freshly computed Milnor algebras") {
    for (const char* name : {"dim9", "dim8", "e6"}) {
        CAPTURE(name);
        CHECK(algebra_from_json(testing::load_fixture(std::string("algebras/") + name + ".json")) == testing::milnor(name));
    }
}

TEST_CASE("malformed algebra documents are rejected") {
    CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"dim": 2, "labels": ["a"], "products": {}})")), FormatError);
    CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"dim": 2, "labels": ["a","b"], "products": {"1,3": [[1,"1"]]}})")),
                    FormatError);
    CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"dim": 2, "labels": ["a","b"], "products": {"x": []}})")),
                    FormatError);
    CHECK_THROWS_AS(parse_json("{not json"), FormatError);
    CHECK_THROWS_AS(read_text("/nonexistent/file.json"), FormatError);
}

TEST_CASE("polynomial and grading documents round trip") {
    MPoly p = testing::load_poly("sr.json");
    CHECK(poly_from_json(poly_json(p)) == p);
    CHECK(poly_json(p)["vars"].size() == 22);
    Degree4Family f = family_degree4(1, 1);
    Grading g = grading_from_json(grading_json(f.grading));
    CHECK(g.basis == f.grading.basis);
    CHECK(g.weights == f.grading.weights);
    CHECK(matrix_from_json(matrix_json(g.basis)) == g.basis);
    CHECK(vec_from_json(vec_json(Vec{1, Rational(-2, 3)})) == Vec{1, Rational(-2, 3)});
}
