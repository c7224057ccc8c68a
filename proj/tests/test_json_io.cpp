#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testers.hpp"
#include "unifact/json_io.hpp"

using namespace unifact;

TEST_CASE("polynomial JSON round trip preserves structure exactly") {
    testers::Rng rng(131);
    std::vector<VarId> vars{VarId::param(1, 2, 1), VarId::param(2, 1, 2), VarId::symbol("x1")};
    for (int i = 0; i < 25; ++i) {
        Poly p = testers::random_multilinear(rng, vars, 5);
        Poly q = io::poly_from_json(io::poly_to_json(p));
        CHECK(p == q);
    }
    // rationals stay decimal-free p/q strings
    Poly c(ExactComplex::from_strings("-1/5", "0"));
    std::string text = io::poly_to_json(c);
    CHECK(text.find("-1/5") != std::string::npos);
    CHECK(io::poly_from_json(text) == c);
}

TEST_CASE("matrix JSON round trip and schema errors") {
    testers::Rng rng(137);
    ComplexMatrix A = testers::random_sl(rng, 3);
    ComplexMatrix B = io::matrix_from_json(io::matrix_to_json(A));
    CHECK(A.frobenius_distance(B) == 0.0);
    CHECK_THROWS_AS(io::matrix_from_json("{\"n\":2,\"rows\":[[1,2]]}"), IoError);
    CHECK_THROWS_AS(io::matrix_from_json("not json"), IoError);
}

TEST_CASE("complex values parse from object, pair, and bare forms") {
    auto v = io::cvec_from_json("[1.5, [2, -3], {\"re\": 0.5, \"im\": 4}]");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == Cplx(1.5, 0.0));
    CHECK(v[1] == Cplx(2.0, -3.0));
    CHECK(v[2] == Cplx(0.5, 4.0));
    // emitted form is always the object form
    CHECK(io::cvec_to_json(v).find("\"re\"") != std::string::npos);
    CHECK(io::cvec_to_json(v).find('[') == 0);
}

TEST_CASE("factor chain JSON round trip") {
    testers::Rng rng(139);
    FactorChain chain = testers::random_chain(rng, 3, 4);
    FactorChain back = io::chain_from_json(io::chain_to_json(chain));
    CHECK(back.n() == chain.n());
    CHECK(back.K() == chain.K());
    CHECK(back.orientation() == Orientation::inverse);
    for (int k = 1; k <= chain.K(); ++k)
        for (auto& [rc, v] : chain.factor(k).entries())
            CHECK(back.factor(k).at(rc.first, rc.second) == v);
}

TEST_CASE("side-tagged factor words round trip; side defaults to k parity") {
    testers::Rng rng(149);
    ComplexMatrix A = testers::random_sl(rng, 3);
    auto fs = factor_constant(A);
    int n_out = 0;
    auto back = io::factors_from_json(io::factors_to_json(3, fs), &n_out);
    CHECK(n_out == 3);
    REQUIRE(back.size() == fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        CHECK(back[i].side == fs[i].side);
        CHECK(back[i].entries == fs[i].entries);
    }
    // spec schema without side: parity of k decides
    auto legacy = io::factors_from_json(
        R"({"n":2,"factors":[{"k":1,"entries":[{"row":2,"col":1,"re":1.0,"im":0.0}]},
                             {"k":2,"entries":[{"row":1,"col":2,"re":2.0,"im":0.0}]}]})");
    REQUIRE(legacy.size() == 2);
    CHECK(legacy[0].side == Side::lower);
    CHECK(legacy[1].side == Side::upper);
}

TEST_CASE("polynomial matrices and factor lists round trip exactly") {
    Poly z = Poly::variable(VarId::symbol("z"));
    PolyMatrix2 A(Poly(1), Poly(1), z, z + Poly(1));
    PolyMatrix2 B = io::poly_matrix2_from_json(io::poly_matrix2_to_json(A));
    CHECK(A.matrix() == B.matrix());

    auto fs = factor_sl2_poly(A);
    auto back = io::poly_factors_from_json(io::poly_factors_to_json(fs));
    REQUIRE(back.size() == fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        CHECK(back[i].side == fs[i].side);
        CHECK(back[i].payload == fs[i].payload);
    }
}

TEST_CASE("assignments, charts, track records serialize") {
    PointAssignment point{{VarId::symbol("w"), Cplx(0.5, -2.0)},
                          {VarId::param(1, 2, 1), Cplx(1.0)}};
    auto back = io::assignment_from_json(io::assignment_to_json(point));
    CHECK(back == point);

    FiberChart chart = fiber_chart(2, 2, {Cplx(2.0), Cplx(3.0)});
    std::string text = io::chart_to_json(chart);
    CHECK(text.find("\"den\":\"a_1\"") != std::string::npos);
    CHECK(text.find("\"residual\"") != std::string::npos);
    CHECK(text.find("\"base_dims\"") != std::string::npos);

    std::vector<TrackPoint> pts(1);
    pts[0].t = 0.5;
    pts[0].Z = {Cplx(1.0), Cplx(2.0)};
    pts[0].residual = 1e-12;
    pts[0].min_singular_value = 0.5;
    std::string track = io::track_to_json(pts);
    CHECK(track.find("min_singular_value") != std::string::npos);

    auto samples = io::path_samples_from_json(R"({"samples":[{"t":0.0,"b":[1,[0,1]]}]})");
    REQUIRE(samples.size() == 1);
    CHECK(samples[0].b[1] == Cplx(0.0, 1.0));
}

TEST_CASE("variable text spellings") {
    CHECK(io::varid_from_text("z[2,1,3]") == VarId::param(3, 2, 1));
    CHECK(io::varid_from_text("x1") == VarId::symbol("x1"));
    CHECK_THROWS_AS(io::varid_from_text("z[2,1"), IoError);
}
