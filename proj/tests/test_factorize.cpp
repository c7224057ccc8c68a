#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testers.hpp"
#include "unifact/factorize.hpp"

using namespace unifact;

namespace {

double phi3_error(const std::vector<ParamVector>& Z, const std::vector<Cplx>& b) {
    FactorChain chain(static_cast<int>(b.size()), Orientation::inverse);
    for (const auto& pv : Z)
        chain.append(pv);
    auto phi = phi_eval(chain);
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        err = std::max(err, std::abs(phi[i] - b[i]));
    }
    return err / std::max(scale, 1.0);
}

Poly zvar() { return Poly::variable(VarId::symbol("z")); }

PolyMatrix2 poly_product_matrix(const std::vector<PolyElementaryFactor>& fs) {
    SymMatrix m = product2(fs);
    return PolyMatrix2(m(1, 1), m(1, 2), m(2, 1), m(2, 2));
}

} // namespace

TEST_CASE("preimage_last_row: worked n=2 examples") {
    SUBCASE("b = (2,3): Z = (-2, -1, 0)") {
        auto Z = preimage_last_row({Cplx(2.0), Cplx(3.0)});
        CHECK(Z[0].at(2, 1) == Cplx(-2.0));
        CHECK(Z[1].at(1, 2) == Cplx(-1.0));
        CHECK(Z[2].at(2, 1) == Cplx(0.0));
        CHECK(phi3_error(Z, {Cplx(2.0), Cplx(3.0)}) < 1e-15);
    }
    SUBCASE("b = (0,5): Z = (-1, -4, 1/5)") {
        auto Z = preimage_last_row({Cplx(0.0), Cplx(5.0)});
        CHECK(Z[0].at(2, 1) == Cplx(-1.0));
        CHECK(Z[1].at(1, 2) == Cplx(-4.0));
        CHECK(std::abs(Z[2].at(2, 1) - Cplx(0.2)) < 1e-16);
        CHECK(phi3_error(Z, {Cplx(0.0), Cplx(5.0)}) < 1e-15);
    }
    SUBCASE("b = (1,1): Z = (-1, 0, 0)") {
        auto Z = preimage_last_row({Cplx(1.0), Cplx(1.0)});
        CHECK(Z[0].at(2, 1) == Cplx(-1.0));
        CHECK(Z[1].at(1, 2) == Cplx(0.0));
        CHECK(Z[2].at(2, 1) == Cplx(0.0));
    }
    SUBCASE("b = 0 rejected") {
        CHECK_THROWS_AS(preimage_last_row({Cplx(0.0), Cplx(0.0)}), DomainError);
    }
}

TEST_CASE("preimage_last_row: random targets incl. forced b1 = 0, always off S_3") {
    testers::Rng rng(101);
    for (int n = 2; n <= 5; ++n) {
        for (int i = 0; i < 120; ++i) {
            std::vector<Cplx> b = testers::random_point(rng, n, 1.5);
            if (i % 3 == 0)
                b[0] = Cplx(0.0);
            bool nonzero = false;
            for (auto& z : b)
                nonzero = nonzero || (z != Cplx(0.0));
            if (!nonzero)
                continue;
            auto Z = preimage_last_row(b);
            CHECK(phi3_error(Z, b) <= 1e-12);
            CHECK_FALSE(in_singular_set(Z, 3));
        }
    }
}

TEST_CASE("peel_last_row: the worked 2x2 example") {
    ComplexMatrix A(2);
    A(1, 1) = Cplx(2.0);
    A(1, 2) = Cplx(3.0);
    A(2, 1) = Cplx(1.0);
    A(2, 2) = Cplx(2.0);
    auto Z = preimage_last_row(A.last_row());
    // the preimage of (1,2) is exactly (-1,-1,0)
    CHECK(Z[0].at(2, 1) == Cplx(-1.0));
    CHECK(Z[1].at(1, 2) == Cplx(-1.0));
    auto peel = peel_last_row(A, Z);
    CHECK(peel.b_matrix(1, 1) == Cplx(1.0));
    CHECK(peel.b_matrix(1, 2) == Cplx(-1.0));
    CHECK(peel.b_matrix(2, 1) == Cplx(0.0));
    CHECK(peel.b_matrix(2, 2) == Cplx(1.0));
    REQUIRE(peel.h.size() == 1);
    CHECK(peel.h[0] == Cplx(-1.0));
    CHECK(peel.core.n() == 1);
    CHECK(std::abs(peel.core(1, 1) - Cplx(1.0)) < 1e-15);
}

TEST_CASE("peel_last_row: identity with padded zero chain; mismatch rejected") {
    FactorChain zeros(3, Orientation::inverse);
    for (int k = 1; k <= 1; ++k)
        zeros.append(ParamVector(3, k));
    FactorChain padded = pad_factors(zeros);
    auto peel = peel_last_row(ComplexMatrix::identity(3), padded.factors());
    for (auto& h : peel.h)
        CHECK(h == Cplx(0.0));
    CHECK(peel.core.frobenius_distance(ComplexMatrix::identity(2)) == 0.0);

    ComplexMatrix other = ComplexMatrix::identity(3);
    other(3, 1) = Cplx(2.0); // last row no longer matches
    CHECK_THROWS_AS(peel_last_row(other, padded.factors()), DomainError);
}

TEST_CASE("peel identity holds on random matched chains") {
    testers::Rng rng(103);
    for (int n = 2; n <= 6; ++n)
        for (int i = 0; i < 25; ++i) {
            ComplexMatrix A = testers::random_sl(rng, n);
            auto Z = preimage_last_row(A.last_row());
            auto peel = peel_last_row(A, Z, 1e-8);
            for (int j = 1; j <= n; ++j) {
                Cplx expect = (j == n) ? Cplx(1.0) : Cplx(0.0);
                CHECK(std::abs(peel.b_matrix(n, j) - expect) <= 1e-10);
            }
            CHECK(std::abs(peel.core.det() - Cplx(1.0)) < 1e-9);
        }
}

TEST_CASE("factor_constant: examples") {
    SUBCASE("A = [[2,3],[1,2]] factors as U(1) L(1) U(1)") {
        ComplexMatrix A(2);
        A(1, 1) = Cplx(2.0);
        A(1, 2) = Cplx(3.0);
        A(2, 1) = Cplx(1.0);
        A(2, 2) = Cplx(2.0);
        auto fs = factor_constant(A);
        REQUIRE(fs.size() == 3);
        CHECK(fs[0].side == Side::upper);
        CHECK(fs[1].side == Side::lower);
        CHECK(fs[2].side == Side::upper);
        CHECK(std::abs(fs[0].entries.at({1, 2}) - Cplx(1.0)) < 1e-12);
        CHECK(std::abs(fs[1].entries.at({2, 1}) - Cplx(1.0)) < 1e-12);
        CHECK(std::abs(fs[2].entries.at({1, 2}) - Cplx(1.0)) < 1e-12);
        CHECK(verify_factorization(A, fs).match);
    }
    SUBCASE("identity factors to the empty list") {
        for (int n : {2, 3, 4})
            CHECK(factor_constant(ComplexMatrix::identity(n)).empty());
    }
    SUBCASE("det != 1 rejected") {
        ComplexMatrix A = ComplexMatrix::identity(2);
        A(1, 1) = Cplx(2.0);
        CHECK_THROWS_AS(factor_constant(A), DomainError);
    }
}

TEST_CASE("factor_constant round-trips random SL_n and unipotent products") {
    testers::Rng rng(107);
    SUBCASE("random SL_n, n <= 6") {
        for (int n = 2; n <= 6; ++n)
            for (int i = 0; i < 20; ++i) {
                ComplexMatrix A = testers::random_sl(rng, n);
                auto fs = factor_constant(A);
                auto rep = verify_factorization(A, fs);
                CHECK(rep.match);
                CHECK(rep.relative_error <= 1e-10);
                for (auto& f : fs) {
                    bool lower = f.side == Side::lower;
                    for (auto& [rc, v] : f.entries)
                        CHECK((lower ? rc.first > rc.second : rc.first < rc.second));
                }
            }
    }
    SUBCASE("product of six unipotent factors, n = 4") {
        FactorChain chain = testers::random_chain(rng, 4, 6, 1.0);
        ComplexMatrix A = to_complex_matrix(psi_eval(chain));
        auto fs = factor_constant(A);
        CHECK(verify_factorization(A, fs).relative_error <= 1e-10);
    }
}

TEST_CASE("whitehead_diag: numeric and exact forms") {
    SUBCASE("u = 2 multiplies to diag(2, 1/2)") {
        auto fs = whitehead_diag(Cplx(2.0));
        REQUIRE(fs.size() == 5);
        ComplexMatrix m = product(2, fs);
        CHECK(std::abs(m(1, 1) - Cplx(2.0)) < 1e-15);
        CHECK(std::abs(m(2, 2) - Cplx(0.5)) < 1e-15);
        CHECK(std::abs(m(1, 2)) < 1e-15);
        CHECK(std::abs(m(2, 1)) < 1e-15);
    }
    SUBCASE("u = 1 multiplies to the identity") {
        ComplexMatrix m = product(2, whitehead_diag(Cplx(1.0)));
        CHECK(m.frobenius_distance(ComplexMatrix::identity(2)) < 1e-15);
    }
    SUBCASE("u = -1 multiplies to diag(-1, -1)") {
        ComplexMatrix m = product(2, whitehead_diag(Cplx(-1.0)));
        CHECK(std::abs(m(1, 1) + Cplx(1.0)) < 1e-15);
        CHECK(std::abs(m(2, 2) + Cplx(1.0)) < 1e-15);
    }
    SUBCASE("exact identity for rational u") {
        testers::Rng rng(109);
        for (int i = 0; i < 20; ++i) {
            ExactComplex u = testers::random_rational(rng);
            if (u.is_zero())
                continue;
            SymMatrix m = product2(whitehead_diag_exact(u));
            CHECK(m(1, 1) == Poly(u));
            CHECK(m(2, 2) == Poly(u.inverse()));
            CHECK(m(1, 2).is_zero());
            CHECK(m(2, 1).is_zero());
        }
        CHECK_THROWS_AS(whitehead_diag(Cplx(0.0)), DomainError);
    }
}

TEST_CASE("univariate division is exact") {
    VarId z = VarId::symbol("z");
    Poly p = zvar() * zvar() * zvar() - Poly(2) * zvar() + Poly(5);
    Poly d = zvar() - Poly(1);
    auto [q, r] = poly_divmod(p, d, z);
    CHECK(q * d + r == p);
    CHECK(r.degree_in(z) == 0);
    CHECK_THROWS_AS(poly_divmod(p, Poly(), z), DomainError);
}

TEST_CASE("factor_sl2_poly: examples") {
    SUBCASE("L(z) U(1) = [[1,1],[z, z+1]] round-trips exactly") {
        PolyMatrix2 A(Poly(1), Poly(1), zvar(), zvar() + Poly(1));
        auto fs = factor_sl2_poly(A);
        CHECK(product2(fs) == A.matrix());
    }
    SUBCASE("identity gives the empty list") {
        PolyMatrix2 I(Poly(1), Poly(), Poly(), Poly(1));
        CHECK(factor_sl2_poly(I).empty());
    }
    SUBCASE("[[0,1],[-1,0]] = E12(1) E21(-1) E12(1)") {
        PolyMatrix2 W(Poly(), Poly(1), Poly(-1), Poly());
        auto fs = factor_sl2_poly(W);
        REQUIRE(fs.size() == 3);
        CHECK(fs[0].side == Side::upper);
        CHECK(fs[0].payload == Poly(1));
        CHECK(fs[1].side == Side::lower);
        CHECK(fs[1].payload == Poly(-1));
        CHECK(fs[2].side == Side::upper);
        CHECK(fs[2].payload == Poly(1));
        CHECK(product2(fs) == W.matrix());
    }
    SUBCASE("multivariate entries rejected") {
        Poly z1 = Poly::variable(VarId::symbol("z1"));
        Poly z2 = Poly::variable(VarId::symbol("z2"));
        CHECK_THROWS_AS(PolyMatrix2(Poly(1) - z1 * z2, z1 * z1, -(z2 * z2), Poly(1) + z1 * z2),
                        DomainError);
    }
    SUBCASE("nonunit determinant rejected") {
        CHECK_THROWS_AS(PolyMatrix2(zvar(), Poly(), Poly(), zvar()), DomainError);
    }
}

TEST_CASE("factor_sl2_poly round-trips random elementary words exactly") {
    testers::Rng rng(113);
    std::uniform_int_distribution<int> len(1, 8), deg(0, 5), side(0, 1);
    VarId z = VarId::symbol("z");
    for (int i = 0; i < 60; ++i) {
        std::vector<PolyElementaryFactor> word;
        for (int f = 0, L = len(rng); f < L; ++f) {
            Poly payload;
            int D = deg(rng);
            for (int d = 0; d <= D; ++d) {
                Poly term = (d == 0) ? Poly(testers::random_rational(rng))
                                     : Poly(testers::random_rational(rng)) * [&] {
                                           Poly m;
                                           m.add_term(Monomial(z, d), ExactComplex(1));
                                           return m;
                                       }();
                payload += term;
            }
            word.push_back({side(rng) ? Side::upper : Side::lower, payload});
        }
        PolyMatrix2 A = poly_product_matrix(word);
        auto fs = factor_sl2_poly(A);
        CHECK(product2(fs) == A.matrix());
    }
}

TEST_CASE("verify_factorization reports matches, mismatches, and counts") {
    SUBCASE("identity vs empty list") {
        auto rep = verify_factorization(ComplexMatrix::identity(3), {});
        CHECK(rep.match);
        CHECK(rep.factor_count == 0);
    }
    SUBCASE("no 3-factor candidate matches the Cohn matrix") {
        Poly z1 = Poly::variable(VarId::symbol("z1"));
        Poly z2 = Poly::variable(VarId::symbol("z2"));
        SymMatrix cohn(2);
        cohn(1, 1) = Poly(1) - z1 * z2;
        cohn(1, 2) = z1 * z1;
        cohn(2, 1) = -(z2 * z2);
        cohn(2, 2) = Poly(1) + z1 * z2;

        testers::Rng rng(127);
        std::uniform_int_distribution<int> side(0, 1);
        for (int i = 0; i < 30; ++i) {
            std::vector<PolyElementaryFactor> candidate;
            bool low = side(rng);
            for (int f = 0; f < 3; ++f) {
                // degree <= 4 payloads in z1, z2
                Poly payload;
                payload += Poly(testers::random_rational(rng));
                payload += Poly(testers::random_rational(rng)) * z1;
                payload += Poly(testers::random_rational(rng)) * z2;
                payload += Poly(testers::random_rational(rng)) * z1 * z2;
                payload += Poly(testers::random_rational(rng)) * z1 * z1 * z2 * z2;
                candidate.push_back({low ? Side::lower : Side::upper, payload});
                low = !low;
            }
            CHECK_FALSE(product2(candidate) == cohn);
        }
    }
}
