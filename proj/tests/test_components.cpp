#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testers.hpp"
#include "unifact/components.hpp"

using namespace unifact;

namespace {

Poly var(int k, int r, int c) { return Poly::variable(VarId::param(k, r, c)); }

// Random point forced onto S_K: constrained coordinates zeroed.
std::vector<Cplx> random_singular_point(testers::Rng& rng, const ComponentSystem& sys) {
    std::vector<Cplx> p = testers::random_point(rng, sys.variables().size());
    auto zeros = singular_set_constraints(sys.n(), sys.K());
    const auto& vars = sys.variables();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (zeros.count(vars[i]))
            p[i] = Cplx(0.0);
    return p;
}

} // namespace

TEST_CASE("base case and small systems match the hand formulas") {
    auto s1 = symbolic_components(2, 1);
    CHECK(s1.components()[0] == -var(1, 2, 1));
    CHECK(s1.components()[1] == Poly(1));

    auto s2 = symbolic_components(2, 2);
    Poly z = var(1, 2, 1), w = var(2, 1, 2);
    CHECK(s2.components()[0] == -z);
    CHECK(s2.components()[1] == Poly(1) + z * w);

    auto s3 = symbolic_components(2, 3);
    Poly v = var(3, 2, 1);
    CHECK(s3.components()[0] == -z - (Poly(1) + z * w) * v);
    CHECK(s3.components()[1] == Poly(1) + z * w);
}

TEST_CASE("P_{n,1} is identically 1 and P_{n,K} restricts to 1 on S_K") {
    for (int n : {2, 3, 4})
        CHECK(symbolic_components(n, 1).components()[n - 1] == Poly(1));
    for (int n : {2, 3})
        for (int K : {2, 3, 4}) {
            auto sys = symbolic_components(n, K);
            auto zeros = singular_set_constraints(n, K);
            CHECK(sys.components()[n - 1].substitute(zeros) == Poly(1));
        }
}

TEST_CASE("recurrence components equal the direct product expansion") {
    for (int n : {2, 3})
        for (int K = 1; K <= 4; ++K) {
            auto sys = symbolic_components(n, K);
            auto direct = phi_eval(symbolic_chain(n, K));
            REQUIRE(static_cast<int>(direct.size()) == n);
            for (int k = 0; k < n; ++k)
                CHECK(sys.components()[k] == direct[k]);
        }
}

TEST_CASE("dependency sets follow the alternating pattern") {
    for (int n : {2, 3, 4})
        for (int K = 2; K <= 4; ++K) {
            auto sys = symbolic_components(n, K);
            for (int k = 1; k <= n; ++k) {
                std::set<VarId> expected;
                if (K % 2 == 0) {
                    for (int i = 1; i < k; ++i)
                        for (int j = i + 1; j <= k; ++j)
                            expected.insert(VarId::param(K, i, j));
                } else {
                    for (int j = k; j <= n; ++j)
                        for (int i = j + 1; i <= n; ++i)
                            expected.insert(VarId::param(K, i, j));
                }
                std::set<VarId> actual;
                for (const VarId& v : sys.components()[k - 1].support())
                    if (v.factor == K)
                        actual.insert(v);
                CHECK(actual == expected);
            }
        }
}

TEST_CASE("jacobian_at matches hand differentiation") {
    SUBCASE("n=2, K=2 at (1,0)") {
        auto sys = symbolic_components(2, 2);
        std::vector<Cplx> p{Cplx(1.0), Cplx(0.0)};
        auto J = jacobian_at(sys, p);
        CHECK(J(0, 0) == Cplx(-1.0));
        CHECK(J(0, 1) == Cplx(0.0));
        CHECK(J(1, 0) == Cplx(0.0));
        CHECK(J(1, 1) == Cplx(1.0));
    }
    SUBCASE("n=2, K=3 at (0,0,7): rank 1") {
        auto sys = symbolic_components(2, 3);
        std::vector<Cplx> p{Cplx(0.0), Cplx(0.0), Cplx(7.0)};
        auto J = jacobian_at(sys, p);
        CHECK(J(0, 0) == Cplx(-1.0));
        CHECK(J(0, 1) == Cplx(0.0));
        CHECK(J(0, 2) == Cplx(-1.0));
        CHECK(J(1, 0) == Cplx(0.0));
        CHECK(J(1, 1) == Cplx(0.0));
        CHECK(J(1, 2) == Cplx(0.0));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
        CHECK(svd.singularValues()(1) < 1e-14);
    }
    SUBCASE("zero point lies in S_K, rank < n") {
        for (int n : {2, 3})
            for (int K : {2, 3}) {
                auto sys = symbolic_components(n, K);
                std::vector<Cplx> zero(sys.dim(), Cplx(0.0));
                CHECK_FALSE(submersive_at(sys, zero));
            }
    }
    SUBCASE("wrong-dimension points are rejected") {
        auto sys = symbolic_components(2, 2);
        CHECK_THROWS_AS(jacobian_at(sys, std::vector<Cplx>{Cplx(1.0)}), DomainError);
    }
}

TEST_CASE("submersive_at spot checks") {
    auto s3 = symbolic_components(2, 3);
    CHECK(submersive_at(s3, std::vector<Cplx>{Cplx(-1.0), Cplx(-4.0), Cplx(0.2)}));
    for (double v : {0.0, 1.0, -3.5})
        CHECK_FALSE(submersive_at(s3, std::vector<Cplx>{Cplx(0.0), Cplx(0.0), Cplx(v)}));

    auto s2 = symbolic_components(2, 2);
    CHECK_FALSE(submersive_at(s2, std::vector<Cplx>{Cplx(0.0), Cplx(5.0)}));
    CHECK(submersive_at(s2, std::vector<Cplx>{Cplx(1e-3), Cplx(5.0)}));
}

TEST_CASE("rank characterization agrees with in_singular_set on random points") {
    testers::Rng rng(53);
    for (int n : {2, 3})
        for (int K = 2; K <= 4; ++K) {
            auto sys = symbolic_components(n, K);
            for (int i = 0; i < 100; ++i) {
                auto off = testers::random_point(rng, sys.variables().size());
                auto chain = FactorChain::from_flat(n, K, Orientation::inverse, off);
                bool sing = in_singular_set(chain);
                // a random point is off S_K with probability one
                CHECK_FALSE(sing);
                CHECK(submersive_at(sys, off) == !sing);

                auto on = random_singular_point(rng, sys);
                auto chain_on = FactorChain::from_flat(n, K, Orientation::inverse, on);
                CHECK(in_singular_set(chain_on));
                CHECK_FALSE(submersive_at(sys, on));
            }
        }
}

TEST_CASE("singular_image_check: even K restricts to (0,...,0,1), odd K to last = 1") {
    SUBCASE("n=2, K=2 restriction is (0, 1)") {
        auto rep = singular_image_check(2, 2);
        CHECK(rep.pass);
        CHECK(rep.restricted[0] == Poly());
        CHECK(rep.restricted[1] == Poly(1));
    }
    SUBCASE("n=2, K=3 restriction is (-v, 1)") {
        auto rep = singular_image_check(2, 3);
        CHECK(rep.pass);
        CHECK(rep.restricted[0] == -var(3, 2, 1));
        CHECK(rep.restricted[1] == Poly(1));
    }
    SUBCASE("n=3, K=2 restriction is (0, 0, 1)") {
        auto rep = singular_image_check(3, 2);
        CHECK(rep.pass);
        CHECK(rep.restricted[0] == Poly());
        CHECK(rep.restricted[1] == Poly());
        CHECK(rep.restricted[2] == Poly(1));
    }
    SUBCASE("report passes through n <= 4, K <= 5") {
        for (int n = 2; n <= 4; ++n)
            for (int K = 2; K <= 5; ++K)
                CHECK(singular_image_check(n, K).pass);
    }
}

TEST_CASE("symbolic_components honors the term budget") {
    std::size_t saved = term_budget();
    set_term_budget(4);
    CHECK_THROWS_AS(symbolic_components(4, 4), NumericError);
    set_term_budget(saved);
    CHECK_THROWS_AS(symbolic_components(1, 2), DomainError);
}

TEST_CASE("intermediate rank statements at sampled S_K points") {
    // The first n-1 rows of the Jacobian keep rank n-1 on S_K (the
    // induction bookkeeping behind the rank characterization). Sampled, seed 0.
    testers::Rng rng(0);
    for (int n : {2, 3})
        for (int K = 2; K <= 4; ++K) {
            auto sys = symbolic_components(n, K);
            for (int i = 0; i < 100; ++i) {
                auto p = random_singular_point(rng, sys);
                Eigen::MatrixXcd J = jacobian_at(sys, p);
                Eigen::MatrixXcd top = J.topRows(n - 1);
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(top);
                const auto& sv = svd.singularValues();
                CHECK(sv(sv.size() - 1) > kRankTol * sv(0));
            }
        }
}
