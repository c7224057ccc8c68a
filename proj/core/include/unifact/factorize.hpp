#ifndef UNIFACT_FACTORIZE_HPP
#define UNIFACT_FACTORIZE_HPP

#include <map>
#include <optional>
#include <vector>

#include "unifact/matrix.hpp"
#include "unifact/param.hpp"
#include "unifact/unipotent.hpp"

namespace unifact {

enum class Side { lower, upper };

// One unit triangular factor of a factorization, numeric entries.
struct ElementaryFactor {
    Side side = Side::lower;
    int n = 2;
    std::map<std::pair<int, int>, Cplx> entries; // off-diagonal triangle, sparse

    ComplexMatrix matrix() const;
    bool is_identity(double tol = 0.0) const;
};

// 2x2 unit triangular factor with a univariate polynomial payload in the
// single off-diagonal slot.
struct PolyElementaryFactor {
    Side side = Side::lower;
    Poly payload;

    SymMatrix matrix() const;
};

// Element of SL_2 over C[z]: entries a, b, c, d with ad - bc = 1 exactly.
struct PolyMatrix2 {
    Poly a, b, c, d;
    VarId var;

    PolyMatrix2(Poly a_, Poly b_, Poly c_, Poly d_); // validates det and univariateness
    SymMatrix matrix() const;
};

// Point in the Phi_3 fiber over b (inverse orientation, off S_3), built by
// the two-factor last-row formulas, with the third factor used when the
// leading coordinate is (numerically) zero.
std::vector<ParamVector> preimage_last_row(const std::vector<Cplx>& b);

// Multiplies Psi_K(Z) A^{-1} (last row (0,...,0,1) up to tol when the last
// rows of Psi_K(Z) and A agree), strips the last column with an elementary
// upper factor and returns it with the SL_{n-1} core.
struct PeelResult {
    std::vector<Cplx> h;     // last column of B above the trailing 1
    ComplexMatrix core;      // upper-left (n-1) x (n-1) block of E(-h) B
    ComplexMatrix b_matrix;  // B = Psi_K(Z) A^{-1}
};
PeelResult peel_last_row(const ComplexMatrix& A, const std::vector<ParamVector>& Z,
                         double tol = 1e-8);

// Factorization of a constant SL_n matrix into alternating unipotent
// triangular factors by the preimage/peel induction. Identity factors are
// dropped and adjacent same-side factors merged.
std::vector<ElementaryFactor> factor_constant(const ComplexMatrix& A, double det_tol = 1e-10);

// diag(u, 1/u) = E12(u) E21(-1/u) E12(u-1) E21(1) E12(-1).
std::vector<ElementaryFactor> whitehead_diag(Cplx u);
std::vector<PolyElementaryFactor> whitehead_diag_exact(const ExactComplex& u);

// Exact univariate division p = q*d + r with deg r < deg d.
std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& d, const VarId& var);

// Exact factorization over C[z] by Euclidean degree reduction on the first
// column, finished with the Whitehead identity.
std::vector<PolyElementaryFactor> factor_sl2_poly(const PolyMatrix2& A);

struct VerifyReport {
    bool match = false;
    int factor_count = 0;
    double relative_error = 0.0; // numeric mode only
};

VerifyReport verify_factorization(const ComplexMatrix& target,
                                  const std::vector<ElementaryFactor>& factors,
                                  double tol = 1e-10);
VerifyReport verify_factorization(const PolyMatrix2& target,
                                  const std::vector<PolyElementaryFactor>& factors);

// Merges adjacent same-side factors (payloads composed through the product
// matrix) and drops identities; exact for the polynomial overload.
std::vector<ElementaryFactor> merge_factors(std::vector<ElementaryFactor> factors,
                                            bool drop_identities = true);
std::vector<PolyElementaryFactor> merge_factors(std::vector<PolyElementaryFactor> factors,
                                                bool drop_identities = true);

// Product of an elementary-factor word.
ComplexMatrix product(int n, const std::vector<ElementaryFactor>& factors);
SymMatrix product2(const std::vector<PolyElementaryFactor>& factors);

} // namespace unifact

#endif
