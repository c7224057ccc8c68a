#ifndef UNIFACT_TRACKER_HPP
#define UNIFACT_TRACKER_HPP

#include <vector>

#include "unifact/components.hpp"
#include "unifact/factorize.hpp"

namespace unifact {

struct TrackerConfig {
    double newton_tol = 1e-12;   // residual target per Newton solve
    int max_iters = 60;          // Gauss-Newton iterations per target
    double rank_tol = kRankTol;  // relative singular-value threshold (S_K guard)
    int max_bisect = 12;         // bisection levels between consecutive samples
    double continuity_cap = 10.0; // max parameter-space step between samples
    double step_cap = 0.5;       // max |b(t_{i+1}) - b(t_i)| accepted on input
};

struct PathSample {
    double t = 0.0;
    std::vector<Cplx> b;
};

// Sampled target path b(t) in C^n \ {0} with a seed on the first fiber.
struct PathProblem {
    int n = 0, K = 0;
    std::vector<PathSample> samples;
    std::vector<Cplx> seed;
    TrackerConfig config;

    void validate() const; // sizes, nonzero targets, step cap
};

// Damped Gauss-Newton toward Phi_K(Z) = b using minimum-norm updates of the
// underdetermined linearization. Throws NumericError near S_K (rank
// threshold) or when max_iters is exhausted.
std::vector<Cplx> newton_step(const ComponentSystem& system, std::vector<Cplx> Z,
                              const std::vector<Cplx>& b, int max_iters = 60,
                              double tol = 1e-12, double rank_tol = kRankTol);

struct TrackPoint {
    double t = 0.0;
    std::vector<Cplx> Z;
    double residual = 0.0;
    double min_singular_value = 0.0;
};

// Tracks the sampled path, bisecting linearly interpolated sub-targets on
// Newton failure (up to config.max_bisect levels). Deterministic.
std::vector<TrackPoint> track_path(const PathProblem& problem);

struct MatrixSample {
    double t = 0.0;
    ComplexMatrix A;
};

struct ChainSample {
    double t = 0.0;
    std::vector<ElementaryFactor> factors; // fixed structure across samples
    double residual = 0.0;                 // relative product error
};

// Factors a sampled matrix path continuously: tracks the last row with the
// K = 3 system, peels, and recurses on the SL_{n-1} cores. Identity factors
// are kept so the factor structure is identical at every sample.
std::vector<ChainSample> factor_matrix_path(const std::vector<MatrixSample>& samples,
                                            const TrackerConfig& config = {});

} // namespace unifact

#endif
