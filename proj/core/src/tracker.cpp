#include "unifact/tracker.hpp"

#include <cmath>
#include <sstream>

namespace unifact {

namespace {

double norm2(const std::vector<Cplx>& v) {
    double s = 0.0;
    for (const Cplx& z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

std::vector<Cplx> diff(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    std::vector<Cplx> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

} // namespace

void PathProblem::validate() const {
    if (n < 2 || K < 1)
        throw DomainError("path problem needs n >= 2, K >= 1");
    if (samples.empty())
        throw DomainError("path problem needs at least one sample");
    const std::size_t dim = static_cast<std::size_t>(K) * n * (n - 1) / 2;
    if (seed.size() != dim)
        throw DomainError("seed has wrong dimension");
    for (const auto& s : samples) {
        if (static_cast<int>(s.b.size()) != n)
            throw DomainError("path sample target has wrong length");
        if (norm2(s.b) == 0.0)
            throw DomainError("path targets must stay in C^n minus the origin");
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (samples[i + 1].t < samples[i].t)
            throw DomainError("path samples must be ordered in t");
        if (norm2(diff(samples[i + 1].b, samples[i].b)) > config.step_cap)
            throw DomainError("consecutive path samples exceed the step cap");
    }
}

std::vector<Cplx> newton_step(const ComponentSystem& system, std::vector<Cplx> Z,
                              const std::vector<Cplx>& b, int max_iters, double tol,
                              double rank_tol) {
    if (static_cast<int>(b.size()) != system.n())
        throw DomainError("target has wrong length for newton_step");
    std::vector<Cplx> r = diff(system.eval(Z), b);
    double res = norm2(r);
    if (res <= tol)
        return Z; // zero update

    for (int iter = 0; iter < max_iters; ++iter) {
        Eigen::MatrixXcd J = jacobian_at(system, Z);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv(0) == 0.0 || sv(sv.size() - 1) <= rank_tol * sv(0))
            throw NumericError("near-singular Jacobian (S_K neighborhood)");

        Eigen::VectorXcd rhs(system.n());
        for (int i = 0; i < system.n(); ++i)
            rhs(i) = -r[i];
        // Minimum-norm solution of J delta = -r.
        Eigen::VectorXcd delta = svd.solve(rhs);

        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= std::ldexp(1.0, -20)) {
            std::vector<Cplx> Znext = Z;
            for (std::size_t i = 0; i < Z.size(); ++i)
                Znext[i] += lambda * delta(static_cast<Eigen::Index>(i));
            std::vector<Cplx> rnext = diff(system.eval(Znext), b);
            double resnext = norm2(rnext);
            if (resnext < res || resnext <= tol) {
                Z = std::move(Znext);
                r = std::move(rnext);
                res = resnext;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw NumericError("Gauss-Newton stalled (damping underflow)");
        if (res <= tol)
            return Z;
    }
    throw NumericError("Gauss-Newton did not converge within max_iters");
}

namespace {

// Indices (canonical order) of the S_K-constrained coordinates.
std::vector<int> constrained_indices(const ComponentSystem& sys) {
    auto zeros = singular_set_constraints(sys.n(), sys.K());
    std::vector<int> idx;
    const auto& vars = sys.variables();
    for (int i = 0; i < sys.dim(); ++i)
        if (zeros.count(vars[i]))
            idx.push_back(i);
    return idx;
}

// Fibers over targets with last coordinate 1 touch S_K, and minimum-norm
// updates slide along them into the singular stratum. When the constrained
// coordinates shrink below the trigger, push them back out along the
// Jacobian null space (phi is unchanged to first order) and re-converge.
std::vector<Cplx> tracked_newton(const ComponentSystem& sys, std::vector<Cplx> Z,
                                 const std::vector<Cplx>& b, const TrackerConfig& cfg) {
    const double trigger = 0.2;
    const std::vector<int> idx = constrained_indices(sys);
    Z = newton_step(sys, std::move(Z), b, cfg.max_iters, cfg.newton_tol, cfg.rank_tol);
    for (int cycle = 0; cycle < 40; ++cycle) {
        double d = 0.0;
        for (int i : idx)
            d += std::norm(Z[i]);
        d = std::sqrt(d);
        if (d >= trigger)
            return Z;

        Eigen::MatrixXcd J = jacobian_at(sys, Z);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeFullV);
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(sys.dim());
        if (d > 1e-12) {
            for (int i : idx)
                g(i) = Z[i] / d;
        } else {
            g(idx.front()) = Cplx(1.0);
        }
        Eigen::VectorXcd nu = Eigen::VectorXcd::Zero(sys.dim());
        for (int c = sys.n(); c < sys.dim(); ++c) {
            Eigen::VectorXcd col = svd.matrixV().col(c);
            nu += (col.adjoint() * g)(0) * col;
        }
        if (nu.norm() < 1e-12)
            break; // no room to move inside the fiber
        double s = std::min(trigger - d, 0.25);
        for (int i = 0; i < sys.dim(); ++i)
            Z[i] += s * nu(i);
        Z = newton_step(sys, std::move(Z), b, cfg.max_iters, cfg.newton_tol, cfg.rank_tol);
    }
    return Z;
}

struct Tracker {
    const ComponentSystem& sys;
    const TrackerConfig& cfg;

    std::vector<Cplx> advance(std::vector<Cplx> Z, const std::vector<Cplx>& b_lo,
                              const std::vector<Cplx>& b_hi, double t_lo, double t_hi,
                              int depth) const {
        try {
            return tracked_newton(sys, std::move(Z), b_hi, cfg);
        } catch (const NumericError&) {
            if (depth >= cfg.max_bisect) {
                std::ostringstream os;
                os << "step-size underflow while tracking t in [" << t_lo << ", " << t_hi << "]";
                throw NumericError(os.str());
            }
        }
        std::vector<Cplx> b_mid(b_lo.size());
        for (std::size_t i = 0; i < b_lo.size(); ++i)
            b_mid[i] = 0.5 * (b_lo[i] + b_hi[i]);
        if (norm2(b_mid) == 0.0)
            throw NumericError("interpolated path target hit the origin");
        const double t_mid = 0.5 * (t_lo + t_hi);
        std::vector<Cplx> Zm = advance(std::move(Z), b_lo, b_mid, t_lo, t_mid, depth + 1);
        return advance(std::move(Zm), b_mid, b_hi, t_mid, t_hi, depth + 1);
    }
};

TrackPoint make_point(const ComponentSystem& sys, double t, std::vector<Cplx> Z,
                      const std::vector<Cplx>& b) {
    TrackPoint p;
    p.t = t;
    p.residual = norm2(diff(sys.eval(Z), b));
    p.min_singular_value = min_singular_value(jacobian_at(sys, Z));
    p.Z = std::move(Z);
    return p;
}

} // namespace

std::vector<TrackPoint> track_path(const PathProblem& problem) {
    problem.validate();
    int K = problem.K;
    std::vector<Cplx> seed = problem.seed;

    auto sys = std::make_unique<ComponentSystem>(symbolic_components(problem.n, K));
    {
        // A seed near S_K gets the padding trick before tracking starts.
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jacobian_at(*sys, seed));
        const auto& sv = svd.singularValues();
        if (sv(0) == 0.0 || sv(sv.size() - 1) <= problem.config.rank_tol * sv(0)) {
            FactorChain padded = pad_factors(
                FactorChain::from_flat(problem.n, K, Orientation::inverse, seed));
            K += 3;
            seed = padded.flat();
            sys = std::make_unique<ComponentSystem>(symbolic_components(problem.n, K));
        }
    }

    const TrackerConfig& cfg = problem.config;
    Tracker tracker{*sys, cfg};

    std::vector<TrackPoint> out;
    out.reserve(problem.samples.size());
    std::vector<Cplx> Z = tracked_newton(*sys, seed, problem.samples.front().b, cfg);
    out.push_back(make_point(*sys, problem.samples.front().t, Z, problem.samples.front().b));

    for (std::size_t i = 1; i < problem.samples.size(); ++i) {
        const auto& lo = problem.samples[i - 1];
        const auto& hi = problem.samples[i];
        std::vector<Cplx> Znext = tracker.advance(Z, lo.b, hi.b, lo.t, hi.t, 0);
        if (norm2(diff(Znext, Z)) > cfg.continuity_cap) {
            std::ostringstream os;
            os << "tracked point jumped beyond the continuity cap in [" << lo.t << ", " << hi.t
               << "]";
            throw NumericError(os.str());
        }
        Z = std::move(Znext);
        out.push_back(make_point(*sys, hi.t, Z, hi.b));
    }
    return out;
}

namespace {

std::vector<ChainSample> factor_path_rec(const std::vector<MatrixSample>& samples,
                                         const TrackerConfig& config) {
    const int n = samples.front().A.n();
    std::vector<ChainSample> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i].t = samples[i].t;
    if (n == 1)
        return out; // empty chains

    PathProblem problem;
    problem.n = n;
    problem.K = 3;
    problem.config = config;
    for (const auto& s : samples)
        problem.samples.push_back({s.t, s.A.last_row()});
    {
        std::vector<ParamVector> Z0 = preimage_last_row(problem.samples.front().b);
        FactorChain chain(n, Orientation::inverse);
        for (auto& pv : Z0)
            chain.append(std::move(pv));
        problem.seed = chain.flat();
    }
    std::vector<TrackPoint> track = track_path(problem);

    std::vector<MatrixSample> cores(samples.size());
    std::vector<std::vector<ElementaryFactor>> tails(samples.size());
    const std::size_t d = static_cast<std::size_t>(n) * (n - 1) / 2;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        // track_path may have padded the chain; recover K from the point.
        const int K_used = static_cast<int>(track[i].Z.size() / d);
        FactorChain chain =
            FactorChain::from_flat(n, K_used, Orientation::inverse, track[i].Z);
        PeelResult peel = peel_last_row(samples[i].A, chain.factors(), 1e-6);

        std::vector<ElementaryFactor> tail;
        ElementaryFactor eh;
        eh.side = Side::upper;
        eh.n = n;
        for (int j = 1; j <= n - 1; ++j)
            eh.entries[{j, n}] = -peel.h[j - 1];
        tail.push_back(std::move(eh));
        for (const ParamVector& zk : chain.factors()) {
            ParamVector x = inverse_params(zk);
            ElementaryFactor f;
            f.side = x.lower() ? Side::lower : Side::upper;
            f.n = n;
            for (auto& [rc, v] : x.entries())
                f.entries[rc] = v;
            tail.push_back(std::move(f));
        }
        tails[i] = std::move(tail);
        cores[i] = {samples[i].t, peel.core.inverse()};
    }

    std::vector<ChainSample> inner = factor_path_rec(cores, config);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::vector<ElementaryFactor> factors = std::move(inner[i].factors);
        for (ElementaryFactor& f : factors)
            f.n = n; // embed the SL_{n-1} factors
        for (ElementaryFactor& f : tails[i])
            factors.push_back(std::move(f));
        // Same-side merges follow the side pattern, which is identical at
        // every sample; identities are kept so the structure is stable.
        out[i].factors = merge_factors(std::move(factors), /*drop_identities=*/false);
        out[i].residual =
            verify_factorization(samples[i].A, out[i].factors, 1e-8).relative_error;
    }
    return out;
}

} // namespace

std::vector<ChainSample> factor_matrix_path(const std::vector<MatrixSample>& samples,
                                            const TrackerConfig& config) {
    if (samples.empty())
        throw DomainError("factor_matrix_path needs at least one sample");
    const int n = samples.front().A.n();
    for (const auto& s : samples) {
        if (s.A.n() != n)
            throw DomainError("matrix samples must share one size");
        if (!s.A.is_special(1e-8))
            throw DomainError("matrix sample determinant is not 1 within tolerance");
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (samples[i + 1].A.frobenius_distance(samples[i].A) > config.step_cap * 4.0)
            throw DomainError("consecutive matrix samples exceed the continuity cap");
    return factor_path_rec(samples, config);
}

} // namespace unifact
