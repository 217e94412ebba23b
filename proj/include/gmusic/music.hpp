#ifndef GMUSIC_MUSIC_HPP
#define GMUSIC_MUSIC_HPP

//
// The spectral-estimation engine: minimize the MUSIC noise-space objective
// over the torus by grid initialization plus gradient descent with Armijo
// backtracking, and detect rank by singular-value thresholding.
//

#include <algorithm>
#include <cmath>
#include <vector>

#include "gmusic/linalg.hpp"
#include "gmusic/torus.hpp"

namespace gmusic {

struct GradientMusicConfig {
    std::size_t grid_density = 16;   // grid points per 2pi/m interval
    double exclusion_radius = 0.0;   // radians; <= 0 means auto (4pi/m)
    std::size_t max_iters = 100;
    double grad_tol = 0.0;           // <= 0 means auto (1e-12 * m^2)
    double armijo_shrink = 0.5;
    double armijo_slope = 1e-4;

    void validate() const {
        if (grid_density < 4)
            throw std::invalid_argument("GradientMusicConfig: grid_density < 4");
        if (max_iters < 1)
            throw std::invalid_argument("GradientMusicConfig: max_iters < 1");
        if (armijo_shrink <= 0.0 || armijo_shrink >= 1.0)
            throw std::invalid_argument("GradientMusicConfig: armijo_shrink out of (0,1)");
    }

    double effective_exclusion_radius(Eigen::Index m) const {
        return exclusion_radius > 0.0 ? exclusion_radius
                                      : 4.0 * std::numbers::pi / static_cast<double>(m);
    }

    double effective_grad_tol(Eigen::Index m) const {
        return grad_tol > 0.0 ? grad_tol : 1e-12 * static_cast<double>(m) * static_cast<double>(m);
    }
};

// The MUSIC noise-space landscape q(t) = ||phi(t) - W W^* phi(t)||^2 / m
// for a fixed m x r orthonormal W. Immutable after construction.
class MusicLandscape {
public:
    explicit MusicLandscape(OrthonormalBasis w) : w_(std::move(w)) {
        if (w_.dim() >= w_.ambient())
            throw std::invalid_argument("MusicLandscape: need r < m");
    }

    Eigen::Index ambient() const noexcept { return w_.ambient(); }
    Eigen::Index dim() const noexcept { return w_.dim(); }
    const OrthonormalBasis& basis() const noexcept { return w_; }

    // q(t) in [0, 1]; zero exactly at the frequencies when W is Fourier.
    double objective(double t) const {
        const Eigen::Index m = ambient();
        ComplexVector phi = steering(t);
        // residual-norm form stays accurate near the zeros of q
        ComplexVector rho = phi - w_.matrix() * (w_.matrix().adjoint() * phi);
        return std::min(rho.squaredNorm() / static_cast<double>(m), 1.0);
    }

    // q'(t) = (2/m) Re <phi'(t), phi(t) - W W^* phi(t)>.
    double gradient(double t) const {
        const Eigen::Index m = ambient();
        ComplexVector phi = steering(t);
        ComplexVector rho = phi - w_.matrix() * (w_.matrix().adjoint() * phi);
        double acc = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            const Complex dphi = Complex(0.0, static_cast<double>(j)) * phi(j);
            acc += (std::conj(dphi) * rho(j)).real();
        }
        return 2.0 * acc / static_cast<double>(m);
    }

    // Global curvature bound for q: L = (2/m) * sum_{j<m} j^2.
    double curvature_bound() const {
        const double m = static_cast<double>(ambient());
        return 2.0 / m * ((m - 1.0) * m * (2.0 * m - 1.0) / 6.0);
    }

private:
    ComplexVector steering(double t) const {
        const Eigen::Index m = ambient();
        ComplexVector phi(m);
        const Complex w = std::polar(1.0, t);
        Complex e(1.0, 0.0);
        for (Eigen::Index j = 0; j < m; ++j) {
            phi(j) = e;
            e *= w;
        }
        return phi;
    }

    OrthonormalBasis w_;
};

namespace detail {

struct GridCandidate {
    double t;
    double q;
};

// Uniform grid of grid_density * m points, sorted by objective value. The
// grid pass only ranks candidates, so it may use the cheaper projection-norm
// form 1 - ||W^* phi||^2 / m evaluated blockwise as a matrix product.
inline std::vector<GridCandidate> sorted_grid(const MusicLandscape& land,
                                              const GradientMusicConfig& cfg) {
    const Eigen::Index m = land.ambient();
    const std::size_t count = cfg.grid_density * static_cast<std::size_t>(m);
    std::vector<GridCandidate> grid(count);
    const std::size_t block = 2048;
    ComplexMatrix phis(m, static_cast<Eigen::Index>(std::min(block, count)));
    for (std::size_t start = 0; start < count; start += block) {
        const std::size_t width = std::min(block, count - start);
        for (std::size_t g = 0; g < width; ++g) {
            const double t =
                two_pi * static_cast<double>(start + g) / static_cast<double>(count);
            const Complex w = std::polar(1.0, t);
            Complex e(1.0, 0.0);
            for (Eigen::Index j = 0; j < m; ++j) {
                phis(j, static_cast<Eigen::Index>(g)) = e;
                e *= w;
            }
        }
        ComplexMatrix proj =
            land.basis().matrix().adjoint() * phis.leftCols(static_cast<Eigen::Index>(width));
        for (std::size_t g = 0; g < width; ++g) {
            const double t =
                two_pi * static_cast<double>(start + g) / static_cast<double>(count);
            const double q = 1.0 - proj.col(static_cast<Eigen::Index>(g)).squaredNorm() /
                                       static_cast<double>(m);
            grid[start + g] = {t, std::clamp(q, 0.0, 1.0)};
        }
    }
    std::sort(grid.begin(), grid.end(),
              [](const GridCandidate& a, const GridCandidate& b) { return a.q < b.q; });
    return grid;
}

// Greedy selection of r candidates in increasing order of q, skipping any
// within the exclusion radius of an already-selected point.
inline std::vector<double> select_separated(const std::vector<GridCandidate>& grid,
                                            std::size_t r, double radius) {
    std::vector<double> picks;
    picks.reserve(r);
    for (const GridCandidate& c : grid) {
        bool blocked = false;
        for (double p : picks)
            if (wrap_distance(c.t, p) < radius) { blocked = true; break; }
        if (!blocked) {
            picks.push_back(c.t);
            if (picks.size() == r) break;
        }
    }
    return picks;
}

} // namespace detail

// r grid points chosen greedily by objective value with mutual exclusion.
inline FrequencySet grid_initializers(const MusicLandscape& land, std::size_t r,
                                      const GradientMusicConfig& cfg) {
    cfg.validate();
    if (r != static_cast<std::size_t>(land.dim()))
        throw std::invalid_argument("grid_initializers: r != dim(W)");
    const double radius = cfg.effective_exclusion_radius(land.ambient());
    std::vector<double> picks =
        detail::select_separated(detail::sorted_grid(land, cfg), r, radius);
    if (picks.size() < r)
        throw initialization_failure("grid_initializers: fewer than r admissible candidates");
    return FrequencySet(std::move(picks));
}

// Gradient descent with Armijo backtracking from t0; initial step 1/L with
// L the global curvature bound. Accepted objective values never increase.
inline double descend(const MusicLandscape& land, double t0,
                      const GradientMusicConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(t0)) throw std::invalid_argument("descend: non-finite start");
    const double base_step = 1.0 / land.curvature_bound();
    const double tol = cfg.effective_grad_tol(land.ambient());

    double t = t0;
    double q = land.objective(t);
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        const double g = land.gradient(t);
        if (std::fabs(g) <= tol) break;
        double step = base_step;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            const double cand = t - step * g;
            const double qc = land.objective(cand);
            if (qc <= q - cfg.armijo_slope * step * g * g) {
                t = cand;
                q = qc;
                accepted = true;
                break;
            }
            step *= cfg.armijo_shrink;
        }
        if (!accepted) break; // step underflow; treat current point as converged
    }
    return canonicalize_angle(t);
}

// Full Gradient-MUSIC frequency estimate: grid initialization, per-point
// descent, dedup under wrap distance with re-seeding from the next-best
// grid candidates. Returns exactly r points.
inline FrequencySet estimate_frequencies(const OrthonormalBasis& w,
                                         const GradientMusicConfig& cfg) {
    cfg.validate();
    MusicLandscape land(w);
    const std::size_t r = static_cast<std::size_t>(land.dim());
    const double radius = cfg.effective_exclusion_radius(land.ambient());
    const double dedup_radius = radius / 2.0;

    const std::vector<detail::GridCandidate> grid = detail::sorted_grid(land, cfg);

    std::vector<double> used_seeds;   // initializers consumed so far
    std::vector<double> results;
    std::size_t cursor = 0;
    auto next_seed = [&]() -> bool {
        for (; cursor < grid.size(); ++cursor) {
            bool blocked = false;
            for (double p : used_seeds)
                if (wrap_distance(grid[cursor].t, p) < radius) { blocked = true; break; }
            if (!blocked) {
                used_seeds.push_back(grid[cursor].t);
                ++cursor;
                return true;
            }
        }
        return false;
    };

    while (results.size() < r) {
        if (!next_seed()) {
            if (results.empty() && used_seeds.empty())
                throw initialization_failure("estimate_frequencies: no admissible candidates");
            throw estimation_failure(
                "estimate_frequencies: duplicate collapse left fewer than r points");
        }
        const double limit = descend(land, used_seeds.back(), cfg);
        bool duplicate = false;
        for (double p : results)
            if (wrap_distance(limit, p) < dedup_radius) { duplicate = true; break; }
        if (!duplicate) results.push_back(limit);
    }
    return FrequencySet(std::move(results));
}

// |{k : sigma_k >= theta * scale}|. Pass scale = n for Toeplitz input and
// n/2 for the Hankel lift.
inline std::size_t detect_rank(const RealVector& sigma, double scale, double theta = 0.25) {
    if (scale <= 0.0) throw std::invalid_argument("detect_rank: scale must be positive");
    if (theta <= 0.0 || theta >= 1.0)
        throw std::invalid_argument("detect_rank: theta out of (0,1)");
    const double cut = theta * scale;
    std::size_t count = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        if (sigma(k) >= cut) ++count;
    return count;
}

} // namespace gmusic

#endif
