#ifndef GMUSIC_ESTIMATORS_HPP
#define GMUSIC_ESTIMATORS_HPP

//
// Headline estimators: the Gradient-MUSIC Toeplitz/Hankel estimator and the
// Gradient-MUSIC Fourier subspace estimator. Each is a stateless pipeline
// of truncated SVD -> frequency estimation -> amplitude recovery.
//

#include <optional>
#include <vector>

#include "gmusic/linalg.hpp"
#include "gmusic/music.hpp"

namespace gmusic {

// Rank request: either a known value or automatic singular-value thresholding.
struct RankRequest {
    std::optional<std::size_t> value;  // nullopt = auto
    double theta = 0.25;

    static RankRequest known(std::size_t r) { return {r, 0.25}; }
    static RankRequest automatic(double theta = 0.25) { return {std::nullopt, theta}; }
};

struct ToeplitzEstimate {
    FrequencySet x_hat;
    std::vector<Complex> a_hat;
    ToeplitzMatrix t_hat;
    std::size_t rank;
};

// Hankel output: Phi(n, x_hat) diag(a_hat) Phi(n, x_hat)^T, held densely
// (the transpose factorization has constant anti-diagonals, not diagonals).
struct HankelEstimate {
    FrequencySet x_hat;
    std::vector<Complex> a_hat;
    ComplexMatrix h_hat;
    std::size_t rank;
};

struct SubspaceEstimate {
    FrequencySet x_hat;
    OrthonormalBasis u_hat;
};

// a_hat = diag(Phi^+ M (Phi^+)^*) with Phi = Phi(n, x_hat).
inline std::vector<Complex> recover_amplitudes(const ComplexMatrix& m,
                                               const FrequencySet& x_hat) {
    const Eigen::Index n = m.rows();
    ComplexMatrix phi = fourier_matrix(n, x_hat);
    // Phi^+ M (Phi^+)^* via two least-squares solves:
    // adjoint(Phi^+ (Phi^+ M)^*) = Phi^+ M (Phi^+)^*
    ComplexMatrix left = least_squares_inverse_apply(phi, m);
    ComplexMatrix g = least_squares_inverse_apply(phi, left.adjoint()).adjoint();
    std::vector<Complex> a(static_cast<std::size_t>(g.rows()));
    for (Eigen::Index k = 0; k < g.rows(); ++k) a[static_cast<std::size_t>(k)] = g(k, k);
    return a;
}

namespace detail {

inline std::size_t resolve_rank(const RealVector& sigma, const RankRequest& rank,
                                double scale) {
    if (rank.value) {
        if (*rank.value == 0) throw std::invalid_argument("rank must be >= 1");
        return *rank.value;
    }
    const std::size_t r = detect_rank(sigma, scale, rank.theta);
    if (r == 0) throw no_signal_error("auto rank detection found no signal");
    return r;
}

// One SVD serves both rank resolution and the truncated factors.
inline std::pair<std::size_t, OrthonormalBasis> rank_and_left_basis(const ComplexMatrix& m,
                                                                    const RankRequest& rank,
                                                                    double scale) {
    FullSvd f = full_svd(m);
    const std::size_t r = resolve_rank(f.s, rank, scale);
    if (r > static_cast<std::size_t>(f.s.size()))
        throw std::invalid_argument("requested rank exceeds matrix dimensions");
    return {r, OrthonormalBasis(f.u.leftCols(static_cast<Eigen::Index>(r)))};
}

} // namespace detail

// Recover a rank-r Toeplitz matrix from a corrupted observation M = T + E.
inline ToeplitzEstimate toeplitz_estimate(const ComplexMatrix& m, const RankRequest& rank,
                                          const GradientMusicConfig& cfg = {}) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("toeplitz_estimate: matrix must be square");
    const Eigen::Index n = m.rows();
    auto [r, left] = detail::rank_and_left_basis(m, rank, static_cast<double>(n));
    FrequencySet x_hat = estimate_frequencies(left, cfg);
    std::vector<Complex> a_hat = recover_amplitudes(m, x_hat);
    return ToeplitzEstimate{x_hat, a_hat,
                            toeplitz_from_params(n, SpectralParams(x_hat, a_hat)), r};
}

// Same pipeline applied to M*J; the output factorization uses the transpose
// instead of the adjoint, giving a Hankel matrix.
inline HankelEstimate hankel_estimate(const ComplexMatrix& m, const RankRequest& rank,
                                      const GradientMusicConfig& cfg = {}) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hankel_estimate: matrix must be square");
    const Eigen::Index n = m.rows();
    ComplexMatrix mj = reverse_columns(m);
    auto [r, left] = detail::rank_and_left_basis(mj, rank, static_cast<double>(n));
    FrequencySet x_hat = estimate_frequencies(left, cfg);
    // M J = Phi diag(a exp(i(n-1)x)) Phi^*, so the Toeplitz-side amplitudes
    // carry a phase of exp(i(n-1)x_k) that the transpose factorization lacks
    std::vector<Complex> a_hat = recover_amplitudes(mj, x_hat);
    for (std::size_t k = 0; k < a_hat.size(); ++k)
        a_hat[k] *= std::polar(1.0, -static_cast<double>(n - 1) * x_hat[k]);
    ComplexMatrix phi = fourier_matrix(n, x_hat);
    ComplexMatrix h_hat = phi *
        Eigen::Map<const ComplexVector>(a_hat.data(), static_cast<Eigen::Index>(a_hat.size()))
            .asDiagonal() *
        phi.transpose();
    return HankelEstimate{x_hat, a_hat, std::move(h_hat), r};
}

// Estimate the Fourier subspace containing y from a single noisy observation
// via the Hankel lift of y_obs.
inline SubspaceEstimate fourier_subspace_estimate(const std::vector<Complex>& y_obs,
                                                  const RankRequest& rank,
                                                  const GradientMusicConfig& cfg = {}) {
    const Eigen::Index n = static_cast<Eigen::Index>(y_obs.size());
    if (n < 2) throw std::invalid_argument("fourier_subspace_estimate: n < 2");
    if (rank.value && static_cast<std::size_t>(n) < 2 * *rank.value)
        throw identifiability_error("fourier_subspace_estimate: need n >= 2r");
    ComplexMatrix h = hankel_lift(y_obs);
    auto [r, left] = detail::rank_and_left_basis(h, rank, static_cast<double>(n) / 2.0);
    if (static_cast<std::size_t>(n) < 2 * r)
        throw identifiability_error("fourier_subspace_estimate: need n >= 2r");
    FrequencySet x_hat = estimate_frequencies(left, cfg);
    return SubspaceEstimate{x_hat, orthonormal_range(fourier_matrix(n, x_hat))};
}

} // namespace gmusic

#endif
