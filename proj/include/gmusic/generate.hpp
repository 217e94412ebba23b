#ifndef GMUSIC_GENERATE_HPP
#define GMUSIC_GENERATE_HPP

//
// Seeded problem-instance generation: quasi-random separated frequencies,
// Rademacher amplitudes, and complex-normal noise.
//

#include <cstdint>
#include <random>
#include <vector>

#include "gmusic/linalg.hpp"
#include "gmusic/torus.hpp"

namespace gmusic {

using Rng = std::mt19937_64;

// Splittable per-trial seed derivation: parallel execution cannot reorder
// the randomness because every trial owns an independent stream.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t z = master_seed + (trial_index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Quasi-random x of cardinality r with Delta(x) >= 2*pi*beta/n: a uniform
// perturbation of r consecutive points spaced 4*pi*beta/n. Consecutive gaps
// satisfy the bound by construction; the wrap gap is validated and the draw
// resampled on failure.
inline FrequencySet gen_frequencies(std::size_t n, std::size_t r, double beta, Rng& rng) {
    if (r < 1 || beta < 1.0 || static_cast<double>(r) > static_cast<double>(n) / (2.0 * beta))
        throw std::invalid_argument("gen_frequencies: need 1 <= r <= n/(2*beta)");
    const double sep = two_pi * beta / static_cast<double>(n);
    std::uniform_real_distribution<double> gamma(-beta / 2.0, beta / 2.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> pts(r);
        for (std::size_t j = 0; j < r; ++j) {
            const double jj = static_cast<double>(j + 1);
            pts[j] = (4.0 * std::numbers::pi * beta * jj + two_pi * gamma(rng)) /
                     static_cast<double>(n);
        }
        FrequencySet x(std::move(pts));
        if (min_separation(x) >= sep * (1.0 - 1e-12)) return x;
    }
    throw generator_infeasible("gen_frequencies: 100 consecutive rejections");
}

// i.i.d. Rademacher +-1 amplitudes; every modulus is 1.
inline std::vector<Complex> gen_amplitudes(std::size_t r, Rng& rng) {
    if (r < 1) throw std::invalid_argument("gen_amplitudes: r < 1");
    std::bernoulli_distribution coin(0.5);
    std::vector<Complex> a(r);
    for (std::size_t j = 0; j < r; ++j) a[j] = coin(rng) ? 1.0 : -1.0;
    return a;
}

namespace detail {

// Complex normal(0, sigma^2): independent real and imaginary parts with
// variance sigma^2/2 each.
inline Complex complex_normal(double sigma, Rng& rng) {
    if (sigma == 0.0) return {0.0, 0.0};
    std::normal_distribution<double> gauss(0.0, sigma / std::sqrt(2.0));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

} // namespace detail

// Toeplitz E with i.i.d. complex-normal(0, sigma^2) generating entries.
inline ToeplitzMatrix gen_toeplitz_noise(std::size_t n, double sigma, Rng& rng) {
    if (sigma < 0.0) throw std::invalid_argument("gen_toeplitz_noise: sigma < 0");
    std::vector<Complex> gen(2 * n - 1);
    for (Complex& e : gen) e = detail::complex_normal(sigma, rng);
    return ToeplitzMatrix(static_cast<Eigen::Index>(n), std::move(gen));
}

// Length-n vector with i.i.d. complex-normal(0, sigma^2) entries.
inline std::vector<Complex> gen_vector_noise(std::size_t n, double sigma, Rng& rng) {
    if (sigma < 0.0) throw std::invalid_argument("gen_vector_noise: sigma < 0");
    std::vector<Complex> z(n);
    for (Complex& e : z) e = detail::complex_normal(sigma, rng);
    return z;
}

} // namespace gmusic

#endif
