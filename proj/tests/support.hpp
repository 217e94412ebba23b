#ifndef GMUSIC_TESTS_SUPPORT_HPP
#define GMUSIC_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "gmusic/generate.hpp"
#include "gmusic/linalg.hpp"

namespace gmtest {

using gmusic::Complex;
using gmusic::ComplexMatrix;
using gmusic::ComplexVector;

inline ComplexMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                           gmusic::Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j)
        for (Eigen::Index k = 0; k < cols; ++k) m(j, k) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline gmusic::OrthonormalBasis random_orthonormal_basis(Eigen::Index rows,
                                                         Eigen::Index cols,
                                                         gmusic::Rng& rng) {
    return gmusic::orthonormal_range(random_complex_matrix(rows, cols, rng));
}

// Rotate the first column of U toward a random orthogonal direction so that
// the sin-theta spectral distance to the original subspace is exactly s.
inline gmusic::OrthonormalBasis perturb_subspace(const gmusic::OrthonormalBasis& u,
                                                 double s, gmusic::Rng& rng) {
    const Eigen::Index m = u.ambient();
    ComplexVector v = random_complex_matrix(m, 1, rng).col(0);
    v -= u.matrix() * (u.matrix().adjoint() * v); // orthogonal complement part
    v.normalize();
    ComplexMatrix w = u.matrix();
    const double theta = std::asin(s);
    w.col(0) = std::cos(theta) * u.matrix().col(0) + std::sin(theta) * v;
    return gmusic::OrthonormalBasis(std::move(w));
}

inline std::vector<Complex> random_amplitudes_in_class(std::size_t r, gmusic::Rng& rng) {
    std::uniform_real_distribution<double> modulus(1.0, 10.0);
    std::uniform_real_distribution<double> phase(0.0, gmusic::two_pi);
    std::vector<Complex> a(r);
    for (auto& e : a) e = std::polar(modulus(rng), phase(rng));
    return a;
}

} // namespace gmtest

#endif
