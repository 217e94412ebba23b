#ifndef GMUSIC_LINALG_HPP
#define GMUSIC_LINALG_HPP

//
// Structured linear algebra: Fourier/Toeplitz/Hankel construction, lifting
// operators, truncated SVD, pseudoinverse application, sin-theta subspace
// distances, and epsilon-rank.
//

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "gmusic/errors.hpp"
#include "gmusic/torus.hpp"

namespace gmusic {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// (x, a) pair of frequencies and amplitudes of an exponential sum.
struct SpectralParams {
    FrequencySet x;
    std::vector<Complex> a;

    SpectralParams(FrequencySet x_, std::vector<Complex> a_)
        : x(std::move(x_)), a(std::move(a_)) {
        if (x.size() != a.size())
            throw std::invalid_argument("SpectralParams: |x| != |a|");
    }

    std::size_t rank() const noexcept { return x.size(); }

    // Membership in the class P(h, r): separation at least h, cardinality r,
    // amplitude moduli in [1, 10].
    bool in_class(double h, std::size_t r) const {
        if (x.size() != r) return false;
        if (min_separation(x) < h) return false;
        for (const Complex& aj : a) {
            double m = std::abs(aj);
            if (m < 1.0 || m > 10.0) return false;
        }
        return true;
    }
};

// n x r matrix with entries Phi_{j,k} = exp(i*j*x_k).
inline ComplexMatrix fourier_matrix(Eigen::Index n, const FrequencySet& x) {
    if (n < 1) throw std::invalid_argument("fourier_matrix: n < 1");
    ComplexMatrix phi(n, static_cast<Eigen::Index>(x.size()));
    for (Eigen::Index k = 0; k < phi.cols(); ++k) {
        const Complex w = std::polar(1.0, x[static_cast<std::size_t>(k)]);
        Complex e(1.0, 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            phi(j, k) = e;
            e *= w;
        }
    }
    return phi;
}

// Square Toeplitz matrix held by its generating sequence
// t_{-n+1}, ..., t_{n-1} (stored with t_d at index d + n - 1).
class ToeplitzMatrix {
public:
    ToeplitzMatrix(Eigen::Index n, std::vector<Complex> gen)
        : n_(n), gen_(std::move(gen)) {
        if (n_ < 1) throw std::invalid_argument("ToeplitzMatrix: n < 1");
        if (gen_.size() != static_cast<std::size_t>(2 * n_ - 1))
            throw std::invalid_argument("ToeplitzMatrix: generator length != 2n-1");
    }

    Eigen::Index dim() const noexcept { return n_; }

    // t_d for d in [-n+1, n-1]
    Complex gen(Eigen::Index d) const { return gen_.at(static_cast<std::size_t>(d + n_ - 1)); }
    const std::vector<Complex>& generator() const noexcept { return gen_; }

    ComplexMatrix dense() const {
        ComplexMatrix t(n_, n_);
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index k = 0; k < n_; ++k)
                t(j, k) = gen(j - k);
        return t;
    }

private:
    Eigen::Index n_;
    std::vector<Complex> gen_;
};

// Toeplitz matrix with t_d = sum_k a_k exp(i*d*x_k); its dense realization
// equals Phi(n,x) diag(a) Phi(n,x)^*.
inline ToeplitzMatrix toeplitz_from_params(Eigen::Index n, const SpectralParams& p) {
    std::vector<Complex> gen(static_cast<std::size_t>(2 * n - 1), Complex(0, 0));
    for (std::size_t k = 0; k < p.rank(); ++k) {
        const Complex w = std::polar(1.0, p.x[k]);
        Complex e(1.0, 0.0); // e = exp(i*d*x_k), d ascending from 0
        gen[static_cast<std::size_t>(n - 1)] += p.a[k];
        Complex epos = e, eneg = e;
        for (Eigen::Index d = 1; d < n; ++d) {
            epos *= w;
            eneg *= std::conj(w);
            gen[static_cast<std::size_t>(n - 1 + d)] += p.a[k] * epos;
            gen[static_cast<std::size_t>(n - 1 - d)] += p.a[k] * eneg;
        }
    }
    return ToeplitzMatrix(n, std::move(gen));
}

// T(y)_{j,k} = y_{j-k} for a sequence y_{-n+1}, ..., y_{n-1}.
inline ToeplitzMatrix toeplitz_lift(std::vector<Complex> y) {
    if (y.empty() || y.size() % 2 == 0)
        throw std::invalid_argument("toeplitz_lift: length must be odd");
    const Eigen::Index n = static_cast<Eigen::Index>((y.size() + 1) / 2);
    return ToeplitzMatrix(n, std::move(y));
}

// m x (n-m+1) Hankel matrix of u with m = ceil(n/2); entry (j,k) = u_{j+k}.
inline ComplexMatrix hankel_lift(const std::vector<Complex>& u) {
    const Eigen::Index n = static_cast<Eigen::Index>(u.size());
    if (n < 2) throw std::invalid_argument("hankel_lift: n < 2");
    const Eigen::Index m = (n + 1) / 2;
    ComplexMatrix h(m, n - m + 1);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < n - m + 1; ++k)
            h(j, k) = u[static_cast<std::size_t>(j + k)];
    return h;
}

// Right-multiplication by the reversal permutation J. Applied to a dense
// Toeplitz realization it yields the associated Hankel matrix H = T*J.
inline ComplexMatrix reverse_columns(const ComplexMatrix& m) {
    return m.rowwise().reverse();
}

// n x r matrix with orthonormal columns; carrier for sin-theta geometry.
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(ComplexMatrix basis) : basis_(std::move(basis)) {
        if (basis_.cols() < 1 || basis_.cols() > basis_.rows())
            throw std::invalid_argument("OrthonormalBasis: need 1 <= r <= n");
        ComplexMatrix gram = basis_.adjoint() * basis_;
        gram -= ComplexMatrix::Identity(basis_.cols(), basis_.cols());
        if (gram.cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("OrthonormalBasis: columns not orthonormal");
    }

    Eigen::Index ambient() const noexcept { return basis_.rows(); }
    Eigen::Index dim() const noexcept { return basis_.cols(); }
    const ComplexMatrix& matrix() const noexcept { return basis_; }

private:
    ComplexMatrix basis_;
};

namespace detail {

// Full SVD M = U diag(s) V^* via LAPACK zgesdd (thin factors).
struct FullSvd {
    ComplexMatrix u;  // m x k
    RealVector s;     // k, non-increasing
    ComplexMatrix v;  // n x k
};

inline FullSvd full_svd(const ComplexMatrix& m) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    ComplexMatrix a = m; // zgesdd destroys its input
    FullSvd out;
    out.u.resize(rows, k);
    out.s.resize(k);
    ComplexMatrix vt(k, cols);
    lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', rows, cols,
        reinterpret_cast<lapack_complex_double*>(a.data()), rows,
        out.s.data(),
        reinterpret_cast<lapack_complex_double*>(out.u.data()), rows,
        reinterpret_cast<lapack_complex_double*>(vt.data()), k);
    if (info != 0)
        throw std::runtime_error("full_svd: zgesdd failed, info=" + std::to_string(info));
    out.v = vt.adjoint();
    return out;
}

} // namespace detail

// All singular values of M, non-increasing.
inline RealVector singular_values(const ComplexMatrix& m) {
    return detail::full_svd(m).s;
}

struct TruncatedSvd {
    OrthonormalBasis left;
    RealVector sigma;
    OrthonormalBasis right;
};

// Leading r-dimensional singular triplet of M.
inline TruncatedSvd truncated_svd(const ComplexMatrix& m, Eigen::Index r) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("truncated_svd: r out of range");
    detail::FullSvd f = detail::full_svd(m);
    return TruncatedSvd{OrthonormalBasis(f.u.leftCols(r)), f.s.head(r),
                        OrthonormalBasis(f.v.leftCols(r))};
}

// A^+ B, the minimum-norm least-squares solution applied columnwise.
// Rejects A whose smallest singular value is below 1e-10 of its largest.
inline ComplexMatrix least_squares_inverse_apply(const ComplexMatrix& a,
                                                const ComplexMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("least_squares_inverse_apply: row mismatch");
    detail::FullSvd f = detail::full_svd(a);
    const double smax = f.s(0);
    const double smin = f.s(f.s.size() - 1);
    if (smax <= 0.0 || smin <= 1e-10 * smax)
        throw ill_conditioned_error(smax > 0 ? smin / smax : 0.0,
                                    "least_squares_inverse_apply: rank-deficient matrix");
    return f.v * f.s.cwiseInverse().asDiagonal() * (f.u.adjoint() * b);
}

// Orthonormal basis for the range of M (assumed full column rank).
inline OrthonormalBasis orthonormal_range(const ComplexMatrix& m) {
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
    return OrthonormalBasis(std::move(q));
}

// Spectral and Frobenius norms of the diagonal sin-theta matrix between two
// equal-dimension subspaces. The sines are the singular values of the
// projected residual (I - U U^*) W, which stays accurate for small angles
// where 1 - cos^2 would cancel.
inline std::pair<double, double> sin_theta(const OrthonormalBasis& u,
                                           const OrthonormalBasis& w) {
    if (u.ambient() != w.ambient() || u.dim() != w.dim())
        throw std::invalid_argument("sin_theta: dimension mismatch");
    ComplexMatrix resid =
        w.matrix() - u.matrix() * (u.matrix().adjoint() * w.matrix());
    RealVector sines = singular_values(resid);
    double sumsq = 0.0;
    for (Eigen::Index k = 0; k < sines.size(); ++k)
        sumsq += std::min(sines(k), 1.0) * std::min(sines(k), 1.0);
    return {std::min(sines(0), 1.0), std::sqrt(sumsq)};
}

// |{k : sigma_k >= eps * sigma_1}|; zero if sigma_1 = 0.
inline std::size_t eps_rank(const RealVector& sigma, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("eps_rank: eps must be positive");
    if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
    const double cut = eps * sigma(0);
    std::size_t count = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        if (sigma(k) >= cut) ++count;
    return count;
}

} // namespace gmusic

#endif
