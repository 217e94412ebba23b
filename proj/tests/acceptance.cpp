//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failed criteria.
//

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "gmusic/altproj.hpp"
#include "gmusic/bench.hpp"
#include "gmusic/estimators.hpp"
#include "gmusic/generate.hpp"
#include "support.hpp"

using namespace gmusic;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

double wall_seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

ComplexMatrix dense_spectral(Eigen::Index n, const FrequencySet& x,
                             const std::vector<Complex>& a, bool hankel) {
    ComplexMatrix phi = fourier_matrix(n, x);
    auto d = Eigen::Map<const ComplexVector>(a.data(), static_cast<Eigen::Index>(a.size()))
                 .asDiagonal();
    return hankel ? ComplexMatrix(phi * d * phi.transpose())
                  : ComplexMatrix(phi * d * phi.adjoint());
}

// 1. Every singular value of a well-separated Fourier matrix obeys the
//    sqrt(n(1 -/+ 1/beta)) envelope.
bool criterion_singular_envelope(std::string& detail) {
    Rng rng(101);
    std::size_t violations = 0;
    double elapsed = wall_seconds([&] {
        for (std::size_t n : {64, 128}) {
            for (double beta : {2.0, 4.0, 8.0}) {
                const std::size_t r = static_cast<std::size_t>(n / (2.0 * beta));
                const double lo = std::sqrt(n * (1.0 - 1.0 / beta)) - 1e-9;
                const double hi = std::sqrt(n * (1.0 + 1.0 / beta)) + 1e-9;
                for (int trial = 0; trial < 200; ++trial) {
                    FrequencySet x = gen_frequencies(n, r, beta, rng);
                    RealVector sig =
                        singular_values(fourier_matrix(static_cast<Eigen::Index>(n), x));
                    for (Eigen::Index k = 0; k < sig.size(); ++k)
                        if (sig(k) < lo || sig(k) > hi) ++violations;
                }
            }
        }
    });
    detail = std::to_string(violations) + " violations, " + std::to_string(elapsed) + " s";
    return violations == 0 && elapsed < 10.0;
}

// 2. The Hankel-lift factorization and the Toeplitz-lift decomposition of a
//    corrupted sample vector hold exactly.
bool criterion_structured_identities(std::string& detail) {
    Rng rng(102);
    std::uniform_int_distribution<Eigen::Index> size(16, 62);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Eigen::Index n = size(rng) | 1; // odd, so both lifts are defined
        const std::size_t r = 2;
        FrequencySet x = gen_frequencies(static_cast<std::size_t>(n), r, 4.0, rng);
        std::vector<Complex> a = gmtest::random_amplitudes_in_class(r, rng);

        // Hankel lift of a pure spectral sample vector factors through Phi
        const Eigen::Index m = (n + 1) / 2;
        ComplexMatrix phi_n = fourier_matrix(n, x);
        ComplexVector u = phi_n * Eigen::Map<const ComplexVector>(a.data(), r);
        std::vector<Complex> uv(u.data(), u.data() + n);
        ComplexMatrix lift = hankel_lift(uv);
        ComplexMatrix phi_m = fourier_matrix(m, x);
        ComplexMatrix phi_w = fourier_matrix(n - m + 1, x);
        ComplexMatrix factored =
            phi_m * Eigen::Map<const ComplexVector>(a.data(), r).asDiagonal() *
            phi_w.transpose();
        worst = std::max(worst, (lift - factored).norm() / lift.norm());

        // Toeplitz lift of spectral samples plus noise splits additively
        std::vector<Complex> noise = gen_vector_noise(static_cast<std::size_t>(n), 0.5, rng);
        std::vector<Complex> y(static_cast<std::size_t>(n));
        const Eigen::Index half = (n - 1) / 2;
        ComplexVector pure(n);
        {
            ComplexMatrix phi_row(n, static_cast<Eigen::Index>(r));
            for (std::size_t k = 0; k < r; ++k)
                for (Eigen::Index j = 0; j < n; ++j)
                    phi_row(j, static_cast<Eigen::Index>(k)) =
                        std::polar(1.0, static_cast<double>(j - half) * x[k]);
            pure = phi_row * Eigen::Map<const ComplexVector>(a.data(), r);
        }
        for (Eigen::Index j = 0; j < n; ++j)
            y[static_cast<std::size_t>(j)] = pure(j) + noise[static_cast<std::size_t>(j)];
        ComplexMatrix t_y = toeplitz_lift(y).dense();
        ComplexMatrix t_split = dense_spectral(half + 1, x, a, false) +
                                toeplitz_lift(noise).dense();
        worst = std::max(worst, (t_y - t_split).norm() / t_y.norm());
    }
    detail = "worst relative defect " + std::to_string(worst);
    return worst <= 1e-10;
}

// 3. Analytic gradient of the noise-space objective against central
//    differences.
bool criterion_gradient_oracle(std::string& detail) {
    Rng rng(103);
    double worst_scaled = 0.0;
    for (Eigen::Index m : {32, 128}) {
        MusicLandscape land(gmtest::random_orthonormal_basis(m, m / 8, rng));
        std::uniform_real_distribution<double> u(0.0, two_pi);
        const double h = 1e-6;
        for (int i = 0; i < 100; ++i) {
            const double t = u(rng);
            const double fd = (land.objective(t + h) - land.objective(t - h)) / (2.0 * h);
            const double err = std::fabs(land.gradient(t) - fd);
            worst_scaled =
                std::max(worst_scaled, err / (static_cast<double>(m) * static_cast<double>(m)));
        }
    }
    detail = "worst error / m^2 = " + std::to_string(worst_scaled);
    return worst_scaled <= 1e-5;
}

// 4. Frequency estimation from a perturbed subspace lands within
//    (10/m) * ||sin Theta||_2 of the truth, for every trial.
bool criterion_perturbation_contract(std::string& detail) {
    Rng rng(104);
    const Eigen::Index m = 128;
    std::size_t failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        for (double s : {1e-3, 5e-3, 1e-2}) {
            FrequencySet x = gen_frequencies(128, 6, 4.0, rng);
            OrthonormalBasis u = orthonormal_range(fourier_matrix(m, x));
            OrthonormalBasis w = gmtest::perturb_subspace(u, s, rng);
            FrequencySet x_hat = estimate_frequencies(w, {});
            if (matching_distance_inf(x, x_hat) > 10.0 * s / static_cast<double>(m))
                ++failures;
        }
    }
    detail = std::to_string(failures) + " of 150 trials out of contract";
    return failures == 0;
}

// 5. Noiseless inputs are recovered to machine accuracy with exact rank.
bool criterion_noiseless_exactness(std::string& detail) {
    Rng rng(105);
    double worst = 0.0;
    bool rank_ok = true;
    for (auto [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{{100, 5}, {200, 20}}) {
        FrequencySet x = gen_frequencies(n, r, 4.0, rng);
        std::vector<Complex> a = gen_amplitudes(r, rng);
        const Eigen::Index ni = static_cast<Eigen::Index>(n);

        ComplexMatrix t = dense_spectral(ni, x, a, false);
        ToeplitzEstimate te = toeplitz_estimate(t, RankRequest::known(r));
        ComplexMatrix td = te.t_hat.dense();
        worst = std::max(worst, (td - t).norm() / t.norm());
        RealVector sig = singular_values(td);
        if (sig(static_cast<Eigen::Index>(r)) > 1e-10 * sig(0)) rank_ok = false;
        if (sig(static_cast<Eigen::Index>(r) - 1) <= 0.0) rank_ok = false;

        ComplexMatrix h = dense_spectral(ni, x, a, true);
        HankelEstimate he = hankel_estimate(h, RankRequest::known(r));
        worst = std::max(worst, (he.h_hat - h).norm() / h.norm());
        RealVector hsig = singular_values(he.h_hat);
        if (hsig(static_cast<Eigen::Index>(r)) > 1e-10 * hsig(0)) rank_ok = false;

        // the half-size lift doubles the needed separation, so spread the
        // frequencies nearly uniformly for the subspace instance
        std::vector<double> spread(r);
        for (std::size_t j = 0; j < r; ++j)
            spread[j] = 0.1 + two_pi * static_cast<double>(j) / static_cast<double>(r);
        FrequencySet xs(std::move(spread));
        ComplexMatrix phi = fourier_matrix(ni, xs);
        ComplexVector y = phi * Eigen::Map<const ComplexVector>(
                                    a.data(), static_cast<Eigen::Index>(r));
        std::vector<Complex> yv(y.data(), y.data() + ni);
        SubspaceEstimate se = fourier_subspace_estimate(yv, RankRequest::known(r));
        worst = std::max(worst, sin_theta(orthonormal_range(phi), se.u_hat).second);
    }
    detail = "worst error " + std::to_string(worst) + (rank_ok ? "" : ", rank mismatch");
    return worst <= 1e-8 && rank_ok;
}

// 6. The easy benchmark cell: both methods land in the expected error band,
//    the baseline never truncates its numerical rank, and the estimator's
//    output rank is exact.
bool criterion_bench_easy_cell(std::string& detail) {
    ProblemSpec spec;
    spec.n = 200;
    spec.r = 20;
    spec.beta = 4.0;
    spec.sigma = 0.1;
    spec.trials = 10;
    spec.master_seed = 106;
    BenchReport report;
    const double elapsed = wall_seconds([&] {
        report = run_bench({spec}, {Method::gradient_music, Method::alt_proj});
    });
    double avg_g = -1, avg_a = -1, med_a6 = -1;
    bool gmusic_rank_exact = true;
    for (const CellStats& s : report.stats) {
        if (s.method == "gmusic") avg_g = s.avg_error;
        if (s.method == "altproj") {
            avg_a = s.avg_error;
            med_a6 = s.median_eps_rank_1e6;
        }
    }
    for (const TrialRecord& t : report.records)
        if (t.method == "gmusic" && (!t.ok || t.eps_rank_1e6 != 20)) gmusic_rank_exact = false;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "avg gmusic %.5f, avg altproj %.5f, altproj median 1e-6-rank %.1f, %.1f s",
                  avg_g, avg_a, med_a6, elapsed);
    detail = buf;
    return avg_g >= 0.002 && avg_g <= 0.02 && avg_a >= 0.002 && avg_a <= 0.02 &&
           med_a6 >= 150.0 && gmusic_rank_exact && elapsed < 60.0;
}

// 7. The hard benchmark cell: heavier noise and tighter spacing, still a
//    bounded error band; the baseline keeps an inflated 1e-2 rank.
bool criterion_bench_hard_cell(std::string& detail) {
    ProblemSpec spec;
    spec.n = 200;
    spec.r = 40;
    spec.beta = 2.0;
    spec.sigma = 1.0;
    spec.trials = 10;
    spec.master_seed = 107;
    BenchReport report = run_bench({spec}, {Method::gradient_music, Method::alt_proj});
    double avg_g = -1, avg_a = -1, med_a2 = -1;
    for (const CellStats& s : report.stats) {
        if (s.method == "gmusic") avg_g = s.avg_error;
        if (s.method == "altproj") {
            avg_a = s.avg_error;
            med_a2 = s.median_eps_rank_1e2;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "avg gmusic %.5f, avg altproj %.5f, altproj median 1e-2-rank %.1f", avg_g,
                  avg_a, med_a2);
    detail = buf;
    return avg_g >= 0.02 && avg_g <= 0.20 && avg_a >= 0.02 && avg_a <= 0.20 && med_a2 >= 45.0;
}

// 8. Spectral-error scaling: ||T_hat - T||_2 / (sqrt(r) ||E||_2) stays flat
//    as n grows with r = n/10.
bool criterion_toeplitz_scaling(std::string& detail) {
    Rng rng(108);
    std::vector<double> ratios;
    for (std::size_t n : {100, 200, 400}) {
        const std::size_t r = n / 10;
        double acc = 0.0;
        const int trials = 5;
        for (int i = 0; i < trials; ++i) {
            FrequencySet x = gen_frequencies(n, r, 4.0, rng);
            std::vector<Complex> a = gen_amplitudes(r, rng);
            ComplexMatrix t = dense_spectral(static_cast<Eigen::Index>(n), x, a, false);
            ComplexMatrix e = gen_toeplitz_noise(n, 0.1, rng).dense();
            ToeplitzEstimate est = toeplitz_estimate(t + e, RankRequest::known(r));
            const double num = singular_values(est.t_hat.dense() - t)(0);
            const double den = std::sqrt(static_cast<double>(r)) * singular_values(e)(0);
            acc += num / den;
        }
        ratios.push_back(acc / trials);
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    char buf[120];
    std::snprintf(buf, sizeof(buf), "ratios %.4f / %.4f / %.4f, spread %.2f", ratios[0],
                  ratios[1], ratios[2], *hi / *lo);
    detail = buf;
    return *hi / *lo <= 5.0;
}

// 9. Subspace-error scaling: ||sin Theta||_F / (sqrt(r/n) ||z||_2) stays
//    flat as n grows at fixed r with ||z||_2 = 0.5 sqrt(n/r).
bool criterion_subspace_scaling(std::string& detail) {
    Rng rng(109);
    std::vector<double> ratios;
    const std::size_t r = 10;
    for (std::size_t n : {200, 400, 800}) {
        const double z_norm =
            0.5 * std::sqrt(static_cast<double>(n) / static_cast<double>(r));
        double acc = 0.0;
        const int trials = 5;
        for (int i = 0; i < trials; ++i) {
            FrequencySet x = gen_frequencies(n, r, 8.0, rng);
            std::vector<Complex> a = gen_amplitudes(r, rng);
            ComplexMatrix phi = fourier_matrix(static_cast<Eigen::Index>(n), x);
            ComplexVector y = phi * Eigen::Map<const ComplexVector>(
                                        a.data(), static_cast<Eigen::Index>(r));
            std::vector<Complex> z = gen_vector_noise(n, 1.0, rng);
            double norm = 0.0;
            for (const Complex& e : z) norm += std::norm(e);
            norm = std::sqrt(norm);
            std::vector<Complex> y_obs(n);
            for (std::size_t j = 0; j < n; ++j)
                y_obs[j] = y(static_cast<Eigen::Index>(j)) + z[j] * (z_norm / norm);
            SubspaceEstimate est = fourier_subspace_estimate(y_obs, RankRequest::known(r));
            const double err = sin_theta(orthonormal_range(phi), est.u_hat).second;
            acc += err / (std::sqrt(static_cast<double>(r) / static_cast<double>(n)) * z_norm);
        }
        ratios.push_back(acc / trials);
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    char buf[120];
    std::snprintf(buf, sizeof(buf), "ratios %.4f / %.4f / %.4f, spread %.2f", ratios[0],
                  ratios[1], ratios[2], *hi / *lo);
    detail = buf;
    return *hi / *lo <= 5.0;
}

// 10. At (500, 50) the estimator beats the baseline by at least 2x wall time.
bool criterion_relative_speed(std::string& detail) {
    ProblemSpec spec;
    spec.n = 500;
    spec.r = 50;
    spec.beta = 4.0;
    spec.sigma = 0.1;
    spec.trials = 3;
    spec.master_seed = 110;
    BenchReport report = run_bench({spec}, {Method::gradient_music, Method::alt_proj});
    double t_g = 0.0, t_a = 0.0;
    for (const CellStats& s : report.stats) {
        if (s.method == "gmusic") t_g = s.avg_time;
        if (s.method == "altproj") t_a = s.avg_time;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "gmusic %.3f s vs altproj %.3f s per trial", t_g, t_a);
    detail = buf;
    return t_g > 0.0 && t_a > 0.0 && t_g <= 0.5 * t_a;
}

// 11. Library primitives agree with brute-force oracles at toy scale.
bool criterion_oracle_equivalence(std::string& detail) {
    Rng rng(111);
    double worst = 0.0;

    // matching distance vs full permutation search
    std::uniform_real_distribution<double> u(0.0, two_pi);
    for (int i = 0; i < 60; ++i) {
        std::uniform_int_distribution<std::size_t> rs(1, 6);
        const std::size_t r = rs(rng);
        auto draw = [&] {
            std::vector<double> pts;
            while (pts.size() < r) {
                const double t = u(rng);
                bool dup = false;
                for (double p : pts)
                    if (wrap_distance(t, p) < 1e-6) dup = true;
                if (!dup) pts.push_back(t);
            }
            return FrequencySet(std::move(pts));
        };
        FrequencySet x = draw(), y = draw();
        std::vector<std::size_t> perm(r);
        for (std::size_t j = 0; j < r; ++j) perm[j] = j;
        double best = two_pi;
        do {
            double worst_pair = 0.0;
            for (std::size_t j = 0; j < r; ++j)
                worst_pair = std::max(worst_pair, wrap_distance(x[j], y[perm[j]]));
            best = std::min(best, worst_pair);
        } while (std::next_permutation(perm.begin(), perm.end()));
        worst = std::max(worst, std::fabs(matching_distance_inf(x, y) - best));
    }

    // Toeplitz projection vs per-diagonal scalar least squares
    for (int i = 0; i < 40; ++i) {
        const Eigen::Index n = 4;
        ComplexMatrix m = gmtest::random_complex_matrix(n, n, rng);
        ToeplitzMatrix proj = project_toeplitz(m);
        for (Eigen::Index d = -(n - 1); d <= n - 1; ++d) {
            Complex sum = 0.0;
            int count = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                const Eigen::Index k = j - d;
                if (k >= 0 && k < n) {
                    sum += m(j, k);
                    ++count;
                }
            }
            worst = std::max(worst,
                             std::abs(proj.gen(d) - sum / static_cast<double>(count)));
        }
    }

    // truncated SVD residual vs the tail of the full spectrum
    for (int i = 0; i < 40; ++i) {
        ComplexMatrix m = gmtest::random_complex_matrix(8, 8, rng);
        RealVector sig = singular_values(m);
        for (Eigen::Index r = 1; r <= 4; ++r) {
            TruncatedSvd svd = truncated_svd(m, r);
            ComplexMatrix approx =
                svd.left.matrix() * svd.sigma.asDiagonal() * svd.right.matrix().adjoint();
            worst = std::max(worst, std::fabs((m - approx).squaredNorm() -
                                              sig.tail(8 - r).squaredNorm()));
        }
    }
    detail = "worst oracle defect " + std::to_string(worst);
    return worst <= 1e-10;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"singular value envelope", criterion_singular_envelope},
        {"structured lift identities", criterion_structured_identities},
        {"gradient oracle", criterion_gradient_oracle},
        {"subspace perturbation contract", criterion_perturbation_contract},
        {"noiseless exactness", criterion_noiseless_exactness},
        {"benchmark easy cell", criterion_bench_easy_cell},
        {"benchmark hard cell", criterion_bench_hard_cell},
        {"toeplitz error scaling", criterion_toeplitz_scaling},
        {"subspace error scaling", criterion_subspace_scaling},
        {"relative speed", criterion_relative_speed},
        {"oracle equivalence", criterion_oracle_equivalence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << (ok ? "PASS" : "FAIL") << "  [" << (i + 1) << "/" << criteria.size()
                  << "] " << criteria[i].name << " (" << detail << ")" << std::endl;
    }
    return failures;
}
