#ifndef GMUSIC_BENCH_HPP
#define GMUSIC_BENCH_HPP

//
// Benchmark harness: seeded trial execution for the Toeplitz/Hankel and
// subspace estimators against the alternating-projection baseline, with
// CSV and markdown reporting.
//

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gmusic/altproj.hpp"
#include "gmusic/estimators.hpp"
#include "gmusic/generate.hpp"

namespace gmusic {

enum class ProblemKind { toeplitz, hankel, subspace };
enum class Method { gradient_music, alt_proj };

inline std::string to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::toeplitz: return "toeplitz";
        case ProblemKind::hankel: return "hankel";
        case ProblemKind::subspace: return "subspace";
    }
    return "?";
}

inline std::string to_string(Method m) {
    return m == Method::gradient_music ? "gmusic" : "altproj";
}

inline ProblemKind parse_kind(const std::string& s) {
    if (s == "toeplitz") return ProblemKind::toeplitz;
    if (s == "hankel") return ProblemKind::hankel;
    if (s == "subspace") return ProblemKind::subspace;
    throw std::invalid_argument("unknown problem kind: " + s);
}

inline Method parse_method(const std::string& s) {
    if (s == "gmusic") return Method::gradient_music;
    if (s == "altproj") return Method::alt_proj;
    throw std::invalid_argument("unknown method: " + s);
}

struct ProblemSpec {
    std::size_t n = 200;
    std::size_t r = 20;
    double beta = 4.0;
    double sigma = 0.1;
    std::size_t trials = 10;
    std::uint64_t master_seed = 1;
    ProblemKind kind = ProblemKind::toeplitz;
    // If positive, subspace-trial noise is rescaled so that ||z||_2 equals
    // exactly this value (used by the scaling preset).
    double z_norm = 0.0;

    void validate() const {
        if (trials < 1) throw std::invalid_argument("ProblemSpec: trials < 1");
        if (beta < 1.0) throw std::invalid_argument("ProblemSpec: beta < 1");
        if (sigma < 0.0) throw std::invalid_argument("ProblemSpec: sigma < 0");
        if (static_cast<double>(r) > static_cast<double>(n) / (2.0 * beta))
            throw std::invalid_argument("ProblemSpec: need r <= n/(2*beta)");
    }

    std::string cell_label() const {
        return "(" + std::to_string(n) + "," + std::to_string(r) + ")";
    }
};

struct TrialRecord {
    std::string method;
    std::string kind;
    std::size_t n = 0;
    std::size_t r = 0;
    double beta = 0.0;
    double sigma = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double rel_error_fro = 0.0;
    double rel_error_spec = 0.0;
    double sin_theta_fro = 0.0;
    double time_sec = 0.0;
    std::size_t eps_rank_1e6 = 0;
    std::size_t eps_rank_1e2 = 0;
    // Not serialized: failure bookkeeping for per-cell reporting.
    bool ok = true;
    std::string message;
};

namespace detail {

inline double spectral_norm(const ComplexMatrix& m) { return singular_values(m)(0); }

struct MatrixOutcome {
    ComplexMatrix estimate;
    double time_sec;
};

inline MatrixOutcome run_matrix_method(const ComplexMatrix& m, std::size_t r, Method method,
                                       ProblemKind kind) {
    const auto t0 = std::chrono::steady_clock::now();
    ComplexMatrix est;
    if (method == Method::gradient_music) {
        if (kind == ProblemKind::toeplitz)
            est = toeplitz_estimate(m, RankRequest::known(r)).t_hat.dense();
        else
            est = hankel_estimate(m, RankRequest::known(r)).h_hat;
    } else {
        if (kind == ProblemKind::toeplitz) {
            est = alternating_projection(m, static_cast<Eigen::Index>(r)).dense();
        } else {
            // Hankel baseline: convert to Toeplitz via J, project, convert back.
            est = reverse_columns(
                alternating_projection(reverse_columns(m), static_cast<Eigen::Index>(r))
                    .dense());
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    return {std::move(est), std::chrono::duration<double>(t1 - t0).count()};
}

} // namespace detail

inline TrialRecord run_trial(const ProblemSpec& spec, std::size_t trial_index, Method method) {
    spec.validate();
    if (spec.kind == ProblemKind::subspace && method != Method::gradient_music)
        throw std::invalid_argument("run_trial: subspace trials support gmusic only");

    TrialRecord rec;
    rec.method = to_string(method);
    rec.kind = to_string(spec.kind);
    rec.n = spec.n;
    rec.r = spec.r;
    rec.beta = spec.beta;
    rec.sigma = spec.sigma;
    rec.trial = trial_index;
    rec.seed = derive_seed(spec.master_seed, trial_index);

    Rng rng(rec.seed);
    try {
        FrequencySet x = gen_frequencies(spec.n, spec.r, spec.beta, rng);
        std::vector<Complex> a = gen_amplitudes(spec.r, rng);
        const Eigen::Index n = static_cast<Eigen::Index>(spec.n);

        if (spec.kind == ProblemKind::subspace) {
            ComplexMatrix phi = fourier_matrix(n, x);
            ComplexVector y = phi * Eigen::Map<const ComplexVector>(
                                        a.data(), static_cast<Eigen::Index>(a.size()));
            std::vector<Complex> z = gen_vector_noise(spec.n, spec.sigma, rng);
            if (spec.z_norm > 0.0) {
                double norm = 0.0;
                for (const Complex& e : z) norm += std::norm(e);
                norm = std::sqrt(norm);
                if (norm > 0.0)
                    for (Complex& e : z) e *= spec.z_norm / norm;
            }
            std::vector<Complex> y_obs(spec.n);
            for (std::size_t j = 0; j < spec.n; ++j)
                y_obs[j] = y(static_cast<Eigen::Index>(j)) + z[j];

            const auto t0 = std::chrono::steady_clock::now();
            SubspaceEstimate est = fourier_subspace_estimate(y_obs, RankRequest::known(spec.r));
            const auto t1 = std::chrono::steady_clock::now();
            rec.time_sec = std::chrono::duration<double>(t1 - t0).count();
            rec.sin_theta_fro = sin_theta(orthonormal_range(phi), est.u_hat).second;
            return rec;
        }

        ComplexMatrix phi = fourier_matrix(n, x);
        ComplexMatrix truth =
            spec.kind == ProblemKind::toeplitz
                ? ComplexMatrix(phi *
                                Eigen::Map<const ComplexVector>(
                                    a.data(), static_cast<Eigen::Index>(a.size()))
                                    .asDiagonal() *
                                phi.adjoint())
                : ComplexMatrix(phi *
                                Eigen::Map<const ComplexVector>(
                                    a.data(), static_cast<Eigen::Index>(a.size()))
                                    .asDiagonal() *
                                phi.transpose());
        ComplexMatrix noisy = truth + gen_toeplitz_noise(spec.n, spec.sigma, rng).dense();

        detail::MatrixOutcome out = detail::run_matrix_method(noisy, spec.r, method, spec.kind);
        rec.time_sec = out.time_sec;
        const double truth_fro = truth.norm();
        rec.rel_error_fro = (out.estimate - truth).norm() / truth_fro;
        rec.rel_error_spec =
            detail::spectral_norm(out.estimate - truth) / detail::spectral_norm(truth);
        RealVector sig = singular_values(out.estimate);
        rec.eps_rank_1e6 = eps_rank(sig, 1e-6);
        rec.eps_rank_1e2 = eps_rank(sig, 1e-2);
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.message = e.what();
        rec.rel_error_fro = rec.rel_error_spec = rec.sin_theta_fro =
            std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline constexpr const char* csv_header =
    "method,kind,n,r,beta,sigma,trial,seed,rel_error_fro,rel_error_spec,"
    "sin_theta_fro,time_sec,eps_rank_1e6,eps_rank_1e2";

inline void emit_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << csv_header << "\n";
    os.precision(17);
    for (const TrialRecord& t : records) {
        os << t.method << "," << t.kind << "," << t.n << "," << t.r << "," << t.beta << ","
           << t.sigma << "," << t.trial << "," << t.seed << "," << t.rel_error_fro << ","
           << t.rel_error_spec << "," << t.sin_theta_fro << "," << t.time_sec << ","
           << t.eps_rank_1e6 << "," << t.eps_rank_1e2 << "\n";
    }
}

inline std::vector<TrialRecord> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != csv_header)
        throw io_error("csv: bad or missing header");
    std::vector<TrialRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 14) throw io_error("csv: wrong field count in: " + line);
        TrialRecord t;
        t.method = f[0];
        t.kind = f[1];
        t.n = std::stoull(f[2]);
        t.r = std::stoull(f[3]);
        t.beta = std::stod(f[4]);
        t.sigma = std::stod(f[5]);
        t.trial = std::stoull(f[6]);
        t.seed = std::stoull(f[7]);
        t.rel_error_fro = std::stod(f[8]);
        t.rel_error_spec = std::stod(f[9]);
        t.sin_theta_fro = std::stod(f[10]);
        t.time_sec = std::stod(f[11]);
        t.eps_rank_1e6 = std::stoull(f[12]);
        t.eps_rank_1e2 = std::stoull(f[13]);
        records.push_back(std::move(t));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Aggregation and reporting
// ---------------------------------------------------------------------------

struct CellStats {
    std::string method;
    std::string kind;
    std::size_t n = 0;
    std::size_t r = 0;
    double beta = 0.0;
    double sigma = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double avg_error = 0.0;
    double max_error = 0.0;
    double avg_time = 0.0;
    double max_time = 0.0;
    double median_eps_rank_1e6 = 0.0;
    std::size_t max_eps_rank_1e6 = 0;
    double median_eps_rank_1e2 = 0.0;
    std::size_t max_eps_rank_1e2 = 0;
};

namespace detail {

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

} // namespace detail

inline std::vector<CellStats> aggregate(const std::vector<TrialRecord>& records) {
    std::map<std::string, std::vector<const TrialRecord*>> cells;
    for (const TrialRecord& t : records) {
        std::ostringstream key;
        key << t.kind << "|" << t.n << "|" << t.r << "|" << t.beta << "|" << t.sigma << "|"
            << t.method;
        cells[key.str()].push_back(&t);
    }
    std::vector<CellStats> out;
    for (const auto& [key, group] : cells) {
        CellStats s;
        const TrialRecord& head = *group.front();
        s.method = head.method;
        s.kind = head.kind;
        s.n = head.n;
        s.r = head.r;
        s.beta = head.beta;
        s.sigma = head.sigma;
        s.trials = group.size();
        std::vector<double> e6, e2;
        std::size_t used = 0;
        for (const TrialRecord* t : group) {
            if (!t->ok) { ++s.failures; continue; }
            const double err =
                t->kind == "subspace" ? t->sin_theta_fro : t->rel_error_fro;
            s.avg_error += err;
            s.max_error = std::max(s.max_error, err);
            s.avg_time += t->time_sec;
            s.max_time = std::max(s.max_time, t->time_sec);
            e6.push_back(static_cast<double>(t->eps_rank_1e6));
            e2.push_back(static_cast<double>(t->eps_rank_1e2));
            s.max_eps_rank_1e6 = std::max(s.max_eps_rank_1e6, t->eps_rank_1e6);
            s.max_eps_rank_1e2 = std::max(s.max_eps_rank_1e2, t->eps_rank_1e2);
            ++used;
        }
        if (used > 0) {
            s.avg_error /= static_cast<double>(used);
            s.avg_time /= static_cast<double>(used);
        }
        s.median_eps_rank_1e6 = detail::median(std::move(e6));
        s.median_eps_rank_1e2 = detail::median(std::move(e2));
        out.push_back(std::move(s));
    }
    return out;
}

inline void emit_markdown(std::ostream& os, const std::vector<TrialRecord>& records,
                          const std::string& rng_name = "std::mt19937_64") {
    std::vector<CellStats> stats = aggregate(records);
    os << "# Benchmark report\n\nRNG: " << rng_name << "\n\n";
    os << "| method | kind | (n,r) | beta | sigma | avg error | max error | avg time (s) | "
          "max time (s) | median 1e-6-rank | max 1e-6-rank | median 1e-2-rank | "
          "max 1e-2-rank | failures |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    os.precision(4);
    for (const CellStats& s : stats) {
        os << "| " << s.method << " | " << s.kind << " | (" << s.n << "," << s.r << ") | "
           << s.beta << " | " << s.sigma << " | " << s.avg_error << " | " << s.max_error
           << " | " << s.avg_time << " | " << s.max_time << " | " << s.median_eps_rank_1e6
           << " | " << s.max_eps_rank_1e6 << " | " << s.median_eps_rank_1e2 << " | "
           << s.max_eps_rank_1e2 << " | " << s.failures << " |\n";
    }
}

// ---------------------------------------------------------------------------
// Bench driver
// ---------------------------------------------------------------------------

struct BenchReport {
    std::vector<TrialRecord> records;
    std::vector<CellStats> stats;
};

// Executes all (spec, method, trial) combinations, optionally across
// threads. Records are deterministic for fixed specs/seed and returned in a
// canonical order regardless of thread count.
inline BenchReport run_bench(const std::vector<ProblemSpec>& specs,
                             const std::vector<Method>& methods, std::size_t threads = 1) {
    struct Task {
        const ProblemSpec* spec;
        Method method;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (const ProblemSpec& spec : specs) {
        spec.validate();
        for (Method m : methods) {
            if (spec.kind == ProblemKind::subspace && m != Method::gradient_music) continue;
            for (std::size_t t = 0; t < spec.trials; ++t) tasks.push_back({&spec, m, t});
        }
    }
    std::vector<TrialRecord> records(tasks.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            records[i] = run_trial(*tasks[i].spec, tasks[i].trial, tasks[i].method);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size();
                     i = next.fetch_add(1))
                    records[i] = run_trial(*tasks[i].spec, tasks[i].trial, tasks[i].method);
            });
        for (std::thread& th : pool) th.join();
    }
    BenchReport report;
    report.records = std::move(records);
    report.stats = aggregate(report.records);
    return report;
}

// The paper's experiment presets plus the scaling checks.
inline std::vector<ProblemSpec> bench_preset(const std::string& name, std::size_t trials,
                                             std::uint64_t seed) {
    auto cell = [&](std::size_t n, std::size_t r, double beta, double sigma,
                    ProblemKind kind, double z_norm = 0.0) {
        ProblemSpec s;
        s.n = n;
        s.r = r;
        s.beta = beta;
        s.sigma = sigma;
        s.trials = trials;
        s.master_seed = seed;
        s.kind = kind;
        s.z_norm = z_norm;
        return s;
    };
    if (name == "table1")
        return {cell(200, 20, 4, 0.1, ProblemKind::toeplitz),
                cell(500, 50, 4, 0.1, ProblemKind::toeplitz),
                cell(1000, 100, 4, 0.1, ProblemKind::toeplitz)};
    if (name == "table2")
        return {cell(200, 40, 2, 1.0, ProblemKind::toeplitz),
                cell(500, 100, 2, 1.0, ProblemKind::toeplitz),
                cell(1000, 200, 2, 1.0, ProblemKind::toeplitz)};
    if (name == "scaling-toeplitz")
        return {cell(100, 10, 4, 0.1, ProblemKind::toeplitz),
                cell(200, 20, 4, 0.1, ProblemKind::toeplitz),
                cell(400, 40, 4, 0.1, ProblemKind::toeplitz)};
    if (name == "scaling-subspace") {
        auto znorm = [](std::size_t n, std::size_t r) {
            return 0.5 * std::sqrt(static_cast<double>(n) / static_cast<double>(r));
        };
        return {cell(200, 10, 8, 1.0, ProblemKind::subspace, znorm(200, 10)),
                cell(400, 10, 8, 1.0, ProblemKind::subspace, znorm(400, 10)),
                cell(800, 10, 8, 1.0, ProblemKind::subspace, znorm(800, 10))};
    }
    throw std::invalid_argument("unknown preset: " + name);
}

} // namespace gmusic

#endif
