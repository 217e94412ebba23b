//
// Command-line front end: recover structured matrices, estimate Fourier
// subspaces, generate test instances, and run the benchmark suite.
//

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmusic/altproj.hpp"
#include "gmusic/bench.hpp"
#include "gmusic/estimators.hpp"
#include "gmusic/generate.hpp"
#include "gmusic/io.hpp"

using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_bad_args = 2;
constexpr int exit_estimation_failure = 3;
constexpr int exit_io_error = 4;

json complex_list(const std::vector<gmusic::Complex>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back({c.real(), c.imag()});
    return out;
}

gmusic::RankRequest make_rank_request(std::optional<std::size_t> rank, bool auto_rank,
                                      double theta) {
    if (rank.has_value() == auto_rank)
        throw std::invalid_argument("specify exactly one of --rank and --auto-rank");
    return auto_rank ? gmusic::RankRequest::automatic(theta)
                     : gmusic::RankRequest::known(*rank);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw gmusic::io_error("cannot open for writing: " + path);
    os << j.dump(2) << "\n";
    if (!os) throw gmusic::io_error("write failed: " + path);
}

int run_approx(const std::string& input, std::optional<std::size_t> rank, bool auto_rank,
               double theta, const std::string& method_name, const std::string& out,
               const std::string& truth_path, const std::string& out_matrix) {
    gmusic::ComplexMatrix m = gmusic::read_cmat(input);
    gmusic::RankRequest req = make_rank_request(rank, auto_rank, theta);
    gmusic::Method method = gmusic::parse_method(method_name);

    json result;
    gmusic::ComplexMatrix estimate;
    if (method == gmusic::Method::gradient_music) {
        gmusic::ToeplitzEstimate est = gmusic::toeplitz_estimate(m, req);
        estimate = est.t_hat.dense();
        result["x_hat"] = est.x_hat.values();
        result["a_hat"] = complex_list(est.a_hat);
        result["rank"] = est.rank;
    } else {
        std::size_t r = req.value ? *req.value
                                  : gmusic::detect_rank(gmusic::singular_values(m),
                                                        static_cast<double>(m.rows()),
                                                        req.theta);
        if (r == 0) throw gmusic::no_signal_error("auto rank detection found no signal");
        estimate =
            gmusic::alternating_projection(m, static_cast<Eigen::Index>(r)).dense();
        result["rank"] = gmusic::eps_rank(gmusic::singular_values(estimate), 1e-6);
    }
    result["method"] = method_name;

    if (!truth_path.empty()) {
        gmusic::ComplexMatrix truth = gmusic::read_cmat(truth_path);
        result["errors"] = {
            {"rel_error_fro", (estimate - truth).norm() / truth.norm()},
            {"rel_error_spec", gmusic::singular_values(estimate - truth)(0) /
                                   gmusic::singular_values(truth)(0)}};
    }
    if (!out_matrix.empty()) gmusic::write_cmat(out_matrix, estimate);
    write_json(out, result);
    return exit_ok;
}

int run_subspace(const std::string& input, std::optional<std::size_t> rank, bool auto_rank,
                 double theta, const std::string& out, std::string basis_out) {
    std::vector<gmusic::Complex> y = gmusic::read_cvector(input);
    gmusic::RankRequest req = make_rank_request(rank, auto_rank, theta);
    gmusic::SubspaceEstimate est = gmusic::fourier_subspace_estimate(y, req);
    if (basis_out.empty()) basis_out = out + ".basis.cmat";
    gmusic::write_cmat(basis_out, est.u_hat.matrix());
    json result;
    result["x_hat"] = est.x_hat.values();
    result["rank"] = est.x_hat.size();
    result["basis_cmat"] = basis_out;
    write_json(out, result);
    return exit_ok;
}

int run_generate(const std::string& kind_name, std::size_t n, std::size_t r, double beta,
                 double sigma, std::uint64_t seed, const std::string& out) {
    gmusic::ProblemKind kind = gmusic::parse_kind(kind_name);
    gmusic::Rng rng(seed);
    gmusic::FrequencySet x = gmusic::gen_frequencies(n, r, beta, rng);
    std::vector<gmusic::Complex> a = gmusic::gen_amplitudes(r, rng);
    gmusic::ComplexMatrix phi = gmusic::fourier_matrix(static_cast<Eigen::Index>(n), x);
    const auto amap = Eigen::Map<const gmusic::ComplexVector>(
        a.data(), static_cast<Eigen::Index>(a.size()));

    if (kind == gmusic::ProblemKind::subspace) {
        gmusic::ComplexVector y = phi * amap;
        std::vector<gmusic::Complex> z = gmusic::gen_vector_noise(n, sigma, rng);
        std::vector<gmusic::Complex> obs(n);
        for (std::size_t j = 0; j < n; ++j)
            obs[j] = y(static_cast<Eigen::Index>(j)) + z[j];
        gmusic::write_cvector(out, obs);
    } else {
        gmusic::ComplexMatrix truth =
            kind == gmusic::ProblemKind::toeplitz
                ? gmusic::ComplexMatrix(phi * amap.asDiagonal() * phi.adjoint())
                : gmusic::ComplexMatrix(phi * amap.asDiagonal() * phi.transpose());
        gmusic::ComplexMatrix noisy =
            truth + gmusic::gen_toeplitz_noise(n, sigma, rng).dense();
        gmusic::write_cmat(out, noisy);
    }

    json sidecar;
    sidecar["kind"] = kind_name;
    sidecar["n"] = n;
    sidecar["r"] = r;
    sidecar["beta"] = beta;
    sidecar["sigma"] = sigma;
    sidecar["seed"] = seed;
    sidecar["x"] = x.values();
    sidecar["a"] = complex_list(a);
    write_json(out + ".truth.json", sidecar);
    return exit_ok;
}

int run_bench_cmd(const std::string& preset, std::size_t trials, std::uint64_t seed,
                  std::size_t threads, std::size_t max_n, const std::string& csv_path,
                  const std::string& md_path) {
    std::vector<gmusic::ProblemSpec> specs = gmusic::bench_preset(preset, trials, seed);
    if (max_n > 0)
        std::erase_if(specs, [&](const gmusic::ProblemSpec& s) { return s.n > max_n; });
    std::vector<gmusic::Method> methods{gmusic::Method::gradient_music,
                                        gmusic::Method::alt_proj};
    gmusic::BenchReport report = gmusic::run_bench(specs, methods, threads);

    if (!csv_path.empty()) {
        std::ofstream os(csv_path);
        if (!os) throw gmusic::io_error("cannot open for writing: " + csv_path);
        gmusic::emit_csv(os, report.records);
    }
    if (!md_path.empty()) {
        std::ofstream os(md_path);
        if (!os) throw gmusic::io_error("cannot open for writing: " + md_path);
        gmusic::emit_markdown(os, report.records);
    }
    gmusic::emit_markdown(std::cout, report.records);
    std::size_t failures = 0;
    for (const auto& rec : report.records)
        if (!rec.ok) ++failures;
    if (failures > 0)
        std::cerr << failures << " trial(s) failed; see per-cell failure column\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient-MUSIC structured approximation toolkit"};
    app.require_subcommand(1);

    // approx
    auto* approx = app.add_subcommand("approx", "recover a low-rank Toeplitz matrix");
    std::string in_path, out_path, method = "gmusic", truth_path, out_matrix;
    std::optional<std::size_t> rank;
    bool auto_rank = false;
    double theta = 0.25;
    approx->add_option("--input", in_path, "input matrix (CMAT v1)")->required();
    approx->add_option("--rank", rank, "known rank r");
    approx->add_flag("--auto-rank", auto_rank, "detect rank by singular value thresholding");
    approx->add_option("--theta", theta, "threshold for --auto-rank")->capture_default_str();
    approx->add_option("--method", method, "gmusic|altproj")->capture_default_str();
    approx->add_option("--out", out_path, "output json path")->required();
    approx->add_option("--truth", truth_path, "ground-truth matrix (CMAT v1) for errors");
    approx->add_option("--out-matrix", out_matrix, "also write the estimate (CMAT v1)");

    // subspace
    auto* subspace = app.add_subcommand("subspace", "estimate a Fourier subspace");
    std::string sub_in, sub_out, basis_out;
    std::optional<std::size_t> sub_rank;
    bool sub_auto = false;
    double sub_theta = 0.25;
    subspace->add_option("--input", sub_in, "vector file: lines of \"re im\"")->required();
    subspace->add_option("--rank", sub_rank, "known subspace dimension r");
    subspace->add_flag("--auto-rank", sub_auto, "detect rank by singular value thresholding");
    subspace->add_option("--theta", sub_theta, "threshold for --auto-rank")->capture_default_str();
    subspace->add_option("--out", sub_out, "output json path")->required();
    subspace->add_option("--basis-out", basis_out, "basis output path (CMAT v1)");

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark preset");
    std::string preset, csv_path, md_path;
    std::size_t trials = 10, threads = 1, max_n = 0;
    std::uint64_t seed = 1;
    bench->add_option("--preset", preset,
                      "table1|table2|scaling-toeplitz|scaling-subspace")
        ->required();
    bench->add_option("--trials", trials, "trials per cell")->capture_default_str();
    bench->add_option("--seed", seed, "master seed")->capture_default_str();
    bench->add_option("--threads", threads, "worker threads")->capture_default_str();
    bench->add_option("--max-n", max_n, "skip cells with n larger than this (0 = no cap)");
    bench->add_option("--csv", csv_path, "per-trial records output (CSV)");
    bench->add_option("--md", md_path, "aggregated report output (markdown)");

    // generate
    auto* generate = app.add_subcommand("generate", "write a noisy test instance");
    std::string gen_kind = "toeplitz", gen_out;
    std::size_t gen_n = 200, gen_r = 20;
    double gen_beta = 4.0, gen_sigma = 0.1;
    std::uint64_t gen_seed = 1;
    generate->add_option("--kind", gen_kind, "toeplitz|hankel|subspace")->capture_default_str();
    generate->add_option("--n", gen_n, "dimension")->required();
    generate->add_option("--r", gen_r, "rank")->required();
    generate->add_option("--beta", gen_beta, "separation parameter")->capture_default_str();
    generate->add_option("--sigma", gen_sigma, "noise level")->capture_default_str();
    generate->add_option("--seed", gen_seed, "seed")->capture_default_str();
    generate->add_option("--out", gen_out, "output path (CMAT or vector file)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_bad_args;
    }

    try {
        if (approx->parsed())
            return run_approx(in_path, rank, auto_rank, theta, method, out_path, truth_path,
                              out_matrix);
        if (subspace->parsed())
            return run_subspace(sub_in, sub_rank, sub_auto, sub_theta, sub_out, basis_out);
        if (bench->parsed())
            return run_bench_cmd(preset, trials, seed, threads, max_n, csv_path, md_path);
        if (generate->parsed())
            return run_generate(gen_kind, gen_n, gen_r, gen_beta, gen_sigma, gen_seed,
                                gen_out);
    } catch (const gmusic::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const gmusic::initialization_failure& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return exit_estimation_failure;
    } catch (const gmusic::estimation_failure& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return exit_estimation_failure;
    } catch (const gmusic::no_signal_error& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return exit_estimation_failure;
    } catch (const gmusic::ill_conditioned_error& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return exit_estimation_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return exit_bad_args;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_estimation_failure;
    }
    return exit_bad_args;
}
