// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "blockdpp/block_spec.hpp"
#include "blockdpp/kernel.hpp"
#include "blockdpp/limit_kernel.hpp"
#include "blockdpp/sampler.hpp"
#include "blockdpp/series_io.hpp"
#include "blockdpp/stats.hpp"
#include "blockdpp/verify.hpp"
#include "blockdpp/version.hpp"

namespace {

using namespace blockdpp;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::string output;
    std::string format = "csv";
    bool deterministic = false;
    int threads = 1;
};

// --blocks grammar: comma-separated a:w pairs, e.g. "0:0.5,2:1".
std::vector<Block> parse_blocks(const std::string& text) {
    std::vector<Block> blocks;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto colon = token.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
            throw CLI::ValidationError("--blocks", "malformed block token '" + token +
                                                       "', expected a:w");
        std::size_t used = 0;
        double a = 0.0, w = 0.0;
        try {
            a = std::stod(token.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument(token);
            w = std::stod(token.substr(colon + 1), &used);
            if (used != token.size() - colon - 1) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--blocks", "malformed block token '" + token + "'");
        }
        blocks.push_back({a, w});
    }
    if (blocks.empty()) throw CLI::ValidationError("--blocks", "no blocks given");
    return blocks;
}

std::string format_blocks(const std::vector<Block>& blocks) {
    std::ostringstream os;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) os << ",";
        os << blocks[i].a << ":" << blocks[i].w;
    }
    return os.str();
}

Parity parse_parity(const std::string& text) {
    if (text == "even") return Parity::even;
    if (text == "odd") return Parity::odd;
    if (text == "custom") return Parity::custom;
    throw CLI::ValidationError("--parity", "expected even|odd|custom");
}

// Grid grammar min:max:count; L-list grammar min:max:(lin|log)count or a
// comma-separated explicit list.
std::vector<double> parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--grid", "expected min:max:count, got '" + text + "'");
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(text.substr(c2 + 1));
    if (count < 2 || !(hi > lo))
        throw CLI::ValidationError("--grid", "need max > min and count >= 2");
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * i / (count - 1);
    return grid;
}

std::vector<double> parse_l_list(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        std::vector<double> out;
        std::stringstream ss(text);
        std::string token;
        while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
        if (out.empty()) throw CLI::ValidationError("--L", "empty list");
        return out;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw CLI::ValidationError("--L", "expected min:max:[lin|log]count");
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    std::string tail = text.substr(c2 + 1);
    bool log_spaced = false;
    if (tail.rfind("log", 0) == 0) {
        log_spaced = true;
        tail = tail.substr(3);
    } else if (tail.rfind("lin", 0) == 0) {
        tail = tail.substr(3);
    }
    const int count = std::stoi(tail);
    if (count < 2 || !(hi > lo) || (log_spaced && !(lo > 0.0)))
        throw CLI::ValidationError("--L", "bad range");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        out[i] = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return out;
}

// Alpha grammar: "-1/3" or a plain real like "-0.25".
double parse_alpha(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = std::stod(text.substr(0, slash));
        const double den = std::stod(text.substr(slash + 1));
        if (den == 0.0) throw CLI::ValidationError("--alpha", "division by zero");
        return num / den;
    }
    return std::stod(text);
}

void emit(const GlobalOptions& global, std::vector<StatSeries> series,
          const std::map<std::string, std::string>& run_meta) {
    for (StatSeries& s : series) {
        for (const auto& [k, v] : run_meta) s.meta[k] = v;
        s.meta["version"] = kVersion;
        if (!global.deterministic) {
            const auto now = std::chrono::system_clock::now();
            s.meta["generated_at_unix"] =
                std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                   now.time_since_epoch())
                                   .count());
        }
    }
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!global.output.empty()) {
        file.open(global.output);
        if (!file) throw std::runtime_error("cannot open output file " + global.output);
        os = &file;
    }
    if (global.format == "json")
        write_series_json(*os, series);
    else
        write_series_csv(*os, series);
}

int default_threads() {
    if (const char* env = std::getenv("BLOCKDPP_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockdpp: block-projection fermion kernels, alpha-determinantal "
                 "statistics, and exact DPP sampling"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    global.threads = default_threads();
    app.add_option("-o,--output", global.output, "Output file (default stdout)");
    app.add_option("--format", global.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--deterministic", global.deterministic,
                 "Suppress the timestamp metadata line");
    app.add_option("--threads", global.threads, "Worker threads for sweeps and replicates");

    // --- density ---------------------------------------------------------
    auto* density = app.add_subcommand("density", "Finite-M one-point density and its asymptote");
    std::string d_blocks = "0:1", d_parity = "custom", d_grid;
    std::int64_t d_m = 100;
    density->add_option("--blocks", d_blocks, "Blocks as a:w[,a:w...]");
    density->add_option("--M", d_m, "Scale parameter M")->required();
    density->add_option("--parity", d_parity, "Block pattern: even|odd|custom");
    density->add_option("--grid", d_grid, "Position grid min:max:count");

    // --- corr ------------------------------------------------------------
    auto* corr = app.add_subcommand("corr", "Rescaled two-point correlation vs separation");
    std::string c_blocks, c_parity = "custom", c_grid = "0:6:301", c_alpha;
    std::int64_t c_m = 20;
    double c_a = -1.0;
    corr->add_option("--blocks", c_blocks, "Blocks as a:w[,a:w...]");
    corr->add_option("--a", c_a, "Single-block shorthand: blocks = a:1");
    corr->add_option("--M", c_m, "Scale parameter M");
    corr->add_option("--parity", c_parity, "Block pattern: even|odd|custom");
    corr->add_option("--grid", c_grid, "Separation grid min:max:count");
    corr->add_option("--alpha", c_alpha, "Emit only the alpha-limit curve, e.g. -1/2");

    // --- nv --------------------------------------------------------------
    auto* nv = app.add_subcommand("nv", "Number variance vs box length");
    std::string n_alpha = "-1", n_l = "0.1:100:log50", n_blocks, n_parity = "custom";
    std::int64_t n_m = 20;
    nv->add_option("--alpha", n_alpha, "Process alpha, e.g. -1 or -1/2");
    nv->add_option("--L", n_l, "Box lengths min:max:[lin|log]count or comma list");
    nv->add_option("--blocks", n_blocks, "Also tabulate the finite-M rescaled variance");
    nv->add_option("--M", n_m, "Scale parameter M for --blocks");
    nv->add_option("--parity", n_parity, "Block pattern for --blocks");

    // --- sk --------------------------------------------------------------
    auto* sk = app.add_subcommand("sk", "Structure factor S(k)");
    std::string s_alpha = "-1", s_grid = "0:8:401";
    sk->add_option("--alpha", s_alpha, "Process alpha, e.g. -1/3");
    sk->add_option("--grid", s_grid, "k grid min:max:count");

    // --- sample ----------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "Exact projection-DPP samples");
    std::string p_basis = "hermite", p_blocks = "0:1", p_parity = "custom";
    std::int64_t p_m = 10, p_n = 16;
    int p_replicates = 100, p_superposition = 1, p_power = 1;
    std::uint64_t p_seed = 0;
    sample->add_option("--basis", p_basis, "hermite (line) or fourier (circle)")
        ->check(CLI::IsMember({"hermite", "fourier"}));
    sample->add_option("--blocks", p_blocks, "Hermite level blocks a:w[,a:w...]");
    sample->add_option("--M", p_m, "Scale parameter M (hermite)");
    sample->add_option("--parity", p_parity, "Block pattern (hermite)");
    sample->add_option("--N", p_n, "Level count (fourier)");
    sample->add_option("--replicates", p_replicates, "Number of replicates");
    sample->add_option("--seed", p_seed, "RNG seed");
    sample->add_option("--superposition", p_superposition, "Union of this many copies");
    sample->add_option("--power-map", p_power, "Apply theta -> m theta (fourier only)");

    // --- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run the verification suite (JSON lines)");
    bool v_quick = false;
    int v_criterion = 0;
    verify->add_flag("--quick", v_quick, "Acceptance criteria only, skip invariants");
    verify->add_option("--criterion", v_criterion, "Run a single numbered criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (density->parsed()) {
            const BlockSpec spec(parse_blocks(d_blocks), d_m, parse_parity(d_parity));
            std::string grid_text = d_grid;
            if (grid_text.empty()) {
                const double edge = spec.support_edge() * 1.1;
                std::ostringstream os;
                os << -edge << ":" << edge << ":400";
                grid_text = os.str();
            }
            const std::vector<double> grid = parse_grid(grid_text);
            StatSeries finite, asymptote;
            finite.label = "density_finite";
            asymptote.label = "density_asymptote";
            finite.x_unit = asymptote.x_unit = "position";
            for (double x : grid) {
                finite.x.push_back(x);
                finite.y.push_back(density_finite(spec, x));
                asymptote.x.push_back(x);
                asymptote.y.push_back(blocks_density(spec, x));
            }
            emit(global, {finite, asymptote},
                 {{"command", "density"},
                  {"blocks", format_blocks(spec.blocks())},
                  {"M", std::to_string(d_m)},
                  {"parity", to_string(spec.parity())},
                  {"grid", grid_text}});
        } else if (corr->parsed()) {
            const std::vector<double> grid = parse_grid(c_grid);
            std::vector<StatSeries> series;
            std::map<std::string, std::string> meta{{"command", "corr"}, {"grid", c_grid}};
            if (!c_alpha.empty()) {
                const double alpha = parse_alpha(c_alpha);
                StatSeries limit;
                limit.label = "rho2_alpha_limit";
                limit.x_unit = "separation";
                for (double s : grid) {
                    limit.x.push_back(s);
                    limit.y.push_back(rho2_limit(alpha, s));
                }
                series.push_back(std::move(limit));
                meta["alpha"] = c_alpha;
            } else {
                std::vector<Block> blocks =
                    c_blocks.empty() ? std::vector<Block>{{c_a < 0.0 ? 0.0 : c_a, 1.0}}
                                     : parse_blocks(c_blocks);
                const BlockSpec spec(blocks, c_m, parse_parity(c_parity));
                const LimitKernel kernel = limit_kernel_for(spec);
                const double rho0 = density_finite(spec, 0.0);
                StatSeries finite, limit, alpha_curve;
                finite.label = "rho2_finite_rescaled";
                limit.label = "rho2_limit_kernel";
                alpha_curve.label = "rho2_alpha_limit";
                finite.x_unit = limit.x_unit = alpha_curve.x_unit = "separation";
                for (double s : grid) {
                    const double x1 = 0.5 * s / rho0, x2 = -0.5 * s / rho0;
                    const double k12 = kernel_block(spec, x1, x2);
                    const double rho2 = density_finite(spec, x1) * density_finite(spec, x2) -
                                        k12 * k12;
                    finite.x.push_back(s);
                    finite.y.push_back(rho2 / (rho0 * rho0));
                    const double k = kernel(s);
                    limit.x.push_back(s);
                    limit.y.push_back(1.0 - k * k);
                    alpha_curve.x.push_back(s);
                    alpha_curve.y.push_back(rho2_limit(kernel.alpha, s));
                }
                series = {finite, limit, alpha_curve};
                meta["blocks"] = format_blocks(spec.blocks());
                meta["M"] = std::to_string(c_m);
                meta["parity"] = to_string(spec.parity());
            }
            emit(global, std::move(series), meta);
        } else if (nv->parsed()) {
            const double alpha = parse_alpha(n_alpha);
            const std::vector<double> l_list = parse_l_list(n_l);
            StatSeries exact, small_series, large_series;
            exact.label = "nv_alpha";
            small_series.label = "nv_small_l_expansion";
            large_series.label = "nv_dyson_mehta_asymptote";
            exact.x_unit = small_series.x_unit = large_series.x_unit = "box length";
            for (double l : l_list) {
                exact.x.push_back(l);
                exact.y.push_back(number_variance_alpha(alpha, l));
                small_series.x.push_back(l);
                small_series.y.push_back(nv_expansion(alpha, l, ExpansionRegime::small));
                large_series.x.push_back(l);
                large_series.y.push_back(nv_expansion(alpha, l, ExpansionRegime::large));
            }
            std::vector<StatSeries> series{exact, small_series, large_series};
            std::map<std::string, std::string> meta{
                {"command", "nv"}, {"alpha", n_alpha}, {"L", n_l}};
            if (!n_blocks.empty()) {
                const BlockSpec spec(parse_blocks(n_blocks), n_m, parse_parity(n_parity));
                const double rho0 = density_finite(spec, 0.0);
                StatSeries finite;
                finite.label = "nv_finite_rescaled";
                finite.x_unit = "box length";
                const QuadratureSpec quad{1e-6, 1e-8, 40000, 16};
                for (double l : l_list) {
                    finite.x.push_back(l);
                    finite.y.push_back(number_variance_finite(spec, l / rho0, quad));
                }
                series.push_back(std::move(finite));
                meta["blocks"] = format_blocks(spec.blocks());
                meta["M"] = std::to_string(n_m);
                meta["parity"] = to_string(spec.parity());
            }
            emit(global, std::move(series), meta);
        } else if (sk->parsed()) {
            const double alpha = parse_alpha(s_alpha);
            const std::vector<double> grid = parse_grid(s_grid);
            StatSeries series;
            series.label = "structure_factor";
            series.x_unit = "k";
            for (double k : grid) {
                series.x.push_back(k);
                series.y.push_back(structure_factor(alpha, k));
            }
            emit(global, {series},
                 {{"command", "sk"}, {"alpha", s_alpha}, {"grid", s_grid}});
        } else if (sample->parsed()) {
            std::unique_ptr<DppSampler> sampler;
            std::map<std::string, std::string> meta{{"command", "sample"},
                                                    {"basis", p_basis},
                                                    {"replicates", std::to_string(p_replicates)},
                                                    {"seed", std::to_string(p_seed)}};
            if (p_basis == "hermite") {
                const BlockSpec spec(parse_blocks(p_blocks), p_m, parse_parity(p_parity));
                sampler = std::make_unique<DppSampler>(HermiteBasis{spec});
                meta["blocks"] = format_blocks(spec.blocks());
                meta["M"] = std::to_string(p_m);
                meta["parity"] = to_string(spec.parity());
            } else {
                sampler = std::make_unique<DppSampler>(FourierBasis{p_n});
                meta["N"] = std::to_string(p_n);
            }
            if (p_power > 1 && sampler->domain() != SampleDomain::circle)
                throw CLI::ValidationError("--power-map", "requires the fourier basis");
            auto samples = sample_replicates(*sampler, {p_seed, 0}, p_replicates,
                                             global.threads, p_superposition);
            if (p_power > 1)
                for (PointSample& s : samples) s = power_map(s, p_power);
            if (p_superposition > 1) meta["superposition"] = std::to_string(p_superposition);
            if (p_power > 1) meta["power_map"] = std::to_string(p_power);
            meta["version"] = kVersion;
            std::vector<std::pair<std::string, std::string>> meta_pairs(meta.begin(), meta.end());
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!global.output.empty()) {
                file.open(global.output);
                if (!file) throw std::runtime_error("cannot open output file " + global.output);
                os = &file;
            }
            if (global.format == "json")
                write_samples_json(*os, samples, meta_pairs);
            else
                write_samples_csv(*os, samples, meta_pairs);
        } else if (verify->parsed()) {
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!global.output.empty()) {
                file.open(global.output);
                os = &file;
            }
            int failures = 0;
            auto report = [&](const VerifyResult& r) {
                (*os) << "{\"id\":\"" << r.id << "\",\"observed\":" << r.observed
                      << ",\"tolerance\":" << r.tolerance << ",\"pass\":"
                      << (r.pass ? "true" : "false") << ",\"seconds\":" << r.seconds << "}\n";
                os->flush();
                if (!r.pass) ++failures;
            };
            // Stream results per block so partial output survives a failure.
            const int first = v_criterion > 0 ? v_criterion : 1;
            const int last = v_criterion > 0 ? v_criterion : acceptance_criteria_count();
            for (int c = first; c <= last; ++c) {
                try {
                    for (const VerifyResult& r : run_acceptance_criterion(c, global.threads))
                        report(r);
                } catch (const std::exception& e) {
                    report({"c" + std::to_string(c) + ".exception", 0.0, 0.0, false, 0.0});
                    std::cerr << "criterion " << c << ": " << e.what() << "\n";
                }
            }
            if (!v_quick && v_criterion == 0) {
                try {
                    for (const VerifyResult& r : run_invariant_suite()) report(r);
                } catch (const std::exception& e) {
                    report({"invariants.exception", 0.0, 0.0, false, 0.0});
                    std::cerr << "invariants: " << e.what() << "\n";
                }
            }
            return failures > 0 ? kExitFailure : kExitSuccess;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitSuccess;
}
