// Command-line front end for the data smashing pipeline: quantization,
// stream operations, the annihilation circuit, distance matrices, PFSA
// simulation and the model algebra.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "smash/annihilation.hpp"
#include "smash/pfsa.hpp"
#include "smash/quantizer.hpp"
#include "smash/stream_ops.hpp"

namespace {

using namespace smash;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInsufficient = 2;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

// Writes to the path, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
    } else {
        open_out(path) << text;
    }
}

struct CalibrationTable {
    std::vector<std::size_t> lengths;
    std::vector<double> p99;

    // 99th percentile of the FWN zeta statistic at the nearest calibrated length.
    double bound_for(std::size_t n) const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < lengths.size(); ++i) {
            auto dist = [&](std::size_t len) {
                return len > n ? len - n : n - len;
            };
            if (dist(lengths[i]) < dist(lengths[best])) best = i;
        }
        return p99[best];
    }
};

CalibrationTable read_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open calibration file: " + path);
    CalibrationTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.rfind("length", 0) == 0) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::size_t n;
        double p50, p90, p99;
        if (!(ls >> n >> p50 >> p90 >> p99))
            throw std::runtime_error("calibration file line " + std::to_string(lineno) +
                                     ": expected 'length,p50,p90,p99'");
        table.lengths.push_back(n);
        table.p99.push_back(p99);
    }
    if (table.lengths.empty()) throw std::runtime_error("calibration file is empty");
    return table;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    return out;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::vector<double>>& m) {
    const std::size_t t = m.size();
    for (std::size_t i = 0; i < t; ++i) out << (i ? "," : "") << "s" << (i + 1);
    out << "\n";
    out.precision(10);
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << "\n";
    }
}

int cmd_simulate(const std::string& pfsa_path, std::size_t length, std::uint64_t seed,
                 const std::string& out_path) {
    Pfsa g = read_pfsa_file(pfsa_path);
    if (auto v = g.validate(); !v.empty()) {
        std::cerr << "invalid pfsa:";
        for (const auto& name : v) std::cerr << " " << name;
        std::cerr << "\n";
        return kExitError;
    }
    SeededRng rng(seed);
    emit(out_path, g.sample(length, rng).to_text() + "\n");
    return kExitOk;
}

int cmd_ops(const std::string& op, const std::string& streams_path, int alphabet_size,
            std::uint64_t seed, bool have_seed, const std::string& out_path) {
    Alphabet a(alphabet_size);
    std::vector<SymbolStream> streams = read_stream_file(streams_path, a);
    if (streams.empty()) {
        std::cerr << "no streams in " << streams_path << "\n";
        return kExitError;
    }
    std::vector<SymbolStream> out;
    if (op == "sum") {
        if (streams.size() != 2) {
            std::cerr << "ops sum expects exactly 2 streams, got " << streams.size() << "\n";
            return kExitError;
        }
        out.push_back(sum_streams(streams[0], streams[1]));
    } else {
        if (!have_seed) {
            std::cerr << "--seed is required for ops " << op << "\n";
            return kExitError;
        }
        for (std::size_t i = 0; i < streams.size(); ++i) {
            SeededRng rng(derive_seed(seed, i));
            out.push_back(op == "copy" ? independent_copy(streams[i], rng)
                                       : invert_stream(streams[i], rng));
        }
    }
    std::ostringstream text;
    write_streams(text, out);
    emit(out_path, text.str());
    return kExitOk;
}

int cmd_smash(const std::string& streams_path, int alphabet_size, const SmashConfig& cfg,
              const std::string& calibration_path) {
    Alphabet a(alphabet_size);
    std::vector<SymbolStream> streams = read_stream_file(streams_path, a);
    if (streams.size() != 2) {
        std::cerr << "smash expects exactly 2 streams, got " << streams.size() << "\n";
        return kExitError;
    }
    SmashResult r = smash::smash(streams[0], streams[1], cfg);

    double threshold = cfg.epsilon_star;
    if (!calibration_path.empty()) {
        // Finite-sample FWN floor: a pipeline output cannot be expected to beat
        // the calibrated noise level of its own length.
        CalibrationTable table = read_calibration(calibration_path);
        const std::size_t shortest =
            *std::min_element(r.output_lengths.begin(), r.output_lengths.end());
        threshold = std::max(threshold, table.bound_for(shortest));
        r.sufficient1 = r.output_lengths[0] >= cfg.min_output_symbols && r.eps11 <= threshold;
        r.sufficient2 = r.output_lengths[1] >= cfg.min_output_symbols && r.eps22 <= threshold;
        r.same_source = r.sufficient1 && r.sufficient2 &&
                        r.output_lengths[2] >= cfg.min_output_symbols && r.eps12 <= threshold;
    }

    std::cout << "self-annihilation error of stream 1 (eps11): " << r.eps11 << " ["
              << r.output_lengths[0] << " output symbols]\n"
              << "self-annihilation error of stream 2 (eps22): " << r.eps22 << " ["
              << r.output_lengths[1] << " output symbols]\n"
              << "cross annihilation error (eps12):            " << r.eps12 << " ["
              << r.output_lengths[2] << " output symbols]\n"
              << "data sufficient:  s1=" << (r.sufficient1 ? "yes" : "no")
              << " s2=" << (r.sufficient2 ? "yes" : "no") << "\n"
              << "same source:      " << (r.same_source ? "yes" : "no") << " (threshold "
              << threshold << ")\n";
    std::cout << "RESULT eps11=" << r.eps11 << " eps22=" << r.eps22 << " eps12=" << r.eps12
              << " sufficient1=" << r.sufficient1 << " sufficient2=" << r.sufficient2
              << " same_source=" << r.same_source << " len11=" << r.output_lengths[0]
              << " len22=" << r.output_lengths[1] << " len12=" << r.output_lengths[2] << "\n";
    return r.any_insufficient(cfg.min_output_symbols) ? kExitInsufficient : kExitOk;
}

int cmd_matrix(const std::string& streams_path, int alphabet_size, const SmashConfig& cfg,
               int threads, bool order_invariant, const std::string& out_path,
               const std::string& full_out_path) {
    Alphabet a(alphabet_size);
    std::vector<SymbolStream> streams = read_stream_file(streams_path, a);
    DistanceMatrices m = distance_matrix(streams, cfg, threads, order_invariant);

    std::ofstream h_out = open_out(out_path);
    write_matrix_csv(h_out, m.H);
    if (!full_out_path.empty()) {
        std::ofstream e_out = open_out(full_out_path);
        write_matrix_csv(e_out, m.E);
    }

    std::ofstream mask_out = open_out(out_path + ".mask.csv");
    std::vector<std::vector<double>> mask(m.mask.size());
    bool all_ok = true;
    for (std::size_t i = 0; i < m.mask.size(); ++i)
        for (int v : m.mask[i]) {
            mask[i].push_back(v);
            all_ok = all_ok && v == 1;
        }
    write_matrix_csv(mask_out, mask);
    return all_ok ? kExitOk : kExitInsufficient;
}

int cmd_algebra(const std::string& op, const std::string& lhs_path,
                const std::string& rhs_path, int alphabet_size, int depth,
                const std::string& out_path) {
    if (op == "zero") {
        std::ostringstream text;
        write_pfsa(text, zero_model(Alphabet(alphabet_size)));
        emit(out_path, text.str());
        return kExitOk;
    }
    Pfsa g1 = read_pfsa_file(lhs_path);
    if (op == "invert") {
        std::ostringstream text;
        write_pfsa(text, invert(g1));
        emit(out_path, text.str());
        return kExitOk;
    }
    Pfsa g2 = read_pfsa_file(rhs_path);
    if (op == "theta") {
        std::cout.precision(12);
        std::cout << theta_distance(g1, g2, depth) << "\n";
        return kExitOk;
    }
    Pfsa result = op == "add" ? add(g1, g2) : synchronous_compose(g1, g2);
    std::ostringstream text;
    write_pfsa(text, result);
    emit(out_path, text.str());
    return kExitOk;
}

int cmd_quantize(const std::string& in_path, bool column_mode, const std::string& mode,
                 int alphabet_size, const std::string& partition_path,
                 const std::string& candidates_csv, double epsilon_star, std::uint64_t seed,
                 double floor, const std::string& fit_out, const std::string& out_path) {
    std::vector<NumericSeries> corpus = read_numeric_csv_file(in_path, column_mode);
    if (mode == "absolute" || mode == "relative") {
        const DiffMode m = mode == "absolute" ? DiffMode::absolute : DiffMode::relative;
        for (auto& series : corpus) series = difference_series(series, m);
    }

    std::optional<Partition> partition;
    if (!partition_path.empty()) {
        partition = read_partition_file(partition_path);
    } else if (!candidates_csv.empty()) {
        AlphabetSelection sel =
            select_alphabet_size(corpus, parse_int_list(candidates_csv), epsilon_star, seed,
                                 floor);
        std::cerr << "selected alphabet size " << sel.chosen_size << "\n";
        for (const auto& [k, score] : sel.scores)
            std::cerr << "  k=" << k << " self=" << score.mean_self_error
                      << " disc=" << score.mean_discrimination << " ratio=" << score.ratio
                      << " min_freq=" << score.min_symbol_freq << "\n";
        partition = std::move(sel.partition);
    } else {
        partition = fit_max_entropy_partition(corpus, alphabet_size);
    }
    if (!fit_out.empty()) write_partition_file(fit_out, *partition);

    std::vector<SymbolStream> streams;
    streams.reserve(corpus.size());
    for (const auto& series : corpus) streams.push_back(quantize(series, *partition));
    std::ostringstream text;
    write_streams(text, streams);
    emit(out_path, text.str());
    return kExitOk;
}

int cmd_calibrate(int alphabet_size, const std::string& lengths_csv, int depth,
                  std::uint64_t seed, int trials, const std::string& out_path) {
    Alphabet a(alphabet_size);
    std::ostringstream out;
    out << "length,p50,p90,p99\n";
    out.precision(10);
    for (std::size_t n : parse_size_list(lengths_csv)) {
        std::vector<double> zs(trials);
        for (int t = 0; t < trials; ++t) {
            SeededRng rng(derive_seed(seed, t * 1000003ULL + n));
            zs[t] = zeta_hat(fwn_stream(a, n, rng), depth);
        }
        std::sort(zs.begin(), zs.end());
        auto pct = [&](double p) {
            return zs[std::min<std::size_t>(static_cast<std::size_t>(p * trials), trials - 1)];
        };
        out << n << "," << pct(0.50) << "," << pct(0.90) << "," << pct(0.99) << "\n";
    }
    emit(out_path, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data smashing: causal similarity between quantized data streams"};
    app.require_subcommand(1);

    int alphabet_size = 2;
    double epsilon_star = 0.05;
    std::optional<int> depth_override;
    std::uint64_t seed = 0;
    bool have_seed = false;
    int threads = 1;
    std::size_t min_output = 100;
    std::string streams_path, out_path;

    auto add_seed = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t& v) {
                seed = v;
                have_seed = true;
            },
            "RNG seed (runs are reproducible given the seed)");
        if (required) opt->required();
        return opt;
    };

    // simulate
    auto* simulate = app.add_subcommand("simulate", "sample a stream from a PFSA file");
    std::string pfsa_path;
    std::size_t sim_length = 0;
    simulate->add_option("--pfsa", pfsa_path, "PFSA model file")->required();
    simulate->add_option("--length", sim_length, "number of symbols")->required();
    add_seed(simulate, true);
    simulate->add_option("--out", out_path, "output stream file (default stdout)");

    // ops
    auto* ops = app.add_subcommand("ops", "stream operations: copy, invert, sum");
    std::string op_name;
    ops->add_option("operation", op_name, "copy | invert | sum")
        ->required()
        ->check(CLI::IsMember({"copy", "invert", "sum"}));
    ops->add_option("--streams", streams_path, "input stream file")->required();
    ops->add_option("--alphabet", alphabet_size, "alphabet size")->required();
    add_seed(ops, false);
    ops->add_option("--out", out_path, "output stream file (default stdout)");

    // smash
    auto* smash_cmd = app.add_subcommand("smash", "run the annihilation circuit on two streams");
    std::string calibration_path;
    smash_cmd->add_option("--streams", streams_path, "input file with exactly 2 streams")
        ->required();
    smash_cmd->add_option("--alphabet", alphabet_size, "alphabet size")->required();
    smash_cmd->add_option("--epsilon", epsilon_star, "sufficiency threshold epsilon*");
    smash_cmd->add_option("--depth", depth_override, "history depth override (1..12)");
    add_seed(smash_cmd, true);
    smash_cmd->add_option("--min-output", min_output, "minimum pipeline output symbols");
    smash_cmd->add_option("--calibration", calibration_path,
                          "FWN calibration CSV from 'calibrate'");

    // matrix
    auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix over many streams");
    std::string full_out_path;
    bool order_invariant = false;
    matrix->add_option("--streams", streams_path, "input stream file (>= 2 streams)")
        ->required();
    matrix->add_option("--alphabet", alphabet_size, "alphabet size")->required();
    matrix->add_option("--epsilon", epsilon_star, "sufficiency threshold epsilon*");
    matrix->add_option("--depth", depth_override, "history depth override (1..12)");
    add_seed(matrix, true);
    matrix->add_option("--threads", threads, "worker threads for matrix cells");
    matrix->add_option("--min-output", min_output, "minimum pipeline output symbols");
    matrix->add_flag("--order-invariant", order_invariant,
                     "derive per-pair seeds from stream content instead of position");
    matrix->add_option("--out", out_path, "H matrix CSV output")->required();
    matrix->add_option("--full-out", full_out_path, "also write the raw E matrix CSV");

    // algebra
    auto* algebra = app.add_subcommand("algebra", "PFSA calculator: add, invert, compose, theta, zero");
    std::string alg_op, lhs_path, rhs_path;
    int theta_depth = 8;
    algebra->add_option("operation", alg_op, "add | invert | compose | theta | zero")
        ->required()
        ->check(CLI::IsMember({"add", "invert", "compose", "theta", "zero"}));
    algebra->add_option("--lhs", lhs_path, "left operand PFSA file");
    algebra->add_option("--rhs", rhs_path, "right operand PFSA file");
    algebra->add_option("--alphabet", alphabet_size, "alphabet size (for 'zero')");
    algebra->add_option("--depth", theta_depth, "truncation depth (for 'theta')");
    algebra->add_option("--out", out_path, "output PFSA file (default stdout)");

    // quantize
    auto* quantize_cmd = app.add_subcommand("quantize", "numeric series -> symbol streams");
    std::string in_path, mode = "none", partition_path, candidates_csv, fit_out;
    bool column_mode = false;
    double floor = 0.01;
    quantize_cmd->add_option("--in", in_path, "numeric CSV input")->required();
    quantize_cmd->add_flag("--column", column_mode, "one column per file instead of one series per line");
    quantize_cmd->add_option("--mode", mode, "differencing: none | absolute | relative")
        ->check(CLI::IsMember({"none", "absolute", "relative"}));
    quantize_cmd->add_option("--alphabet", alphabet_size, "alphabet size for a fresh fit");
    quantize_cmd->add_option("--partition", partition_path, "use an existing partition file");
    quantize_cmd->add_option("--candidates", candidates_csv,
                             "comma-separated alphabet sizes to select among");
    quantize_cmd->add_option("--epsilon", epsilon_star, "epsilon* for scheme scoring");
    add_seed(quantize_cmd, false);
    quantize_cmd->add_option("--floor", floor, "rare-symbol frequency floor for selection");
    quantize_cmd->add_option("--fit-out", fit_out, "write the fitted partition here");
    quantize_cmd->add_option("--out", out_path, "output stream file (default stdout)");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "FWN zeta percentiles per stream length");
    std::string lengths_csv;
    int cal_depth = 4, trials = 1000;
    calibrate->add_option("--alphabet", alphabet_size, "alphabet size")->required();
    calibrate->add_option("--lengths", lengths_csv, "comma-separated stream lengths")
        ->required();
    calibrate->add_option("--depth", cal_depth, "zeta depth");
    add_seed(calibrate, true);
    calibrate->add_option("--trials", trials, "Monte-Carlo trials (>= 100)")
        ->check(CLI::Range(100, 100000000));
    calibrate->add_option("--out", out_path, "output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(pfsa_path, sim_length, seed, out_path);
        if (ops->parsed())
            return cmd_ops(op_name, streams_path, alphabet_size, seed, have_seed, out_path);
        if (smash_cmd->parsed() || matrix->parsed()) {
            SmashConfig cfg;
            cfg.epsilon_star = epsilon_star;
            cfg.depth = depth_override;
            cfg.seed = seed;
            cfg.min_output_symbols = min_output;
            if (smash_cmd->parsed())
                return cmd_smash(streams_path, alphabet_size, cfg, calibration_path);
            return cmd_matrix(streams_path, alphabet_size, cfg, threads, order_invariant,
                              out_path, full_out_path);
        }
        if (algebra->parsed()) {
            if (alg_op != "zero" && lhs_path.empty()) {
                std::cerr << "algebra " << alg_op << " requires --lhs\n";
                return kExitError;
            }
            if ((alg_op == "add" || alg_op == "compose" || alg_op == "theta") &&
                rhs_path.empty()) {
                std::cerr << "algebra " << alg_op << " requires --rhs\n";
                return kExitError;
            }
            return cmd_algebra(alg_op, lhs_path, rhs_path, alphabet_size, theta_depth,
                               out_path);
        }
        if (quantize_cmd->parsed())
            return cmd_quantize(in_path, column_mode, mode, alphabet_size, partition_path,
                                candidates_csv, epsilon_star, seed, floor, fit_out, out_path);
        if (calibrate->parsed())
            return cmd_calibrate(alphabet_size, lengths_csv, cal_depth, seed, trials,
                                 out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
