#include "smash/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "smash/rng.hpp"

namespace smash {

NumericSeries difference_series(const NumericSeries& v, DiffMode mode) {
    NumericSeries out;
    if (v.size() < 2) return out;
    out.reserve(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (mode == DiffMode::relative && v[i] == 0.0)
            throw std::invalid_argument("relative differencing: zero predecessor at index " +
                                        std::to_string(i));
        const double d = v[i + 1] - v[i];
        out.push_back(mode == DiffMode::absolute ? d : d / std::abs(v[i]));
    }
    return out;
}

Partition::Partition(Alphabet a, std::vector<double> c) : alphabet(a), cuts(std::move(c)) {
    if (static_cast<int>(cuts.size()) != alphabet.size() - 1)
        throw std::invalid_argument("partition needs |alphabet|-1 cuts");
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (!(cuts[i] > cuts[i - 1]))
            throw std::invalid_argument("partition cuts must be strictly increasing");
}

Partition fit_max_entropy_partition(const std::vector<NumericSeries>& corpus, int k) {
    std::vector<double> pooled;
    for (const auto& series : corpus) pooled.insert(pooled.end(), series.begin(), series.end());
    std::sort(pooled.begin(), pooled.end());
    const std::size_t n = pooled.size();
    std::size_t distinct = n ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i)
        if (pooled[i] != pooled[i - 1]) ++distinct;
    if (distinct < static_cast<std::size_t>(k))
        throw std::invalid_argument("fit_max_entropy_partition: fewer than k distinct values");

    // Type-1 empirical quantiles: Q(p) = x_(ceil(p n)), 1-indexed order statistic.
    std::vector<double> cuts(k - 1);
    for (int i = 1; i < k; ++i) {
        const std::size_t rank =
            static_cast<std::size_t>(std::ceil(double(n) * i / k - 1e-9));
        cuts[i - 1] = pooled[std::min(rank, n) - 1];
    }
    for (int i = 1; i < k - 1; ++i)
        if (!(cuts[i] > cuts[i - 1]))
            throw std::invalid_argument(
                "fit_max_entropy_partition: tied quantiles collapse cells");
    return Partition(Alphabet(k), std::move(cuts));
}

SymbolStream quantize(const NumericSeries& v, const Partition& p) {
    SymbolStream out(p.alphabet);
    out.reserve(v.size());
    for (double x : v) {
        // Cells are left-open/right-closed, so a value equal to a cut goes low.
        const auto it = std::lower_bound(p.cuts.begin(), p.cuts.end(), x);
        out.push_back(static_cast<int>(it - p.cuts.begin()));
    }
    return out;
}

SchemeScore evaluate_scheme(const std::vector<SymbolStream>& corpus, double epsilon_star,
                            std::uint64_t seed) {
    const std::size_t t = corpus.size();
    if (t < 2) throw std::invalid_argument("evaluate_scheme: need at least 2 streams");
    for (const auto& s : corpus)
        if (s.empty()) throw std::invalid_argument("evaluate_scheme: empty stream");

    SchemeScore score;
    for (std::size_t i = 0; i < t; ++i) {
        SmashConfig cfg;
        cfg.epsilon_star = epsilon_star;
        cfg.seed = derive_seed(seed, i);
        score.mean_self_error += self_annihilation(corpus[i], cfg).first;
    }
    score.mean_self_error /= static_cast<double>(t);

    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            if (i == j) continue;
            SmashConfig cfg;
            cfg.epsilon_star = epsilon_star;
            cfg.seed = derive_seed(derive_seed(seed, i), j);
            score.mean_discrimination += cross_annihilation(corpus[i], corpus[j], cfg).first;
        }
    score.mean_discrimination /= static_cast<double>(t * (t - 1));

    score.ratio = score.mean_discrimination > 0.0
                      ? score.mean_self_error / score.mean_discrimination
                      : std::numeric_limits<double>::infinity();
    const std::vector<double> freq = symbol_frequencies(corpus);
    score.min_symbol_freq = *std::min_element(freq.begin(), freq.end());
    return score;
}

AlphabetSelection select_alphabet_size(const std::vector<NumericSeries>& corpus,
                                       const std::vector<int>& candidate_sizes,
                                       double epsilon_star, std::uint64_t seed,
                                       double frequency_floor) {
    if (candidate_sizes.empty())
        throw std::invalid_argument("select_alphabet_size: no candidate sizes");

    std::vector<std::pair<int, SchemeScore>> scores;
    std::optional<Partition> best_partition;
    int best_size = 0;
    double best_ratio = std::numeric_limits<double>::infinity();
    std::ostringstream report;
    for (int k : candidate_sizes) {
        Partition p = fit_max_entropy_partition(corpus, k);
        std::vector<SymbolStream> quantized;
        quantized.reserve(corpus.size());
        for (const auto& series : corpus) quantized.push_back(quantize(series, p));
        SchemeScore score = evaluate_scheme(quantized, epsilon_star, derive_seed(seed, k));
        scores.emplace_back(k, score);
        report << "  k=" << k << " ratio=" << score.ratio
               << " min_symbol_freq=" << score.min_symbol_freq << "\n";
        if (score.min_symbol_freq < frequency_floor) continue;
        if (score.ratio < best_ratio) {
            best_ratio = score.ratio;
            best_size = k;
            best_partition = std::move(p);
        }
    }
    if (!best_partition)
        throw std::invalid_argument(
            "select_alphabet_size: all candidates below frequency floor " +
            std::to_string(frequency_floor) + ":\n" + report.str());
    return AlphabetSelection{best_size, std::move(*best_partition), std::move(scores)};
}

Partition read_partition(std::istream& in) {
    std::string word;
    int k;
    if (!(in >> word >> k) || word != "alphabet")
        throw std::invalid_argument("partition file: expected 'alphabet k' header");
    std::vector<double> cuts;
    double c;
    while (in >> c) cuts.push_back(c);
    return Partition(Alphabet(k), std::move(cuts));
}

Partition read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    return read_partition(in);
}

void write_partition(std::ostream& out, const Partition& p) {
    out << "alphabet " << p.alphabet.size() << "\n";
    out.precision(17);
    for (double c : p.cuts) out << c << "\n";
}

void write_partition_file(const std::string& path, const Partition& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_partition(out, p);
}

namespace {

double parse_value(const std::string& token, std::size_t lineno, std::size_t column) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("numeric csv line " + std::to_string(lineno) + " column " +
                                    std::to_string(column) + ": not a number: '" + token + "'");
    }
    if (pos != token.size())
        throw std::invalid_argument("numeric csv line " + std::to_string(lineno) + " column " +
                                    std::to_string(column) + ": trailing junk: '" + token + "'");
    if (!std::isfinite(v))
        throw std::invalid_argument("numeric csv line " + std::to_string(lineno) + " column " +
                                    std::to_string(column) + ": non-finite value");
    return v;
}

}  // namespace

std::vector<NumericSeries> read_numeric_csv(std::istream& in, bool column_mode) {
    std::vector<NumericSeries> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        NumericSeries row;
        std::stringstream ls(line);
        std::string token;
        std::size_t column = 0;
        while (std::getline(ls, token, ',')) {
            ++column;
            // Trim blanks around the token.
            const auto b = token.find_first_not_of(" \t");
            if (b == std::string::npos)
                throw std::invalid_argument("numeric csv line " + std::to_string(lineno) +
                                            " column " + std::to_string(column) + ": empty field");
            const auto e = token.find_last_not_of(" \t");
            row.push_back(parse_value(token.substr(b, e - b + 1), lineno, column));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (!column_mode) return rows;
    NumericSeries column;
    column.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 1)
            throw std::invalid_argument("numeric csv: column mode expects one value per line");
        column.push_back(rows[i][0]);
    }
    return {std::move(column)};
}

std::vector<NumericSeries> read_numeric_csv_file(const std::string& path, bool column_mode) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open numeric csv: " + path);
    return read_numeric_csv(in, column_mode);
}

}  // namespace smash
