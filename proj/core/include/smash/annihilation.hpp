#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smash/ngram.hpp"
#include "smash/symbol_stream.hpp"

namespace smash {

constexpr int kMaxDepth = 12;

struct SmashConfig {
    double epsilon_star = 0.05;          // threshold on the zeta estimator
    std::optional<int> depth;            // override for l; default from epsilon_star
    std::uint64_t seed = 0;
    std::size_t min_output_symbols = 100;

    int depth_for(const Alphabet& a) const;
};

struct SmashResult {
    double eps11 = 0.0;
    double eps22 = 0.0;
    double eps12 = 0.0;
    bool sufficient1 = false;  // eps11 <= epsilon_star and enough output
    bool sufficient2 = false;
    bool same_source = false;  // both sufficient and eps12 <= epsilon_star
    std::array<std::size_t, 3> output_lengths{};  // self1, self2, cross

    bool any_insufficient(std::size_t min_symbols) const {
        return output_lengths[0] < min_symbols || output_lengths[1] < min_symbols ||
               output_lengths[2] < min_symbols;
    }
};

struct DistanceMatrices {
    std::vector<std::vector<double>> E;   // diagonal: self errors
    std::vector<std::vector<double>> H;   // symmetrized, zero diagonal
    std::vector<std::vector<int>> mask;   // 1 = sufficient data for the cell
};

// Deviation-from-FWN estimator: weighted sum over all strings of length <= depth
// of the sup-norm gap between the symbolic derivative and the uniform vector.
// Absent derivatives contribute 0. Result in [0, 1]. Errors on an empty stream.
double zeta_hat(const SymbolStream& s, int depth);
double zeta_hat(const NGramCounts& counts, int depth);

// ceil(ln(1/eps) / ln |alphabet|), clamped to [1, 12].
int depth_for_epsilon(double epsilon_star, const Alphabet& a);

// Expected output/input length ratio of the self-annihilation pipeline:
// (|alphabet|-1)! times the product of symbol probabilities.
double annihilation_efficiency(const ProbVector& p);

// Self-annihilation error of one stream: zeta of sum(copy(s), invert(s)).
// Returns the estimator value and the pipeline output length.
std::pair<double, std::size_t> self_annihilation(const SymbolStream& s, const SmashConfig& cfg);

// Cross error of an ordered pair: zeta of sum(s1, invert(s2)).
std::pair<double, std::size_t> cross_annihilation(const SymbolStream& s1,
                                                  const SymbolStream& s2,
                                                  const SmashConfig& cfg);

// The full circuit: eps11, eps22, eps12 plus sufficiency verdicts.
SmashResult smash(const SymbolStream& s1, const SymbolStream& s2, const SmashConfig& cfg);

// Pairwise matrix over T >= 2 streams. Per-pair seeds derive from
// (cfg.seed, i, j), or from content hashes when order_invariant is set.
// Cells are computed in parallel when threads > 1.
DistanceMatrices distance_matrix(const std::vector<SymbolStream>& streams,
                                 const SmashConfig& cfg, int threads = 1,
                                 bool order_invariant = false);

}  // namespace smash
