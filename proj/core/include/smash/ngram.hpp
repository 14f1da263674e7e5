#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "smash/symbol_stream.hpp"

namespace smash {

// A probability distribution over the alphabet (next-symbol distribution).
using ProbVector = std::vector<double>;

ProbVector uniform_vector(const Alphabet& a);

// Largest-entry absolute difference between two distributions.
double linf_distance(const ProbVector& a, const ProbVector& b);

// Overlapping substring occurrence counts up to a depth bound. Substrings are
// packed into 64-bit keys: 1 followed by base-|alphabet| digits, so the key
// carries its own length.
class NGramCounts {
public:
    NGramCounts(Alphabet alphabet, int max_depth, std::uint64_t stream_length);

    const Alphabet& alphabet() const { return alphabet_; }
    int max_depth() const { return max_depth_; }
    std::uint64_t stream_length() const { return stream_length_; }

    std::uint64_t pack(std::span<const std::uint8_t> x) const;
    static int unpack_length(std::uint64_t key, int alphabet_size);

    std::uint64_t count(std::span<const std::uint8_t> x) const;
    std::uint64_t count_key(std::uint64_t key) const;
    void increment(std::uint64_t key) { ++counts_[key]; }

    const std::unordered_map<std::uint64_t, std::uint64_t>& raw() const { return counts_; }

private:
    Alphabet alphabet_;
    int max_depth_;
    std::uint64_t stream_length_;
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

// Single left-to-right pass, O(|s| * max_depth). max_depth >= 1.
NGramCounts count_ngrams(const SymbolStream& s, int max_depth);

// Empirical next-symbol distribution after substring x, or nullopt when x is
// never followed by any symbol. Requires |x| + 1 <= max_depth.
std::optional<ProbVector> symbolic_derivative(const NGramCounts& c,
                                              std::span<const std::uint8_t> x);

// Same, keyed by a packed substring of the given length.
std::optional<ProbVector> symbolic_derivative_key(const NGramCounts& c, std::uint64_t key,
                                                  int length);

}  // namespace smash
