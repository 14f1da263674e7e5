#include "smash/ngram.hpp"

#include <cmath>
#include <stdexcept>

namespace smash {

ProbVector uniform_vector(const Alphabet& a) {
    return ProbVector(a.size(), 1.0 / a.size());
}

double linf_distance(const ProbVector& a, const ProbVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

NGramCounts::NGramCounts(Alphabet alphabet, int max_depth, std::uint64_t stream_length)
    : alphabet_(alphabet), max_depth_(max_depth), stream_length_(stream_length) {
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    // Keys must fit 64 bits: |alphabet|^(max_depth+1) < 2^63.
    double bits = (max_depth + 1) * std::log2(double(alphabet.size()));
    if (bits >= 63.0)
        throw std::invalid_argument("alphabet/depth combination overflows packed keys");
}

std::uint64_t NGramCounts::pack(std::span<const std::uint8_t> x) const {
    std::uint64_t key = 1;
    for (std::uint8_t s : x) key = key * alphabet_.size() + s;
    return key;
}

int NGramCounts::unpack_length(std::uint64_t key, int alphabet_size) {
    int len = 0;
    while (key > 1) {
        key /= alphabet_size;
        ++len;
    }
    return len;
}

std::uint64_t NGramCounts::count(std::span<const std::uint8_t> x) const {
    return count_key(pack(x));
}

std::uint64_t NGramCounts::count_key(std::uint64_t key) const {
    if (key == 1) return stream_length_;  // empty substring
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
}

NGramCounts count_ngrams(const SymbolStream& s, int max_depth) {
    NGramCounts c(s.alphabet(), max_depth, s.size());
    const int k = s.alphabet().size();
    const std::size_t n = s.size();
    auto syms = s.symbols();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t key = 1;
        const std::size_t dmax = std::min<std::size_t>(max_depth, n - i);
        for (std::size_t d = 0; d < dmax; ++d) {
            key = key * k + syms[i + d];
            c.increment(key);
        }
    }
    return c;
}

std::optional<ProbVector> symbolic_derivative_key(const NGramCounts& c, std::uint64_t key,
                                                  int length) {
    if (length + 1 > c.max_depth())
        throw std::invalid_argument("substring too long for counted depth");
    const int k = c.alphabet().size();
    ProbVector v(k, 0.0);
    double denom = 0.0;
    for (int sym = 0; sym < k; ++sym) {
        double cnt = static_cast<double>(c.count_key(key * k + sym));
        v[sym] = cnt;
        denom += cnt;
    }
    if (denom == 0.0) return std::nullopt;
    for (double& e : v) e /= denom;
    return v;
}

std::optional<ProbVector> symbolic_derivative(const NGramCounts& c,
                                              std::span<const std::uint8_t> x) {
    return symbolic_derivative_key(c, c.pack(x), static_cast<int>(x.size()));
}

}  // namespace smash
