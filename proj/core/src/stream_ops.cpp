#include "smash/stream_ops.hpp"

#include <stdexcept>

namespace smash {

SymbolStream fwn_stream(const Alphabet& a, std::size_t length, SeededRng& rng) {
    SymbolStream out(a);
    out.reserve(length);
    const std::uint64_t k = a.size();
    for (std::size_t i = 0; i < length; ++i)
        out.push_back(static_cast<int>(rng.next_below(k)));
    return out;
}

SymbolStream independent_copy(const SymbolStream& s, SeededRng& rng) {
    const std::uint64_t k = s.alphabet().size();
    SymbolStream out(s.alphabet());
    out.reserve(s.size() / k + 16);
    for (std::uint8_t sym : s.symbols())
        if (rng.next_below(k) == sym) out.push_back(sym);
    return out;
}

SymbolStream invert_stream(const SymbolStream& s, SeededRng& rng) {
    const int k = s.alphabet().size();
    // |alphabet|-1 mutually independent copies, each on its own RNG lane.
    std::vector<SymbolStream> copies;
    copies.reserve(k - 1);
    for (int lane = 0; lane < k - 1; ++lane) {
        SeededRng lane_rng(rng.next_u64());
        copies.push_back(independent_copy(s, lane_rng));
    }
    std::size_t len = copies[0].size();
    for (const auto& c : copies) len = std::min(len, c.size());

    SymbolStream out(s.alphabet());
    std::vector<bool> present(k);
    for (std::size_t i = 0; i < len; ++i) {
        present.assign(k, false);
        bool distinct = true;
        for (const auto& c : copies) {
            const std::uint8_t sym = c[i];
            if (present[sym]) {
                distinct = false;
                break;
            }
            present[sym] = true;
        }
        if (!distinct) continue;
        for (int sym = 0; sym < k; ++sym)
            if (!present[sym]) {
                out.push_back(sym);
                break;
            }
    }
    return out;
}

SymbolStream sum_streams(const SymbolStream& s1, const SymbolStream& s2) {
    if (!(s1.alphabet() == s2.alphabet()))
        throw std::invalid_argument("sum_streams: alphabet mismatch");
    const std::size_t len = std::min(s1.size(), s2.size());
    SymbolStream out(s1.alphabet());
    for (std::size_t i = 0; i < len; ++i)
        if (s1[i] == s2[i]) out.push_back(s1[i]);
    return out;
}

}  // namespace smash
