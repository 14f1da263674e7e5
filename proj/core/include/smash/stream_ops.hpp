#pragma once

#include "smash/rng.hpp"
#include "smash/symbol_stream.hpp"

namespace smash {

// i.i.d. uniform symbols (a sample path of the zero model).
SymbolStream fwn_stream(const Alphabet& a, std::size_t length, SeededRng& rng);

// Lockstep scan of s against a fresh FWN stream; emit the symbol on match.
// Expected output length |s| / |alphabet|.
SymbolStream independent_copy(const SymbolStream& s, SeededRng& rng);

// |alphabet|-1 independent copies scanned in lockstep; when all current
// symbols are pairwise distinct, emit the one symbol absent from the set.
// Copies draw from disjoint RNG lanes derived from the one generator.
SymbolStream invert_stream(const SymbolStream& s, SeededRng& rng);

// Lockstep scan up to the shorter stream; emit on match. Deterministic.
SymbolStream sum_streams(const SymbolStream& s1, const SymbolStream& s2);

}  // namespace smash
