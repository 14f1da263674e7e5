#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smash/linalg.hpp"
#include "smash/ngram.hpp"
#include "smash/rng.hpp"
#include "smash/symbol_stream.hpp"

namespace smash {

// Probabilistic finite state automaton over the restricted space where every
// morph entry is strictly positive and the transition graph is strongly
// connected. delta is total: delta[q][sym] is the unique next state after
// emitting sym from q. morph rows are the per-state next-symbol distributions.
class Pfsa {
public:
    Pfsa(Alphabet alphabet, std::vector<std::vector<int>> delta, Matrix morph);

    const Alphabet& alphabet() const { return alphabet_; }
    int n_states() const { return static_cast<int>(delta_.size()); }
    int next_state(int q, int sym) const { return delta_[q][sym]; }
    double morph(int q, int sym) const { return morph_[q][sym]; }
    const Matrix& morph_matrix() const { return morph_; }
    const std::vector<std::vector<int>>& delta() const { return delta_; }

    // Invariant check; returns the names of violated invariants, empty when ok.
    std::vector<std::string> validate() const;

    // State-to-state Markov matrix M, M[i][j] = sum of morph over symbols
    // taking i to j.
    Matrix transition_matrix() const;

    // Per-symbol matrices with Gamma[sym][i][j] = morph(i,sym) iff
    // delta(i,sym) == j; one nonzero per row, sum over symbols = M.
    std::vector<Matrix> transformation_matrices() const;

    // Unique left fixed vector of M, normalized to sum 1.
    std::vector<double> stationary_distribution() const;

    // Emit `length` symbols; the start state is drawn from the stationary
    // distribution unless given explicitly.
    SymbolStream sample(std::size_t length, SeededRng& rng,
                        std::optional<int> start = std::nullopt) const;

private:
    Alphabet alphabet_;
    std::vector<std::vector<int>> delta_;
    Matrix morph_;
};

// One state, uniform morph, all self-loops: the FWN generator and group identity.
Pfsa zero_model(const Alphabet& a);

// Reachable product construction; the result encodes the same measure as g1.
Pfsa synchronous_compose(const Pfsa& g1, const Pfsa& g2);

// Abelian group sum: common structure via synchronous composition, then
// per-state row-normalized elementwise morph product.
Pfsa add(const Pfsa& g1, const Pfsa& g2);

// Group inverse: reciprocal morph entries, row-normalized; same structure.
Pfsa invert(const Pfsa& g);

// State-to-state Markov matrix of the pseudo-copy transform
// gamma * [I - (1-gamma)M]^{-1} M for gamma in (0,1). Reference object for
// stream-copy tests, not a labeled PFSA.
Matrix pseudo_copy(const Pfsa& g, double gamma);

// Exact truncated metric over all strings of length <= depth, computed by
// depth-first recursion on the canonical state distributions. depth <= 12.
double theta_distance(const Pfsa& g1, const Pfsa& g2, int depth);

// Text format: "alphabet k" / "states n" / one "from sym to prob" line per
// transition; '#'-prefixed comments.
Pfsa read_pfsa(std::istream& in);
Pfsa read_pfsa_file(const std::string& path);
void write_pfsa(std::ostream& out, const Pfsa& g);
void write_pfsa_file(const std::string& path, const Pfsa& g);

}  // namespace smash
