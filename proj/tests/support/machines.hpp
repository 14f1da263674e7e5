#pragma once

// Shared fixtures for the test suites: the two one-state reference models,
// the two-state machine used in the annihilation walkthrough, and a seeded
// generator of random strictly-positive strongly-connected machines.

#include <vector>

#include "smash/pfsa.hpp"
#include "smash/rng.hpp"

namespace smash::testing {

// One-state machines emitting 0 with probability 0.7 / 0.9.
inline Pfsa model_a() {
    return Pfsa(Alphabet(2), {{0, 0}}, {{0.7, 0.3}});
}

inline Pfsa model_b() {
    return Pfsa(Alphabet(2), {{0, 0}}, {{0.9, 0.1}});
}

// Two-state binary machine: q0 emits 0 (p=0.3, stay) or 1 (p=0.7, to q1);
// q1 emits 0 (p=0.1, to q0) or 1 (p=0.9, stay). State chain
// M = ((0.3,0.7),(0.1,0.9)), stationary (0.125, 0.875).
inline Pfsa two_state_machine() {
    return Pfsa(Alphabet(2), {{0, 1}, {0, 1}}, {{0.3, 0.7}, {0.1, 0.9}});
}

// Random machine in the restricted space: total delta, strongly connected,
// every morph entry bounded away from zero.
inline Pfsa random_pfsa(const Alphabet& a, int n_states, SeededRng& rng) {
    const int k = a.size();
    for (;;) {
        std::vector<std::vector<int>> delta(n_states, std::vector<int>(k));
        for (auto& row : delta)
            for (int& to : row) to = static_cast<int>(rng.next_below(n_states));
        Matrix morph(n_states, std::vector<double>(k));
        for (auto& row : morph) {
            double sum = 0.0;
            for (double& e : row) {
                e = 0.2 + 0.8 * rng.next_double();
                sum += e;
            }
            for (double& e : row) e /= sum;
        }
        Pfsa g(a, std::move(delta), std::move(morph));
        if (g.validate().empty()) return g;
    }
}

}  // namespace smash::testing
