#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "smash/annihilation.hpp"
#include "smash/stream_ops.hpp"
#include "support/machines.hpp"

using namespace smash;
using namespace smash::testing;

namespace {

double freq_of(const SymbolStream& s, int sym) {
    double n = 0;
    for (auto x : s.symbols()) n += x == sym;
    return n / double(s.size());
}

}  // namespace

TEST_CASE("fwn stream basics") {
    SeededRng rng(1);
    CHECK(fwn_stream(Alphabet(2), 0, rng).empty());

    const std::size_t n = 100000;
    SymbolStream s = fwn_stream(Alphabet(2), n, rng);
    CHECK(std::abs(freq_of(s, 0) - 0.5) < 0.01);
    CHECK(zeta_hat(s, 4) <= 0.02);
}

TEST_CASE("operations are pure functions of inputs and seed") {
    SeededRng rng_a(77), rng_b(77);
    SymbolStream s = fwn_stream(Alphabet(3), 5000, rng_a);
    SeededRng ca(5), cb(5), ia(6), ib(6);
    CHECK(independent_copy(s, ca) == independent_copy(s, cb));
    CHECK(invert_stream(s, ia) == invert_stream(s, ib));
    SeededRng rng_c(77);
    CHECK(fwn_stream(Alphabet(3), 5000, rng_c) == s);
}

TEST_CASE("independent copy") {
    SUBCASE("empty input") {
        SeededRng rng(2);
        CHECK(independent_copy(SymbolStream(Alphabet(2)), rng).empty());
    }
    SUBCASE("length concentrates at |s|/|alphabet|") {
        SeededRng gen(3), rng(4);
        const std::size_t n = 100000;
        SymbolStream s = fwn_stream(Alphabet(2), n, gen);
        SymbolStream c = independent_copy(s, rng);
        const double expect = n / 2.0, sd = std::sqrt(n * 0.25);
        CHECK(std::abs(double(c.size()) - expect) < 3 * sd);
    }
    SUBCASE("one-state machines are their own pseudo-copies") {
        SeededRng gen(5), rng(6);
        SymbolStream s = model_a().sample(100000, gen);
        SymbolStream c = independent_copy(s, rng);
        REQUIRE(c.size() >= 10000);
        CHECK(freq_of(c, 0) == doctest::Approx(0.7).epsilon(0.03));
    }
}

TEST_CASE("stream inversion") {
    SUBCASE("binary inversion complements an independent copy in distribution") {
        SeededRng gen(7), rng(8);
        SymbolStream s = model_a().sample(100000, gen);
        SymbolStream inv = invert_stream(s, rng);
        REQUIRE(inv.size() >= 10000);
        CHECK(freq_of(inv, 0) == doctest::Approx(0.3).epsilon(0.07));
    }
    SUBCASE("FWN inverts to FWN") {
        SeededRng gen(9), rng(10);
        SymbolStream s = fwn_stream(Alphabet(2), 40000, gen);
        SymbolStream inv = invert_stream(s, rng);
        REQUIRE(inv.size() >= 10000);
        CHECK(zeta_hat(inv, 4) <= 0.03);
    }
    SUBCASE("trinary inversion frequency oracle") {
        // invert() of a one-state (0.5,0.3,0.2) machine gives the reciprocal
        // normalization; the stream inversion must land on the same frequencies.
        Pfsa g(Alphabet(3), {{0, 0, 0}}, {{0.5, 0.3, 0.2}});
        Pfsa ginv = invert(g);
        SeededRng gen(11), rng(12);
        SymbolStream s = g.sample(1000000, gen);
        SymbolStream inv = invert_stream(s, rng);
        REQUIRE(inv.size() >= 10000);
        for (int sym = 0; sym < 3; ++sym)
            CHECK(freq_of(inv, sym) == doctest::Approx(ginv.morph(0, sym)).epsilon(0.1));
    }
}

TEST_CASE("stream summation") {
    SUBCASE("identical inputs pass through") {
        SeededRng gen(13);
        SymbolStream s = fwn_stream(Alphabet(2), 1000, gen);
        CHECK(sum_streams(s, s) == s);
    }
    SUBCASE("hand trace: 0101 + 0011 = 01") {
        auto s1 = SymbolStream::from_text(Alphabet(2), "0101");
        auto s2 = SymbolStream::from_text(Alphabet(2), "0011");
        CHECK(sum_streams(s1, s2).to_text() == "01");
    }
    SUBCASE("alphabet mismatch") {
        SymbolStream s1(Alphabet(2)), s2(Alphabet(3));
        CHECK_THROWS_AS(sum_streams(s1, s2), std::invalid_argument);
    }
    SUBCASE("stream from G annihilates an anti-stream of G") {
        Pfsa g = two_state_machine();
        SeededRng gen1(14), gen2(15), rng(16);
        SymbolStream s1 = g.sample(1000000, gen1);
        SymbolStream s2 = g.sample(1000000, gen2);
        SymbolStream residue = sum_streams(s1, invert_stream(s2, rng));
        const int depth = depth_for_epsilon(0.01, Alphabet(2));
        CHECK(zeta_hat(residue, depth) <= 0.05);
    }
}

TEST_CASE("expected length contraction of summation") {
    // E|sum| = sum_i p_i q_i * min length for independent inputs.
    SeededRng gen1(17), gen2(18);
    const std::size_t n = 200000;
    SymbolStream s1 = model_a().sample(n, gen1);   // p = (0.7, 0.3)
    SymbolStream s2 = model_b().sample(n, gen2);   // q = (0.9, 0.1)
    const double match = 0.7 * 0.9 + 0.3 * 0.1;
    SymbolStream out = sum_streams(s1, s2);
    const double sd = std::sqrt(n * match * (1 - match));
    CHECK(std::abs(double(out.size()) - match * n) < 3 * sd);
}

TEST_CASE("annihilation efficiency shows up in pipeline shrinkage") {
    for (int k : {2, 3}) {
        SeededRng gen(19 + k), rng_c(20 + k), rng_i(21 + k);
        const std::size_t n = 300000;
        SymbolStream s = fwn_stream(Alphabet(k), n, gen);
        SymbolStream out =
            sum_streams(independent_copy(s, rng_c), invert_stream(s, rng_i));
        const double beta = annihilation_efficiency(uniform_vector(Alphabet(k)));
        CHECK(double(out.size()) / double(n) == doctest::Approx(beta).epsilon(0.1));
    }
}

TEST_CASE("distinct models stay distinct through the pipeline") {
    SeededRng ga1(22), ga2(23), gb(24), r1(25), r2(26);
    const std::size_t n = 10000;
    SymbolStream a1 = model_a().sample(n, ga1);
    SymbolStream a2 = model_a().sample(n, ga2);
    SymbolStream b = model_b().sample(n, gb);
    const int depth = depth_for_epsilon(0.05, Alphabet(2));
    const double self = zeta_hat(sum_streams(a1, invert_stream(a2, r1)), depth);
    const double cross = zeta_hat(sum_streams(a1, invert_stream(b, r2)), depth);
    CHECK(cross >= 5.0 * self);
}
