#include "smash/annihilation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "smash/stream_ops.hpp"

namespace smash {

int depth_for_epsilon(double epsilon_star, const Alphabet& a) {
    if (epsilon_star <= 0.0 || epsilon_star >= 1.0)
        throw std::invalid_argument("epsilon_star must be in (0,1)");
    const double raw = std::log(1.0 / epsilon_star) / std::log(double(a.size()));
    int depth = static_cast<int>(std::ceil(raw - 1e-9));
    return std::clamp(depth, 1, kMaxDepth);
}

int SmashConfig::depth_for(const Alphabet& a) const {
    if (depth) {
        if (*depth < 1 || *depth > kMaxDepth)
            throw std::invalid_argument("depth must be in [1, 12]");
        return *depth;
    }
    return depth_for_epsilon(epsilon_star, a);
}

double annihilation_efficiency(const ProbVector& p) {
    double sum = 0.0, prod = 1.0;
    for (double x : p) {
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("not a probability vector");
        sum += x;
        prod *= x;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("probabilities must sum to 1");
    double fact = 1.0;
    for (std::size_t i = 2; i < p.size(); ++i) fact *= static_cast<double>(i);
    return fact * prod;
}

double zeta_hat(const NGramCounts& counts, int depth) {
    if (counts.stream_length() == 0)
        throw std::invalid_argument("zeta_hat: insufficient data (empty stream)");
    if (depth < 0 || depth + 1 > counts.max_depth())
        throw std::invalid_argument("zeta_hat: depth exceeds counted depth");
    const int k = counts.alphabet().size();
    const ProbVector uniform = uniform_vector(counts.alphabet());

    // Per-depth weights 1 / k^(2|x|); only substrings present in the stream can
    // have nonzero follower counts, so iterating the count map suffices.
    std::vector<double> weights(depth + 1);
    weights[0] = 1.0;
    for (int d = 1; d <= depth; ++d) weights[d] = weights[d - 1] / (double(k) * k);

    double acc = 0.0;
    if (auto phi = symbolic_derivative_key(counts, 1, 0))  // empty history
        acc += linf_distance(*phi, uniform);
    for (const auto& [key, cnt] : counts.raw()) {
        const int len = NGramCounts::unpack_length(key, k);
        if (len == 0 || len > depth) continue;
        if (auto phi = symbolic_derivative_key(counts, key, len))
            acc += weights[len] * linf_distance(*phi, uniform);
    }
    return (k - 1.0) / k * acc;
}

double zeta_hat(const SymbolStream& s, int depth) {
    if (s.empty()) throw std::invalid_argument("zeta_hat: insufficient data (empty stream)");
    return zeta_hat(count_ngrams(s, depth + 1), depth);
}

namespace {

// Lanes keep the three circuit pipelines on disjoint random substreams.
enum Lane : std::uint64_t { kSelf1 = 1, kSelf2 = 2, kCross = 3 };

std::pair<double, std::size_t> pipeline_error(const SymbolStream& out, int depth) {
    if (out.empty()) return {1.0, 0};
    return {zeta_hat(out, depth), out.size()};
}

}  // namespace

std::pair<double, std::size_t> self_annihilation(const SymbolStream& s, const SmashConfig& cfg) {
    if (s.empty()) throw std::invalid_argument("self_annihilation: empty stream");
    const int depth = cfg.depth_for(s.alphabet());
    SeededRng copy_rng(derive_seed(cfg.seed, kSelf1));
    SeededRng inv_rng(derive_seed(cfg.seed, kSelf2));
    SymbolStream copied = independent_copy(s, copy_rng);
    SymbolStream inverted = invert_stream(s, inv_rng);
    return pipeline_error(sum_streams(copied, inverted), depth);
}

std::pair<double, std::size_t> cross_annihilation(const SymbolStream& s1,
                                                  const SymbolStream& s2,
                                                  const SmashConfig& cfg) {
    if (!(s1.alphabet() == s2.alphabet()))
        throw std::invalid_argument("cross_annihilation: alphabet mismatch");
    if (s1.empty() || s2.empty())
        throw std::invalid_argument("cross_annihilation: empty stream");
    const int depth = cfg.depth_for(s1.alphabet());
    SeededRng inv_rng(derive_seed(cfg.seed, kCross));
    SymbolStream inverted = invert_stream(s2, inv_rng);
    return pipeline_error(sum_streams(s1, inverted), depth);
}

SmashResult smash(const SymbolStream& s1, const SymbolStream& s2, const SmashConfig& cfg) {
    if (!(s1.alphabet() == s2.alphabet()))
        throw std::invalid_argument("smash: alphabet mismatch");
    if (s1.empty() || s2.empty()) throw std::invalid_argument("smash: empty stream");

    SmashConfig c1 = cfg;
    c1.seed = derive_seed(cfg.seed, 11);
    SmashConfig c2 = cfg;
    c2.seed = derive_seed(cfg.seed, 12);
    SmashConfig cx = cfg;
    cx.seed = derive_seed(cfg.seed, 13);

    SmashResult r;
    auto [e11, n11] = self_annihilation(s1, c1);
    auto [e22, n22] = self_annihilation(s2, c2);
    auto [e12, n12] = cross_annihilation(s1, s2, cx);
    r.eps11 = e11;
    r.eps22 = e22;
    r.eps12 = e12;
    r.output_lengths = {n11, n22, n12};
    r.sufficient1 = n11 >= cfg.min_output_symbols && e11 <= cfg.epsilon_star;
    r.sufficient2 = n22 >= cfg.min_output_symbols && e22 <= cfg.epsilon_star;
    r.same_source = r.sufficient1 && r.sufficient2 && n12 >= cfg.min_output_symbols &&
                    e12 <= cfg.epsilon_star;
    return r;
}

namespace {

std::uint64_t content_hash(const SymbolStream& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t sym : s.symbols()) {
        h ^= sym;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void run_parallel(std::size_t n_tasks, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_workers = std::min<std::size_t>(threads, n_tasks);
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t t = next.fetch_add(1);
                if (t >= n_tasks) return;
                fn(t);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace

DistanceMatrices distance_matrix(const std::vector<SymbolStream>& streams,
                                 const SmashConfig& cfg, int threads, bool order_invariant) {
    const std::size_t t = streams.size();
    if (t < 2) throw std::invalid_argument("distance_matrix: need at least 2 streams");
    for (const auto& s : streams) {
        if (!(s.alphabet() == streams.front().alphabet()))
            throw std::invalid_argument("distance_matrix: alphabet mismatch");
        if (s.empty()) throw std::invalid_argument("distance_matrix: empty stream");
    }

    std::vector<std::uint64_t> ids(t);
    for (std::size_t i = 0; i < t; ++i)
        ids[i] = order_invariant ? content_hash(streams[i]) : i;

    DistanceMatrices out;
    out.E.assign(t, std::vector<double>(t, 0.0));
    out.H.assign(t, std::vector<double>(t, 0.0));
    out.mask.assign(t, std::vector<int>(t, 0));

    // Task list: t self cells followed by the t*(t-1) ordered cross cells.
    struct Task {
        std::size_t i, j;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < t; ++i) tasks.push_back({i, i});
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
            if (i != j) tasks.push_back({i, j});

    run_parallel(tasks.size(), threads, [&](std::size_t ti) {
        const auto [i, j] = tasks[ti];
        SmashConfig cell = cfg;
        cell.seed = derive_seed(derive_seed(cfg.seed, ids[i]), i == j ? ids[i] : ids[j]);
        if (i == j) {
            auto [e, n] = self_annihilation(streams[i], cell);
            out.E[i][i] = e;
            out.mask[i][i] = n >= cfg.min_output_symbols ? 1 : 0;
        } else {
            auto [e, n] = cross_annihilation(streams[i], streams[j], cell);
            out.E[i][j] = e;
            out.mask[i][j] = n >= cfg.min_output_symbols ? 1 : 0;
        }
    });

    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
            if (i != j) out.H[i][j] = 0.5 * (out.E[i][j] + out.E[j][i]);
    return out;
}

}  // namespace smash
