#include "smash/pfsa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace smash {

namespace {

// States reachable from `start` following delta edges (forward or reversed).
std::vector<bool> reachable_set(const std::vector<std::vector<int>>& delta, int n_states,
                                int start, bool reversed) {
    std::vector<std::vector<int>> adj(n_states);
    for (int q = 0; q < n_states; ++q)
        for (int to : delta[q]) {
            if (reversed)
                adj[to].push_back(q);
            else
                adj[q].push_back(to);
        }
    std::vector<bool> seen(n_states, false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int to : adj[q])
            if (!seen[to]) {
                seen[to] = true;
                stack.push_back(to);
            }
    }
    return seen;
}

bool strongly_connected(const std::vector<std::vector<int>>& delta, int n_states) {
    if (n_states <= 1) return true;
    auto fwd = reachable_set(delta, n_states, 0, false);
    auto bwd = reachable_set(delta, n_states, 0, true);
    for (int q = 0; q < n_states; ++q)
        if (!fwd[q] || !bwd[q]) return false;
    return true;
}

}  // namespace

Pfsa::Pfsa(Alphabet alphabet, std::vector<std::vector<int>> delta, Matrix morph)
    : alphabet_(alphabet), delta_(std::move(delta)), morph_(std::move(morph)) {
    const int k = alphabet_.size();
    if (delta_.empty() || delta_.size() != morph_.size())
        throw std::invalid_argument("pfsa: delta/morph shape mismatch");
    const int n = n_states();
    for (int q = 0; q < n; ++q) {
        if (static_cast<int>(delta_[q].size()) != k ||
            static_cast<int>(morph_[q].size()) != k)
            throw std::invalid_argument("pfsa: row width != alphabet size");
        for (int sym = 0; sym < k; ++sym)
            if (delta_[q][sym] < 0 || delta_[q][sym] >= n)
                throw std::invalid_argument("pfsa: transition target out of range");
    }
}

std::vector<std::string> Pfsa::validate() const {
    std::vector<std::string> violations;
    const int k = alphabet_.size();
    bool positive = true, stochastic = true;
    for (int q = 0; q < n_states(); ++q) {
        double row = 0.0;
        for (int sym = 0; sym < k; ++sym) {
            if (morph_[q][sym] <= 0.0) positive = false;
            row += morph_[q][sym];
        }
        if (std::abs(row - 1.0) > 1e-12) stochastic = false;
    }
    if (!positive) violations.push_back("positivity");
    if (!stochastic) violations.push_back("row sums");
    if (!strongly_connected(delta_, n_states())) violations.push_back("strong connectivity");
    return violations;
}

Matrix Pfsa::transition_matrix() const {
    const int n = n_states(), k = alphabet_.size();
    Matrix m(n, std::vector<double>(n, 0.0));
    for (int q = 0; q < n; ++q)
        for (int sym = 0; sym < k; ++sym) m[q][delta_[q][sym]] += morph_[q][sym];
    return m;
}

std::vector<Matrix> Pfsa::transformation_matrices() const {
    const int n = n_states(), k = alphabet_.size();
    std::vector<Matrix> gamma(k, Matrix(n, std::vector<double>(n, 0.0)));
    for (int q = 0; q < n; ++q)
        for (int sym = 0; sym < k; ++sym) gamma[sym][q][delta_[q][sym]] = morph_[q][sym];
    return gamma;
}

std::vector<double> Pfsa::stationary_distribution() const {
    const int n = n_states();
    if (n == 1) return {1.0};
    // Solve w (M - I) = 0 with sum(w) = 1: transpose, replace last row by ones.
    Matrix m = transition_matrix();
    Matrix a(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m[j][i] - (i == j ? 1.0 : 0.0);
    std::vector<double> b(n, 0.0);
    for (int j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    b[n - 1] = 1.0;
    std::vector<double> w = solve_dense(std::move(a), std::move(b));
    double sum = 0.0;
    for (double& x : w) {
        x = std::max(x, 0.0);
        sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
}

SymbolStream Pfsa::sample(std::size_t length, SeededRng& rng, std::optional<int> start) const {
    SymbolStream out(alphabet_);
    out.reserve(length);
    int q;
    if (start) {
        q = *start;
        if (q < 0 || q >= n_states()) throw std::invalid_argument("start state out of range");
    } else {
        const std::vector<double> w = stationary_distribution();
        double u = rng.next_double(), acc = 0.0;
        q = n_states() - 1;
        for (int i = 0; i < n_states(); ++i) {
            acc += w[i];
            if (u < acc) {
                q = i;
                break;
            }
        }
    }
    const int k = alphabet_.size();
    for (std::size_t i = 0; i < length; ++i) {
        double u = rng.next_double(), acc = 0.0;
        int sym = k - 1;
        for (int j = 0; j < k; ++j) {
            acc += morph_[q][j];
            if (u < acc) {
                sym = j;
                break;
            }
        }
        out.push_back(sym);
        q = delta_[q][sym];
    }
    return out;
}

Pfsa zero_model(const Alphabet& a) {
    const int k = a.size();
    return Pfsa(a, {std::vector<int>(k, 0)}, {std::vector<double>(k, 1.0 / k)});
}

namespace {

struct Product {
    std::vector<std::vector<int>> delta;
    std::vector<std::pair<int, int>> pairs;  // product state -> (q1, q2)
};

// Reachable synchronous product from (0, 0), trimmed to the terminal strongly
// connected component so the result stays a valid strongly connected machine.
Product reachable_product(const Pfsa& g1, const Pfsa& g2) {
    const int k = g1.alphabet().size();
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> delta;
    std::vector<std::pair<int, int>> todo{{0, 0}};
    index[{0, 0}] = 0;
    pairs.push_back({0, 0});
    while (!todo.empty()) {
        auto [q1, q2] = todo.back();
        todo.pop_back();
        int from = index.at({q1, q2});
        if (static_cast<int>(delta.size()) <= from) delta.resize(from + 1);
        delta[from].resize(k);
        for (int sym = 0; sym < k; ++sym) {
            std::pair<int, int> to{g1.next_state(q1, sym), g2.next_state(q2, sym)};
            auto it = index.find(to);
            if (it == index.end()) {
                it = index.emplace(to, static_cast<int>(pairs.size())).first;
                pairs.push_back(to);
                todo.push_back(to);
            }
            delta[from][sym] = it->second;
        }
    }
    delta.resize(pairs.size());
    for (auto& row : delta) row.resize(k);

    // Walk the condensation until we land in a terminal SCC, then keep it.
    const int n = static_cast<int>(pairs.size());
    int probe = 0;
    for (;;) {
        auto fwd = reachable_set(delta, n, probe, false);
        auto bwd = reachable_set(delta, n, probe, true);
        int escape = -1;
        for (int q = 0; q < n && escape < 0; ++q)
            if (fwd[q] && !bwd[q]) escape = q;  // reachable but cannot return
        if (escape < 0) {
            // Terminal SCC found: keep exactly the states in it.
            std::vector<int> remap(n, -1);
            Product out;
            for (int q = 0; q < n; ++q)
                if (fwd[q] && bwd[q]) {
                    remap[q] = static_cast<int>(out.pairs.size());
                    out.pairs.push_back(pairs[q]);
                }
            out.delta.resize(out.pairs.size(), std::vector<int>(k));
            for (int q = 0; q < n; ++q)
                if (remap[q] >= 0)
                    for (int sym = 0; sym < k; ++sym)
                        out.delta[remap[q]][sym] = remap[delta[q][sym]];
            return out;
        }
        probe = escape;
    }
}

}  // namespace

Pfsa synchronous_compose(const Pfsa& g1, const Pfsa& g2) {
    if (!(g1.alphabet() == g2.alphabet()))
        throw std::invalid_argument("synchronous_compose: alphabet mismatch");
    Product p = reachable_product(g1, g2);
    Matrix morph(p.pairs.size());
    for (std::size_t i = 0; i < p.pairs.size(); ++i)
        morph[i] = g1.morph_matrix()[p.pairs[i].first];
    return Pfsa(g1.alphabet(), std::move(p.delta), std::move(morph));
}

Pfsa add(const Pfsa& g1, const Pfsa& g2) {
    if (!(g1.alphabet() == g2.alphabet()))
        throw std::invalid_argument("add: alphabet mismatch");
    const int k = g1.alphabet().size();
    // (G1 (x) G2) and (G2 (x) G1) share the product structure; the sum's morph
    // row at (q1, q2) is the normalized elementwise product of the components.
    Product p = reachable_product(g1, g2);
    Matrix morph(p.pairs.size(), std::vector<double>(k));
    for (std::size_t i = 0; i < p.pairs.size(); ++i) {
        auto [q1, q2] = p.pairs[i];
        double norm = 0.0;
        for (int sym = 0; sym < k; ++sym) {
            morph[i][sym] = g1.morph(q1, sym) * g2.morph(q2, sym);
            norm += morph[i][sym];
        }
        for (int sym = 0; sym < k; ++sym) morph[i][sym] /= norm;
    }
    return Pfsa(g1.alphabet(), std::move(p.delta), std::move(morph));
}

Pfsa invert(const Pfsa& g) {
    const int k = g.alphabet().size();
    Matrix morph = g.morph_matrix();
    for (auto& row : morph) {
        double norm = 0.0;
        for (double& e : row) {
            e = 1.0 / e;
            norm += e;
        }
        for (double& e : row) e /= norm;
    }
    return Pfsa(g.alphabet(), g.delta(), std::move(morph));
}

Matrix pseudo_copy(const Pfsa& g, double gamma) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("pseudo_copy: gamma must be in (0,1)");
    const Matrix m = g.transition_matrix();
    const int n = g.n_states();
    Matrix a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = (i == j ? 1.0 : 0.0) - (1.0 - gamma) * m[i][j];
    Matrix out = mat_mul(invert_dense(a), m);
    for (auto& row : out)
        for (double& e : row) e *= gamma;
    return out;
}

namespace {

struct ThetaWalk {
    const Pfsa& g1;
    const Pfsa& g2;
    std::vector<Matrix> gamma1, gamma2;
    int max_depth;
    double acc = 0.0;

    ThetaWalk(const Pfsa& a, const Pfsa& b, int depth)
        : g1(a), g2(b), gamma1(a.transformation_matrices()),
          gamma2(b.transformation_matrices()), max_depth(depth) {}

    void recurse(const std::vector<double>& p1, const std::vector<double>& p2, int depth,
                 double weight) {
        const std::vector<double> d1 = next_symbol_dist(p1, g1);
        const std::vector<double> d2 = next_symbol_dist(p2, g2);
        acc += weight * linf_distance(d1, d2);
        if (depth == max_depth) return;
        const int k = g1.alphabet().size();
        const double child_weight = weight / (double(k) * k);
        for (int sym = 0; sym < k; ++sym)
            recurse(advance(p1, gamma1[sym]), advance(p2, gamma2[sym]), depth + 1,
                    child_weight);
    }

    static std::vector<double> next_symbol_dist(const std::vector<double>& p, const Pfsa& g) {
        return vec_mat(p, g.morph_matrix());
    }

    static std::vector<double> advance(const std::vector<double>& p, const Matrix& gamma) {
        std::vector<double> q = vec_mat(p, gamma);
        double norm = 0.0;
        for (double x : q) norm += x;
        for (double& x : q) x /= norm;
        return q;
    }
};

}  // namespace

double theta_distance(const Pfsa& g1, const Pfsa& g2, int depth) {
    if (!(g1.alphabet() == g2.alphabet()))
        throw std::invalid_argument("theta_distance: alphabet mismatch");
    if (depth < 0 || depth > 12)
        throw std::invalid_argument("theta_distance: depth must be in [0, 12]");
    ThetaWalk walk(g1, g2, depth);
    walk.recurse(g1.stationary_distribution(), g2.stationary_distribution(), 0, 1.0);
    const double k = g1.alphabet().size();
    return (k - 1.0) / k * walk.acc;
}

Pfsa read_pfsa(std::istream& in) {
    std::string line;
    int k = -1, n = -1;
    std::vector<std::vector<int>> delta;
    Matrix morph;
    std::vector<std::vector<bool>> seen;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("pfsa line " + std::to_string(lineno) + ": " + msg);
        };
        if (first == "alphabet") {
            if (!(ls >> k) || k < 2) fail("bad alphabet size");
        } else if (first == "states") {
            if (k < 0) fail("'states' before 'alphabet'");
            if (!(ls >> n) || n < 1) fail("bad state count");
            delta.assign(n, std::vector<int>(k, -1));
            morph.assign(n, std::vector<double>(k, 0.0));
            seen.assign(n, std::vector<bool>(k, false));
        } else {
            if (n < 0) fail("transition before header");
            int from, sym, to;
            double prob;
            std::istringstream row(line);
            if (!(row >> from >> sym >> to >> prob)) fail("expected 'from sym to prob'");
            if (from < 0 || from >= n || to < 0 || to >= n) fail("state out of range");
            if (sym < 0 || sym >= k) fail("symbol out of range");
            if (seen[from][sym]) fail("duplicate transition");
            seen[from][sym] = true;
            delta[from][sym] = to;
            morph[from][sym] = prob;
        }
    }
    if (n < 0) throw std::invalid_argument("pfsa file: missing header");
    for (int q = 0; q < n; ++q)
        for (int sym = 0; sym < k; ++sym)
            if (!seen[q][sym])
                throw std::invalid_argument("pfsa file: missing transition for state " +
                                            std::to_string(q) + " symbol " +
                                            std::to_string(sym));
    return Pfsa(Alphabet(k), std::move(delta), std::move(morph));
}

Pfsa read_pfsa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pfsa file: " + path);
    return read_pfsa(in);
}

void write_pfsa(std::ostream& out, const Pfsa& g) {
    out << "alphabet " << g.alphabet().size() << "\n";
    out << "states " << g.n_states() << "\n";
    out.precision(17);
    for (int q = 0; q < g.n_states(); ++q)
        for (int sym = 0; sym < g.alphabet().size(); ++sym)
            out << q << ' ' << sym << ' ' << g.next_state(q, sym) << ' ' << g.morph(q, sym)
                << "\n";
}

void write_pfsa_file(const std::string& path, const Pfsa& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_pfsa(out, g);
}

}  // namespace smash
