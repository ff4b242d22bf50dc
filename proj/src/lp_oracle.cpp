#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "genipm/ipm.hpp"

namespace genipm {

namespace {

struct Node {
    std::array<double, 2> x{0.0, 0.0};
    double net = 0.0;  // P mass minus Q mass
};

double node_dist(const std::array<double, 2>& a, const std::array<double, 2>& b, std::size_t D) {
    double s = 0.0;
    for (std::size_t t = 0; t < D; ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
    return std::sqrt(s);
}

// maximize c.g subject to A g <= b, g >= 0, all b >= 0 (slack basis start).
// Returns the optimal g. Dantzig pricing with a Bland fallback on long
// degenerate runs; throws on iteration overrun or unboundedness.
std::vector<double> simplex_max(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                                const std::vector<double>& b) {
    const std::size_t m = A.size(), n = c.size();
    const std::size_t width = n + m + 1;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(width, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1.0;
        T[i][width - 1] = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    long degenerate_run = 0;
    bool bland = false;
    for (long iter = 0; iter < 200000; ++iter) {
        std::size_t col = width;
        double most = -1e-9;
        for (std::size_t j = 0; j + 1 < width; ++j) {
            if (T[m][j] < most) {
                most = T[m][j];
                col = j;
                if (bland) break;
            }
        }
        if (col == width) {
            std::vector<double> g(n, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                if (basis[i] < n) g[basis[i]] = T[i][width - 1];
            return g;
        }
        std::size_t row = m + 1;
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][col] <= 1e-11) continue;
            const double r = T[i][width - 1] / T[i][col];
            if (r < ratio - 1e-12 || (r < ratio + 1e-12 && (row > m || basis[i] < basis[row])))
                ratio = r, row = i;
        }
        if (row > m) throw std::runtime_error("brute_lp_oracle: unbounded relaxation");
        const double piv = T[row][col];
        for (double& t : T[row]) t /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double f = T[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
        if (ratio <= 1e-12) {
            if (++degenerate_run > 5000) bland = true;
        } else {
            degenerate_run = 0;
            bland = false;
        }
    }
    throw std::runtime_error("brute_lp_oracle: simplex iteration cap hit");
}

}  // namespace

double brute_lp_oracle(const DiscreteMeasure& P, const DiscreteMeasure& Q, double h) {
    const std::size_t D = P.dim();
    if (Q.dim() != D) throw std::invalid_argument("brute_lp_oracle: dimension mismatch");
    if (D > 2) throw std::length_error("brute_lp_oracle: capped at D <= 2");
    if (P.size() > 30 || Q.size() > 30)
        throw std::length_error("brute_lp_oracle: capped at 30 support points per side");
    if (!(h > 0.0)) throw std::invalid_argument("brute_lp_oracle: grid step must be positive");

    // snap both supports onto the origin-anchored lattice of pitch h
    std::map<std::array<long, 2>, double> net;
    const auto snap = [&](const AmbientPoint& p) {
        std::array<long, 2> key{0, 0};
        for (std::size_t t = 0; t < D; ++t) key[t] = std::lround(p.coords[t] / h);
        return key;
    };
    for (std::size_t i = 0; i < P.size(); ++i) net[snap(P.point(i))] += P.weight(i);
    for (std::size_t i = 0; i < Q.size(); ++i) net[snap(Q.point(i))] -= Q.weight(i);

    std::vector<Node> nodes;
    std::array<long, 2> lo{0, 0}, hi{0, 0};
    bool first = true;
    for (const auto& [key, w] : net) {
        Node nd;
        for (std::size_t t = 0; t < D; ++t) nd.x[t] = static_cast<double>(key[t]) * h;
        nd.net = w;
        nodes.push_back(nd);
        for (std::size_t t = 0; t < D; ++t) {
            lo[t] = first ? key[t] : std::min(lo[t], key[t]);
            hi[t] = first ? key[t] : std::max(hi[t], key[t]);
        }
        first = false;
    }
    const std::size_t s = nodes.size();
    if (s == 1) return 0.0;

    double diam = 0.0;
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = a + 1; b < s; ++b)
            diam = std::max(diam, node_dist(nodes[a].x, nodes[b].x, D));
    const double shift = diam + 1.0;

    // variables g_a = f_a + shift >= 0; pairwise Lipschitz rows plus box rows
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    A.reserve(s * (s - 1) + s);
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t bn = 0; bn < s; ++bn) {
            if (a == bn) continue;
            std::vector<double> row(s, 0.0);
            row[a] = 1.0;
            row[bn] = -1.0;
            A.push_back(std::move(row));
            b.push_back(node_dist(nodes[a].x, nodes[bn].x, D));
        }
    }
    for (std::size_t a = 0; a < s; ++a) {
        std::vector<double> row(s, 0.0);
        row[a] = 1.0;
        A.push_back(std::move(row));
        b.push_back(2.0 * shift);
    }
    std::vector<double> c(s);
    for (std::size_t a = 0; a < s; ++a) c[a] = nodes[a].net;

    const auto g = simplex_max(c, A, b);
    std::vector<double> f(s);
    for (std::size_t a = 0; a < s; ++a) f[a] = g[a] - shift;
    double value = 0.0;
    for (std::size_t a = 0; a < s; ++a) value += nodes[a].net * f[a];

    // extend to the whole lattice box and recheck feasibility on every pair
    std::array<long, 2> span{1, 1};
    std::size_t total = 1;
    for (std::size_t t = 0; t < D; ++t) {
        lo[t] -= 1;
        hi[t] += 1;
        span[t] = hi[t] - lo[t] + 1;
        total *= static_cast<std::size_t>(span[t]);
    }
    if (total > 3000) throw std::length_error("brute_lp_oracle: lattice too large for verification");

    std::vector<std::array<double, 2>> gx(total);
    std::vector<double> gf(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::array<double, 2> x{0.0, 0.0};
        std::size_t rem = idx;
        for (std::size_t t = 0; t < D; ++t) {
            x[t] = static_cast<double>(lo[t] + static_cast<long>(rem % span[t])) * h;
            rem /= static_cast<std::size_t>(span[t]);
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < s; ++a)
            best = std::min(best, f[a] + node_dist(x, nodes[a].x, D));
        gx[idx] = x;
        gf[idx] = best;
    }
    for (std::size_t a = 0; a < s; ++a) {
        std::size_t idx = 0, mul = 1;
        for (std::size_t t = 0; t < D; ++t) {
            idx += static_cast<std::size_t>(std::lround(nodes[a].x[t] / h) - lo[t]) * mul;
            mul *= static_cast<std::size_t>(span[t]);
        }
        if (std::abs(gf[idx] - f[a]) > 1e-7)
            throw std::logic_error("brute_lp_oracle: extension disagrees on a support node");
    }
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t bn = a + 1; bn < total; ++bn)
            if (std::abs(gf[a] - gf[bn]) > node_dist(gx[a], gx[bn], D) + 1e-7)
                throw std::logic_error("brute_lp_oracle: extension violates a Lipschitz pair");
    return value;
}

}  // namespace genipm
