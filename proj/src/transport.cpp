#include "genipm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace genipm {

namespace {

struct Arc {
    int i, j;
    double flow;
    bool active;
};

constexpr double kReducedTol = 1e-12;

}  // namespace

double transport_cost(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    if (P.dim() != Q.dim()) throw std::invalid_argument("transport_cost: dimension mismatch");
    const int m = static_cast<int>(P.size());
    const int k = static_cast<int>(Q.size());

    std::vector<double> cost(static_cast<std::size_t>(m) * k);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j)
            cost[static_cast<std::size_t>(i) * k + j] =
                euclidean_distance(P.point(i).coords, Q.point(j).coords);
    const auto C = [&](int i, int j) { return cost[static_cast<std::size_t>(i) * k + j]; };

    // northwest-corner start: a spanning tree of m+k-1 arcs, possibly degenerate
    std::vector<Arc> arcs;
    arcs.reserve(m + k - 1);
    std::vector<int> basis_id(static_cast<std::size_t>(m) * k, -1);
    {
        int i = 0, j = 0;
        double ra = P.weight(0), rb = Q.weight(0);
        while (true) {
            const double f = std::max(0.0, std::min(ra, rb));
            basis_id[static_cast<std::size_t>(i) * k + j] = static_cast<int>(arcs.size());
            arcs.push_back({i, j, f, true});
            ra -= f;
            rb -= f;
            if (i == m - 1 && j == k - 1) break;
            if (ra <= 1e-15 && i < m - 1) {
                ++i;
                ra = P.weight(i);
            } else {
                ++j;
                rb = Q.weight(j);
            }
        }
    }

    const int nodes = m + k;  // sources 0..m-1, sinks m..m+k-1
    std::vector<double> u(m), v(k);
    std::vector<std::vector<int>> adj(nodes);
    std::vector<int> stack, parent_arc(nodes), parent_node(nodes);
    std::vector<char> seen(nodes);

    const auto rebuild_adjacency = [&] {
        for (auto& lst : adj) lst.clear();
        for (int t = 0; t < static_cast<int>(arcs.size()); ++t) {
            if (!arcs[t].active) continue;
            adj[arcs[t].i].push_back(t);
            adj[m + arcs[t].j].push_back(t);
        }
    };

    const auto compute_potentials = [&] {
        std::fill(seen.begin(), seen.end(), 0);
        u[0] = 0.0;
        seen[0] = 1;
        stack.assign(1, 0);
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            for (const int t : adj[node]) {
                const Arc& a = arcs[t];
                const int other = (node < m) ? m + a.j : a.i;
                if (seen[other]) continue;
                seen[other] = 1;
                if (node < m)
                    v[a.j] = C(a.i, a.j) - u[a.i];
                else
                    u[a.i] = C(a.i, a.j) - v[a.j];
                stack.push_back(other);
            }
        }
    };

    const long max_pivots = 400000L + 200L * static_cast<long>(m + k);
    long degenerate_run = 0;
    bool bland = false;

    for (long pivot = 0;; ++pivot) {
        if (pivot > max_pivots) throw std::runtime_error("transport_cost: pivot limit exceeded");
        rebuild_adjacency();
        compute_potentials();

        // entering arc
        int ei = -1, ej = -1;
        double best = -kReducedTol;
        for (int i = 0; i < m && !(bland && ei >= 0); ++i) {
            for (int j = 0; j < k; ++j) {
                if (basis_id[static_cast<std::size_t>(i) * k + j] >= 0) continue;
                const double r = C(i, j) - u[i] - v[j];
                if (r < best) {
                    best = r;
                    ei = i;
                    ej = j;
                    if (bland) break;
                }
            }
        }
        if (ei < 0) break;  // optimal

        // unique tree path from source ei to sink ej
        std::fill(seen.begin(), seen.end(), 0);
        seen[ei] = 1;
        parent_node[ei] = -1;
        stack.assign(1, ei);
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            if (node == m + ej) break;
            for (const int t : adj[node]) {
                const Arc& a = arcs[t];
                const int other = (node < m) ? m + a.j : a.i;
                if (seen[other]) continue;
                seen[other] = 1;
                parent_arc[other] = t;
                parent_node[other] = node;
                stack.push_back(other);
            }
        }
        if (!seen[m + ej]) throw std::logic_error("transport_cost: basis lost connectivity");

        // walk back from the sink: arcs alternate -,+,-,... after the entering +
        std::vector<int> minus_arcs, path;
        for (int node = m + ej; parent_node[node] >= 0; node = parent_node[node])
            path.push_back(parent_arc[node]);
        for (std::size_t t = 0; t < path.size(); ++t)
            if (t % 2 == 0) minus_arcs.push_back(path[t]);

        double theta = std::numeric_limits<double>::infinity();
        int leave = -1;
        for (const int t : minus_arcs) {
            if (arcs[t].flow < theta - 1e-18 || (arcs[t].flow <= theta && leave < 0)) {
                theta = arcs[t].flow;
                leave = t;
            }
        }
        // lowest arc id among the minimal-flow minus arcs, for determinism
        for (const int t : minus_arcs)
            if (arcs[t].flow <= theta + 1e-18 && t < leave) leave = t;

        for (std::size_t t = 0; t < path.size(); ++t)
            arcs[path[t]].flow += (t % 2 == 0) ? -theta : theta;

        // the entering arc takes over the leaving arc's slot
        basis_id[static_cast<std::size_t>(arcs[leave].i) * k + arcs[leave].j] = -1;
        basis_id[static_cast<std::size_t>(ei) * k + ej] = leave;
        arcs[leave] = {ei, ej, theta, true};

        if (theta <= 1e-15) {
            if (++degenerate_run > 2L * (m + k)) bland = true;
        } else {
            degenerate_run = 0;
            bland = false;
        }
    }

    double total = 0.0;
    for (const Arc& a : arcs)
        if (a.active && a.flow > 0.0) total += a.flow * C(a.i, a.j);
    return total;
}

}  // namespace genipm
