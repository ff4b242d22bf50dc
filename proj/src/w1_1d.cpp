#include "genipm/w1_1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace genipm {

namespace {

void require_1d(const DiscreteMeasure& P) {
    if (P.dim() != 1) throw std::invalid_argument("w1_exact_1d: needs 1-D measures");
}

}  // namespace

double w1_exact_1d(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    require_1d(P);
    require_1d(Q);

    struct Event {
        double x;
        double wp;
        double wq;
    };
    std::vector<Event> ev;
    ev.reserve(P.size() + Q.size());
    for (std::size_t i = 0; i < P.size(); ++i) ev.push_back({P.point(i).coords[0], P.weight(i), 0.0});
    for (std::size_t i = 0; i < Q.size(); ++i) ev.push_back({Q.point(i).coords[0], 0.0, Q.weight(i)});
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

    double total = 0.0, fp = 0.0, fq = 0.0, prev = ev.front().x;
    for (const Event& e : ev) {
        total += std::abs(fp - fq) * (e.x - prev);
        fp += e.wp;
        fq += e.wq;
        prev = e.x;
    }
    return total;
}

double w1_interval_interval(double lo1, double hi1, double lo2, double hi2) {
    if (!(hi1 >= lo1) || !(hi2 >= lo2)) throw std::invalid_argument("w1_interval_interval: bad interval");
    // quantile difference is A + B t on t in [0,1]
    const double A = lo1 - lo2;
    const double B = (hi1 - lo1) - (hi2 - lo2);
    if (std::abs(B) < 1e-300) return std::abs(A);
    const double t = -A / B;
    const auto seg = [&](double t0, double t1) {
        return std::abs(A * (t1 - t0) + 0.5 * B * (t1 * t1 - t0 * t0));
    };
    if (t <= 0.0 || t >= 1.0) return seg(0.0, 1.0);
    return seg(0.0, t) + seg(t, 1.0);
}

double w1_exact_1d_vs_interval(const DiscreteMeasure& P, double lo, double hi) {
    require_1d(P);
    if (!(hi > lo)) throw std::invalid_argument("w1_exact_1d: empty interval");

    std::vector<std::pair<double, double>> atoms;  // (position, weight)
    atoms.reserve(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) atoms.emplace_back(P.point(i).coords[0], P.weight(i));
    std::sort(atoms.begin(), atoms.end());

    std::vector<double> bp;
    bp.reserve(atoms.size() + 2);
    bp.push_back(lo);
    bp.push_back(hi);
    for (const auto& a : atoms) bp.push_back(a.first);
    std::sort(bp.begin(), bp.end());

    const double width = hi - lo;
    const auto fu = [&](double x) { return std::clamp((x - lo) / width, 0.0, 1.0); };

    double total = 0.0, fp = 0.0;
    std::size_t ai = 0;
    for (std::size_t t = 0; t + 1 < bp.size(); ++t) {
        while (ai < atoms.size() && atoms[ai].first <= bp[t]) fp += atoms[ai++].second;
        const double len = bp[t + 1] - bp[t];
        if (len <= 0.0) continue;
        // lo and hi are breakpoints, so the uniform CDF is linear on this segment
        const double v0 = fp - fu(bp[t]);
        const double v1 = fp - fu(bp[t + 1]);
        if (v0 * v1 >= 0.0) {
            total += 0.5 * (std::abs(v0) + std::abs(v1)) * len;
        } else {
            const double len0 = len * std::abs(v0) / (std::abs(v0) + std::abs(v1));
            total += 0.5 * (std::abs(v0) * len0 + std::abs(v1) * (len - len0));
        }
    }
    return total;
}

}  // namespace genipm
