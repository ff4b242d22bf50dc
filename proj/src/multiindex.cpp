#include "genipm/multiindex.hpp"

#include <stdexcept>

namespace genipm {

int MultiIndex::order() const {
    int s = 0;
    for (int e : entries) {
        if (e < 0) throw std::invalid_argument("multi-index: negative entry");
        s += e;
    }
    return s;
}

std::uint64_t factorial_u64(int n) {
    if (n < 0 || n > 20) throw std::overflow_error("factorial: argument outside [0, 20]");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t MultiIndex::factorial() const {
    if (order() > 20) throw std::overflow_error("multi-index factorial: order above 20");
    std::uint64_t f = 1;
    for (int e : entries) f *= factorial_u64(e);
    return f;
}

namespace {

constexpr std::size_t kEnumerationCap = 2000000;

void enumerate_rec(std::size_t pos, int budget, MultiIndex& cur,
                   std::vector<MultiIndex>& out) {
    if (out.size() > kEnumerationCap)
        throw std::length_error("enumerate_multiindices: cap exceeded");
    if (pos + 1 == cur.entries.size()) {
        for (int v = 0; v <= budget; ++v) {
            cur.entries[pos] = v;
            out.push_back(cur);
        }
        cur.entries[pos] = 0;
        return;
    }
    for (int v = 0; v <= budget; ++v) {
        cur.entries[pos] = v;
        enumerate_rec(pos + 1, budget - v, cur, out);
    }
    cur.entries[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(std::size_t d, int max_order, bool include_zero) {
    if (d == 0 || max_order < 0)
        throw std::invalid_argument("enumerate_multiindices: need d >= 1, order >= 0");
    std::vector<MultiIndex> out;
    MultiIndex cur;
    cur.entries.assign(d, 0);
    enumerate_rec(0, max_order, cur, out);
    if (!include_zero) out.erase(out.begin());  // the zero index is first in lex order
    return out;
}

std::vector<MultiIndex> lower_multiindices(const MultiIndex& gamma) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    cur.entries.assign(gamma.dims(), 0);
    // odometer over the box [0, gamma], lex order, skipping zero
    while (true) {
        std::size_t pos = gamma.dims();
        while (pos-- > 0) {
            if (cur.entries[pos] < gamma.entries[pos]) {
                ++cur.entries[pos];
                for (std::size_t t = pos + 1; t < gamma.dims(); ++t) cur.entries[t] = 0;
                break;
            }
            if (pos == 0) return out;
        }
        out.push_back(cur);
        if (out.size() > kEnumerationCap)
            throw std::length_error("lower_multiindices: cap exceeded");
    }
}

namespace {

void r_set_rec(const std::vector<MultiIndex>& beta, std::size_t j, MultiIndex& remaining,
               int budget, std::vector<int>& rho, std::vector<std::vector<int>>& out) {
    if (j == beta.size()) {
        if (budget == 0 && remaining.is_zero()) out.push_back(rho);
        return;
    }
    // max multiplicity of beta(j) that still fits inside `remaining`
    int cap = budget;
    for (std::size_t t = 0; t < remaining.dims(); ++t)
        if (beta[j].entries[t] > 0)
            cap = std::min(cap, remaining.entries[t] / beta[j].entries[t]);
    for (int v = 0; v <= cap; ++v) {
        rho.push_back(v);
        for (std::size_t t = 0; t < remaining.dims(); ++t)
            remaining.entries[t] -= v * beta[j].entries[t];
        r_set_rec(beta, j + 1, remaining, budget - v, rho, out);
        for (std::size_t t = 0; t < remaining.dims(); ++t)
            remaining.entries[t] += v * beta[j].entries[t];
        rho.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> r_set(const MultiIndex& gamma, int a) {
    if (a < 0) throw std::invalid_argument("r_set: negative part count");
    const auto beta = lower_multiindices(gamma);
    std::vector<std::vector<int>> out;
    if (beta.empty()) {
        // gamma = 0: rho lives in N^0, and the empty vector works iff a = 0
        if (a == 0) out.push_back({});
        return out;
    }
    std::vector<int> rho;
    MultiIndex remaining = gamma;
    r_set_rec(beta, 0, remaining, a, rho, out);
    return out;
}

}  // namespace genipm
