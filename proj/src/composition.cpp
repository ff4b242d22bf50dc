#include "genipm/composition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace genipm {

namespace {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

constexpr double kPi = 3.14159265358979323846;

bigint ipow(bigint base, int e) {
    bigint r = 1;
    for (int t = 0; t < e; ++t) r *= base;
    return r;
}

// {0 <= beta <= gamma} in lex order: the zero index followed by the positives
std::vector<MultiIndex> box_multiindices(const MultiIndex& gamma) {
    std::vector<MultiIndex> out;
    MultiIndex zero;
    zero.entries.assign(gamma.dims(), 0);
    out.push_back(zero);
    auto rest = lower_multiindices(gamma);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

// S(gamma, a) = sum over rho in R(gamma, a) of 1/rho! * prod_j (1/beta(j)!)^rho_j
const rational& s_value(const MultiIndex& gamma, int a) {
    static std::map<std::pair<std::vector<int>, int>, rational> memo;
    const auto key = std::make_pair(gamma.entries, a);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    rational total = 0;
    if (gamma.is_zero()) {
        total = (a == 0) ? 1 : 0;
    } else if (a > 0) {
        const auto betas = lower_multiindices(gamma);
        for (const auto& rho : r_set(gamma, a)) {
            bigint denom = 1;
            for (std::size_t j = 0; j < rho.size(); ++j) {
                denom *= bigint(factorial_u64(rho[j]));
                denom *= ipow(bigint(betas[j].factorial()), rho[j]);
            }
            total += rational(1, denom);
        }
    }
    return memo.emplace(key, std::move(total)).first->second;
}

// all ordered D-tuples of multi-indices summing to k
void splits_rec(std::size_t m, std::size_t D, MultiIndex& remaining,
                std::vector<MultiIndex>& cur,
                const std::function<void(const std::vector<MultiIndex>&)>& emit) {
    if (m + 1 == D) {
        cur.push_back(remaining);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (const auto& gamma : box_multiindices(remaining)) {
        cur.push_back(gamma);
        for (std::size_t t = 0; t < remaining.dims(); ++t)
            remaining.entries[t] -= gamma.entries[t];
        splits_rec(m + 1, D, remaining, cur, emit);
        for (std::size_t t = 0; t < remaining.dims(); ++t)
            remaining.entries[t] += gamma.entries[t];
        cur.pop_back();
    }
}

void for_each_split(const MultiIndex& k, std::size_t D,
                    const std::function<void(const std::vector<MultiIndex>&)>& emit) {
    MultiIndex remaining = k;
    std::vector<MultiIndex> cur;
    cur.reserve(D);
    splits_rec(0, D, remaining, cur, emit);
}

}  // namespace

CompositionBound composition_constant(std::size_t D, std::size_t d, int alpha) {
    if (D == 0 || d == 0) throw std::invalid_argument("composition_constant: need D, d >= 1");
    if (alpha < 0 || alpha > 12)
        throw std::overflow_error("composition_constant: alpha outside [0, 12]");
    if (D > 8 || d > 8) throw std::overflow_error("composition_constant: dimensions above 8");

    CompositionBound out;
    out.D = D;
    out.d = d;
    out.alpha = alpha;
    if (alpha == 0) {
        out.value = 1.0;
        out.exact = "1";
        return out;
    }

    rational best = 0;
    for (const auto& k : enumerate_multiindices(d, alpha, false)) {
        const auto as = enumerate_multiindices(D, k.order(), false);
        rational inner = 0;
        for_each_split(k, D, [&](const std::vector<MultiIndex>& split) {
            for (const auto& a : as) {
                rational prod = 1;
                for (std::size_t m = 0; m < D && prod != 0; ++m)
                    prod *= s_value(split[m], a.entries[m]);
                inner += prod;
            }
        });
        const rational term = rational(bigint(k.factorial())) * inner;
        best = std::max(best, term);
    }
    out.value = best.convert_to<double>();
    out.exact = numerator(best).str() + (denominator(best) == 1 ? "" : "/" + denominator(best).str());
    return out;
}

double faa_di_bruno_value(const MultiIndex& k, std::size_t D,
                          const std::function<double(const MultiIndex&)>& dh,
                          const std::function<double(std::size_t, const MultiIndex&)>& dg) {
    if (k.order() < 1) throw std::invalid_argument("faa_di_bruno_value: needs |k| >= 1");
    const double kfact = static_cast<double>(k.factorial());

    double total = 0.0;
    const auto as = enumerate_multiindices(D, k.order(), false);
    for_each_split(k, D, [&](const std::vector<MultiIndex>& split) {
        // P_{gamma}(a, g_m) / a! for one factor of the split product
        const auto p_over_afact = [&](const MultiIndex& gamma, int a, std::size_t m) -> double {
            if (gamma.is_zero()) return (a == 0) ? 1.0 : 0.0;
            if (a == 0) return 0.0;
            const auto betas = lower_multiindices(gamma);
            double sum = 0.0;
            for (const auto& rho : r_set(gamma, a)) {
                double term = 1.0;
                for (std::size_t j = 0; j < rho.size(); ++j) {
                    if (rho[j] == 0) continue;
                    const double base =
                        dg(m, betas[j]) / static_cast<double>(betas[j].factorial());
                    term *= std::pow(base, rho[j]) / static_cast<double>(factorial_u64(rho[j]));
                }
                sum += term;
            }
            return sum;  // the a! of P cancels against the 1/a! of the h-term
        };
        for (const auto& a : as) {
            double prod = 1.0;
            for (std::size_t m = 0; m < D && prod != 0.0; ++m)
                prod *= p_over_afact(split[m], a.entries[m], m);
            if (prod != 0.0) total += dh(a) * prod;
        }
    });
    return kfact * total;
}

double OuterAtom::value(const std::vector<double>& y) const {
    double phase = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        phase += freq[i] * y[i];
        l1 += std::abs(freq[i]);
    }
    const double t = kPi * phase;
    return (use_sin ? std::sin(t) : std::cos(t)) / std::pow(kPi * l1, alpha);
}

double OuterAtom::derivative(const MultiIndex& a, const std::vector<double>& y) const {
    if (a.dims() != freq.size()) throw std::invalid_argument("OuterAtom: dimension mismatch");
    double phase = 0.0, l1 = 0.0, fpow = 1.0;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        phase += freq[i] * y[i];
        l1 += std::abs(freq[i]);
        for (int t = 0; t < a.entries[i]; ++t) fpow *= freq[i];
    }
    const int m = a.order();
    const double t = kPi * phase + 0.5 * kPi * m;  // trig derivatives shift the phase
    const double osc = use_sin ? std::sin(t) : std::cos(t);
    return fpow * std::pow(kPi, m) * osc / std::pow(kPi * l1, alpha);
}

namespace {

// Richardson-extrapolated mixed central difference of order k at x
double central_difference(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x, const MultiIndex& k, double step) {
    const std::size_t d = x.size();
    const auto fd_at = [&](double s) {
        std::vector<int> t(d, 0);
        double sum = 0.0;
        while (true) {
            double coeff = 1.0;
            std::vector<double> y = x;
            for (std::size_t i = 0; i < d; ++i) {
                const int m = k.entries[i];
                double b = 1.0;  // binom(m, t_i)
                for (int q = 0; q < t[i]; ++q) b = b * (m - q) / (q + 1);
                coeff *= ((t[i] % 2 == 0) ? 1.0 : -1.0) * b;
                y[i] += (0.5 * m - t[i]) * s;
            }
            sum += coeff * f(y);
            std::size_t pos = d;
            while (pos-- > 0) {
                if (t[pos] < k.entries[pos]) {
                    ++t[pos];
                    for (std::size_t q = pos + 1; q < d; ++q) t[q] = 0;
                    break;
                }
                if (pos == 0) return sum / std::pow(s, k.order());
            }
        }
    };
    // symmetric stencils carry an even error series, so one step halving
    // cancels the s^2 term
    const double coarse = fd_at(step);
    const double fine = fd_at(0.5 * step);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

CompositionCheck verify_composition_bound(const GeneratorSpec& g, const OuterAtom& h, int alpha,
                                          std::size_t probes, Stream& stream) {
    if (alpha < 1) throw std::invalid_argument("verify_composition_bound: alpha >= 1");
    if (h.freq.size() != g.ambient_dim())
        throw std::invalid_argument("verify_composition_bound: outer atom dimension mismatch");
    if (h.alpha != alpha)
        throw std::invalid_argument("verify_composition_bound: atom normalized for a different order");

    const std::size_t d = g.latent_dim();
    const double L = g.smoothness().lip;
    const auto C = composition_constant(g.ambient_dim(), d, alpha);

    CompositionCheck rep;
    rep.bound = C.value * std::pow(L, alpha);

    const auto f = [&](const std::vector<double>& x) {
        LatentPoint u{x};
        return h.value(g.evaluate(u).coords);
    };

    const auto step_for = [](int order) {
        const double s = (order <= 2) ? 0.03 : (order == 3 ? 0.08 : 0.12);
        if (0.5 * s < 1e-4)
            throw std::underflow_error("verify_composition_bound: step underflow");
        return s;
    };

    const auto ks = enumerate_multiindices(d, alpha, false);
    double margin = 0.0;
    for (const auto& k : ks) {
        int widest = 0;
        for (int e : k.entries) widest = std::max(widest, e);
        margin = std::max(margin, 0.5 * widest * step_for(k.order()) + 1e-9);
    }

    for (std::size_t p = 0; p < probes; ++p) {
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i)
            x[i] = margin + (1.0 - 2.0 * margin) * stream.next_unit();
        for (const auto& k : ks) {
            const double est = std::abs(central_difference(f, x, k, step_for(k.order())));
            const double ratio = est / rep.bound;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_k = k;
            }
        }
    }
    rep.ok = rep.max_ratio <= 1.0 + 5e-2;
    return rep;
}

}  // namespace genipm
