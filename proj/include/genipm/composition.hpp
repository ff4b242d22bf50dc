#pragma once

#include <functional>
#include <string>
#include <vector>

#include "genipm/generator.hpp"
#include "genipm/multiindex.hpp"
#include "genipm/rng.hpp"

namespace genipm {

// Worst-case factor C(D, d, alpha) multiplying L^alpha in the bound on
// |D^k(h.g)| when h has unit derivative bounds and each g_m has derivative
// bounds L. Computed in exact rational arithmetic; `value` is the rounded
// double and `exact` the rational as "p/q".
struct CompositionBound {
    std::size_t D = 0;
    std::size_t d = 0;
    int alpha = 0;
    double value = 0.0;
    std::string exact;
};

CompositionBound composition_constant(std::size_t D, std::size_t d, int alpha);

// Evaluates D^k(h.g)(x) through the composition formula, given callbacks for
// the ingredient derivatives at the point of interest:
//   dh(a)       = (D^a h)(g(x))          for a in N^D
//   dg(m, beta) = (D^beta g_m)(x)        for beta in N^d
double faa_di_bruno_value(const MultiIndex& k, std::size_t D,
                          const std::function<double(const MultiIndex&)>& dh,
                          const std::function<double(std::size_t, const MultiIndex&)>& dg);

// One dictionary atom playing the role of the outer function h, normalized to
// unit derivative bounds up to `alpha`: h(y) = trig(pi<freq,y>) / (pi*|freq|_1)^alpha.
struct OuterAtom {
    std::vector<int> freq;  // nonzero integer vector in Z^D
    bool use_sin = false;
    int alpha = 1;

    double value(const std::vector<double>& y) const;
    // exact partial derivative of any order (trig derivatives cycle)
    double derivative(const MultiIndex& a, const std::vector<double>& y) const;
};

struct CompositionCheck {
    double max_ratio = 0.0;   // max |FD estimate| / (C * L^alpha)
    MultiIndex worst_k;       // where the max was attained
    double bound = 0.0;       // C(D,d,alpha) * L^alpha
    bool ok = false;          // max_ratio <= 1 + 5e-2
};

// Estimates every D^k(h.g), |k| <= alpha, by Richardson-extrapolated central
// differences at `probes` interior points and compares against the bound.
CompositionCheck verify_composition_bound(const GeneratorSpec& g, const OuterAtom& h, int alpha,
                                          std::size_t probes, Stream& stream);

}  // namespace genipm
