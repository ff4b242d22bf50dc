#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "genipm/measure.hpp"
#include "genipm/rng.hpp"

namespace genipm {

// Dictionary discriminator built from cos/sin(pi<k,x>) atoms with ||k||_inf
// bounded by frequency_cap, each normalized by w_k = (pi*||k||_1)^alpha / lip
// so every admissible combination stays in the smoothness ball of radius lip.
// Atoms clamp their argument to [0,1]^D, which preserves the derivative
// bounds and keeps the metric defined for points pushed outside the cube by
// noise. The optimum over the coefficient polytope {sum |c_k| w_k <= 1} is
// attained at a single atom, so evaluation is a max over the dictionary.
struct WalphaSpec {
    int alpha = 1;
    double lip = 1.0;
    int frequency_cap = 3;
    bool include_projection = true;  // adds lip * x_j for each axis j
    std::size_t max_atoms = 200000;
};

enum class IpmKind {
    W1Exact1d,
    W1Assignment,
    W1TransportLp,
    WalphaDictionary,
    ProjectionFirstAxis,
    BruteLpOracle,
};

struct IpmSpec {
    IpmKind kind = IpmKind::W1Assignment;
    WalphaSpec walpha;       // used by WalphaDictionary
    double grid_step = 0.1;  // used by BruteLpOracle
};

const char* ipm_kind_name(IpmKind k);
IpmKind ipm_kind_from_name(const std::string& name);

// Exact W1 between finitely supported measures: an assignment solve when both
// are uniform with equal sizes, the transportation simplex otherwise.
double w1_empirical(const DiscreteMeasure& P, const DiscreteMeasure& Q);

// Monte Carlo estimate of W1(P, U_d) by substituting fresh m-point uniform
// samples; biased upward, with the bias vanishing as m grows. Returns
// (estimate, standard error). Requires m >= size(P).
std::pair<double, double> w1_vs_uniform(const DiscreteMeasure& P, std::size_t d, std::size_t m,
                                        std::size_t reps, Stream& stream);

// Max atom gap of the dictionary above: a certified lower bound on the
// smoothness-class IPM, and at alpha = 1 also on lip * W1(P, Q).
double walpha_ipm(const DiscreteMeasure& P, const DiscreteMeasure& Q, const WalphaSpec& spec);

// |E_P x_1 - E_Q x_1| on raw (unclamped) coordinates.
double projection_ipm(const DiscreteMeasure& P, const DiscreteMeasure& Q);

// Independent verification oracle: snaps both supports to a lattice of pitch
// h, solves the dual LP over 1-Lipschitz functions on the lattice nodes by a
// dense tableau simplex, and checks the optimizer's Lipschitz feasibility on
// every lattice node pair. Capped at D <= 2 and 30 support points per side.
double brute_lp_oracle(const DiscreteMeasure& P, const DiscreteMeasure& Q, double h);

// CLI-facing dispatcher over the kinds that compare two discrete measures.
double evaluate_ipm(const IpmSpec& spec, const DiscreteMeasure& P, const DiscreteMeasure& Q);

}  // namespace genipm
