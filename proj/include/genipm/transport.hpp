#pragma once

#include "genipm/measure.hpp"

namespace genipm {

// Wasserstein-1 between arbitrary finitely supported measures via the
// transportation simplex: northwest-corner start, potential (u,v) pricing on
// the spanning-tree basis, most-negative entering arc with lowest-index ties,
// and a first-negative fallback rule once pivots go degenerate.
double transport_cost(const DiscreteMeasure& P, const DiscreteMeasure& Q);

}  // namespace genipm
