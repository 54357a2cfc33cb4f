#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ghostline/ghost_series.hpp"

namespace ghostline {

struct NewtonPolygon {
    std::vector<std::pair<Int, mpq_class>> vertices;
    std::vector<std::pair<mpq_class, Int>> slopes;  // (slope, width)
    Int certified_upto = 0;
    Int window_end = 0;  // last index computed
    Int buffer_used = 0;
};

class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Points with y = +inf are skipped; the whole input counts as certified.
NewtonPolygon lower_convex_hull(const std::vector<std::pair<Int, ExtRat>>& points);

// Lower bound for v(g_{j+1}(w)) - v(g_j(w)) valid for every j >= n, if one is available.
std::optional<mpq_class> future_increment_bound(const GhostContext& ctx, const WeightPoint& w, Int n);

// Hull over indices 0..n_max+buffer with a certified prefix.
NewtonPolygon np_of_ghost(const GhostContext& ctx, const WeightPoint& w, Int n_max, Int buffer);
// Same, doubling the buffer (default 2p+8) up to four times until certified_upto >= n_max.
NewtonPolygon np_certified(const GhostContext& ctx, const WeightPoint& w, Int n_max, Int buffer = -1);

bool is_vertex(const NewtonPolygon& np, Int n);
// i-th slope counted with multiplicity, i >= 1.
mpq_class slope_at(const NewtonPolygon& np, Int i);

}  // namespace ghostline
