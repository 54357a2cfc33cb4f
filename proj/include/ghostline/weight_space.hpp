#pragma once

#include <string>
#include <variant>

#include "ghostline/valuation.hpp"

namespace ghostline {

// The disk parameters (p, a, s_eps) with b = 0, and everything derived from them.
struct GhostContext {
    Int p = 0;
    Int a = 0;
    Int s_eps = 0;
    Int k_eps = 0;
    Int delta_eps = 0;
    Int t1 = 0;
    Int t2 = 0;
    Int beta_even = 0;
    Int beta_odd = 0;

    // {m}: residue in [0, p-2].
    Int res(Int m) const { return mod_pos(m, p - 1); }
    Int beta(Int n) const { return mod_pos(n, 2) == 0 ? beta_even : beta_odd; }
    bool in_class(Int k) const { return res(k - k_eps) == 0; }
    Int k_of(Int kb) const { return k_eps + (p - 1) * kb; }
    // Requires in_class(k).
    Int kb_of(Int k) const;

    friend bool operator==(const GhostContext&, const GhostContext&) = default;
};

GhostContext new_context(Int p, Int a, Int s_eps);

struct Classical {
    Int k;
};
struct Perturbed {
    Int k0;
    mpq_class r;
};
struct Boundary {
    mpq_class t;
};
using WeightPoint = std::variant<Classical, Perturbed, Boundary>;

WeightPoint make_perturbed(Int k0, const mpq_class& r);
WeightPoint make_boundary(const mpq_class& t);

// 1 + v_p(k1 - k2).
ExtRat vp_between_weights(const GhostContext& ctx, Int k1, Int k2);
// v_p(w - w_k) under the generic-point convention.
ExtRat vp_point_to_weight(const GhostContext& ctx, const WeightPoint& w, Int k);

// classical:K | perturbed:K0:NUM/DEN | boundary:NUM/DEN
WeightPoint parse_point(const std::string& s);
std::string format_point(const WeightPoint& w);

}  // namespace ghostline
