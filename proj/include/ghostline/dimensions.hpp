#pragma once

#include "ghostline/weight_space.hpp"

namespace ghostline {

struct DimTriple {
    Int d_iw;
    Int d_ur;
    Int d_new;
};

// General Iwahori-level formula, any residue class, k >= 2.
Int d_iw(const GhostContext& ctx, Int k);
// k >= 2 and k = k_eps mod (p-1).
Int d_ur(const GhostContext& ctx, Int k);
Int d_new(const GhostContext& ctx, Int k);
DimTriple dims(const GhostContext& ctx, Int k);

// Extremal k_bullet values; see the equivalences tested in test_dimensions.
Int k_mid_bullet(const GhostContext& ctx, Int n);
Int k_max_bullet(const GhostContext& ctx, Int n);

struct KMin {
    Int tilde;
    Int value;
};
KMin k_min_bullet(const GhostContext& ctx, Int n);

// Count of power-basis degrees <= k - 2.
Int d_iw_power_basis_oracle(const GhostContext& ctx, Int k);
// Multiplicity of sigma_{a, s_eps} in Sym^{k-2} via the (p+1)-step recursion.
Int d_ur_jh_oracle(const GhostContext& ctx, Int k);

}  // namespace ghostline
