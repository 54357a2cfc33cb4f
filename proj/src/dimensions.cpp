#include "ghostline/dimensions.hpp"

namespace ghostline {

static void require_weight(Int k) {
    if (k < 2) throw ParameterError("weight must be >= 2 (got " + std::to_string(k) + ")");
}

Int d_iw(const GhostContext& ctx, Int k) {
    require_weight(k);
    const Int q = ctx.p - 1;
    return floor_div(k - 2 - ctx.s_eps, q) + floor_div(k - 2 - ctx.res(ctx.a + ctx.s_eps), q) + 2;
}

Int d_ur(const GhostContext& ctx, Int k) {
    require_weight(k);
    const Int kb = ctx.kb_of(k);
    const Int r = ctx.p + 1;
    Int d = floor_div(kb - ctx.t1, r) + floor_div(kb - ctx.t2, r) + 2;
    if (d < 0) throw std::logic_error("negative d_ur");
    return d;
}

Int d_new(const GhostContext& ctx, Int k) { return d_iw(ctx, k) - 2 * d_ur(ctx, k); }

DimTriple dims(const GhostContext& ctx, Int k) {
    Int iw = d_iw(ctx, k), ur = d_ur(ctx, k);
    return {iw, ur, iw - 2 * ur};
}

Int k_mid_bullet(const GhostContext& ctx, Int n) { return n + ctx.delta_eps - 1; }

Int k_max_bullet(const GhostContext& ctx, Int n) {
    return (ctx.p + 1) / 2 * n + ctx.beta(n) - 1;
}

KMin k_min_bullet(const GhostContext& ctx, Int n) {
    Int tilde = (ctx.p + 1) / 2 * (n - 1 + 2 * ctx.delta_eps) - ctx.beta(n - 1) + 1;
    return {tilde, ceil_div(tilde, ctx.p)};
}

Int d_iw_power_basis_oracle(const GhostContext& ctx, Int k) {
    require_weight(k);
    Int count = 0;
    for (Int start : {ctx.s_eps, ctx.res(ctx.a + ctx.s_eps)})
        for (Int deg = start; deg <= k - 2; deg += ctx.p - 1) ++count;
    return count;
}

Int d_ur_jh_oracle(const GhostContext& ctx, Int k) {
    require_weight(k);
    ctx.kb_of(k);
    const Int p = ctx.p;
    const Int q = p - 1;
    auto is_target = [&](Int x, Int y) { return x == ctx.a && mod_pos(y, q) == ctx.s_eps; };
    Int m = k - 2, b = 0, count = 0;
    while (m >= p + 1) {
        Int r = mod_pos(m, q);
        if (is_target(r, b)) ++count;
        if (is_target(p - 1 - r, r + b)) ++count;
        m -= p + 1;
        b += 1;
    }
    if (mod_pos(b, q) == ctx.s_eps && mod_pos(m - ctx.a, q) == 0) ++count;
    return count;
}

}  // namespace ghostline
