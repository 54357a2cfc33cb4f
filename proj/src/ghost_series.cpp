#include "ghostline/ghost_series.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace ghostline {

Int GhostCoefficient::degree() const {
    Int d = 0;
    for (auto& f : factors) d += f.second;
    return d;
}

Int multiplicity(const GhostContext& ctx, Int n, Int k) {
    if (n <= 0 || k < 2 || !ctx.in_class(k)) return 0;
    auto [iw, ur, nw] = dims(ctx, k);
    if (n <= ur || n >= iw - ur) return 0;
    return std::min(n - ur, iw - ur - n);
}

std::pair<Int, Int> zero_window(const GhostContext& ctx, Int n) {
    if (n <= 0) return {1, 0};
    return {std::max<Int>(0, k_min_bullet(ctx, n).value), k_max_bullet(ctx, n - 1)};
}

GhostCoefficient coefficient(const GhostContext& ctx, Int n) {
    if (n < 0) throw ParameterError("coefficient index must be >= 0");
    GhostCoefficient g;
    g.n = n;
    auto [lo, hi] = zero_window(ctx, n);
    for (Int kb = lo; kb <= hi; ++kb) {
        Int k = ctx.k_of(kb);
        Int m = multiplicity(ctx, n, k);
        if (m > 0) g.factors.emplace_back(k, m);
    }
    return g;
}

Int degree(const GhostContext& ctx, Int n) { return coefficient(ctx, n).degree(); }

Int power_basis_degree(const GhostContext& ctx, Int n) {
    if (n < 1) throw ParameterError("power basis index must be >= 1");
    Int u = std::min(ctx.s_eps, ctx.res(ctx.a + ctx.s_eps));
    Int v = std::max(ctx.s_eps, ctx.res(ctx.a + ctx.s_eps));
    Int j = (n - 1) / 2;
    return (n % 2 == 1 ? u : v) + (ctx.p - 1) * j;
}

Int lambda_halo(const GhostContext& ctx, Int n) {
    Int e = power_basis_degree(ctx, n);
    return e - e / ctx.p;
}

Int degree_increment_closed_form(const GhostContext& ctx, Int n) {
    if (n < 0) throw ParameterError("index must be >= 0");
    const Int p = ctx.p, a = ctx.a;
    Int r = mod_pos(n - 2 * ctx.s_eps, 2 * p);
    Int corr = 0;
    // Even/odd residues up to 2a+2 (resp. 2a+3) carry the +1/-1 corrections.
    if (a + ctx.s_eps < p - 1) {
        if (r >= 1 && r <= 2 * a + 1 && r % 2 == 1) corr = 1;
        if (r >= 2 && r <= 2 * a + 2 && r % 2 == 0) corr = -1;
    } else {
        if (r >= 2 && r <= 2 * a + 2 && r % 2 == 0) corr = 1;
        if (r >= 3 && r <= 2 * a + 3 && r % 2 == 1) corr = -1;
    }
    return lambda_halo(ctx, n + 1) + corr;
}

IncrementRanges increment_ranges(const GhostContext& ctx, Int n) {
    IncrementRanges r;
    Int mid = k_mid_bullet(ctx, n);
    r.plus_lo = std::max<Int>(0, mid + 1);
    r.plus_hi = k_max_bullet(ctx, n);
    if (n >= 1) {
        r.minus_lo = std::max<Int>(0, k_min_bullet(ctx, n).value);
        r.minus_hi = mid;
    } else {
        r.minus_lo = 1;
        r.minus_hi = 0;
    }
    return r;
}

ExtRat eval_vp(const GhostCoefficient& g, const GhostContext& ctx, const WeightPoint& w,
               const std::set<Int>& omit) {
    ExtRat s(0);
    for (auto& [k, m] : g.factors) {
        if (omit.count(k)) continue;
        ExtRat v = vp_point_to_weight(ctx, w, k);
        if (v.is_inf()) return ExtRat::infinity();
        s += m * v;
    }
    return s;
}

ExtRat eval_vp(const GhostContext& ctx, Int n, const WeightPoint& w) {
    return eval_vp(coefficient(ctx, n), ctx, w);
}

ExtRat eval_vp_omit(const GhostContext& ctx, Int n, const WeightPoint& w, const std::set<Int>& omit) {
    return eval_vp(coefficient(ctx, n), ctx, w, omit);
}

namespace {

Int mod_inverse(Int a, Int m) {
    Int g = m, x = 0, x1 = 1, aa = mod_pos(a, m);
    while (aa != 0) {
        Int q = g / aa;
        Int t = g - q * aa;
        g = aa;
        aa = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::logic_error("no inverse");
    return mod_pos(x, m);
}

// Number of x in [lo, hi] with x = c mod m.
Int count_congruent(Int lo, Int hi, Int c, Int m) {
    if (lo > hi) return 0;
    return floor_div(hi - c, m) - floor_div(lo - 1 - c, m);
}

// Sum over kb in [lo, hi] with k != k0 of (1 + v_p(k - k0)), k = k_eps + (p-1) kb.
Int range_sum(const GhostContext& ctx, Int lo, Int hi, Int k0) {
    if (lo > hi) return 0;
    const Int p = ctx.p;
    Int sum = hi - lo + 1;
    if (ctx.in_class(k0)) {
        Int c = ctx.kb_of(k0);
        Int a = lo - c, b = hi - c;
        if (a <= 0 && 0 <= b) --sum;
        if (b >= 1) {
            Int from = std::max<Int>(1, a);
            sum += sum_vp_range(from - 1, b, p);
        }
        if (a <= -1) {
            Int from = std::max<Int>(1, -b);
            sum += sum_vp_range(from - 1, -a, p);
        }
        return sum;
    }
    // k - k0 never vanishes; count multiples of p^e among (p-1) kb + (k_eps - k0).
    Int c0 = ctx.k_eps - k0;
    Int bound = std::max(std::abs((p - 1) * lo + c0), std::abs((p - 1) * hi + c0));
    Int pe = p;
    while (pe <= bound) {
        Int target = mod_pos(-c0 * mod_inverse(p - 1, pe), pe);
        sum += count_congruent(lo, hi, target, pe);
        if (pe > bound / p) break;
        pe *= p;
    }
    return sum;
}

}  // namespace

ExtRat eval_increment_oracle(const GhostContext& ctx, Int n, Int k0) {
    if (n < 0) throw ParameterError("index must be >= 0");
    Int mid = k_mid_bullet(ctx, n);
    Int plus = range_sum(ctx, std::max<Int>(0, mid + 1), k_max_bullet(ctx, n), k0);
    Int minus = 0;
    if (n >= 1) minus = range_sum(ctx, std::max<Int>(0, k_min_bullet(ctx, n).value), mid, k0);
    return ExtRat(static_cast<long>(plus - minus));
}

ExtRat eval_second_increment_oracle(const GhostContext& ctx, Int n, Int k0) {
    if (n < 1) throw ParameterError("second difference needs n >= 1");
    Int up = range_sum(ctx, std::max<Int>(0, k_max_bullet(ctx, n - 1) + 1), k_max_bullet(ctx, n), k0);
    Int down = range_sum(ctx, std::max<Int>(0, k_min_bullet(ctx, n - 1).value),
                         k_min_bullet(ctx, n).value - 1, k0);
    Int mid = k_mid_bullet(ctx, n);
    Int centre = 0;
    if (mid >= 0 && ctx.k_of(mid) != k0) centre = 2 * range_sum(ctx, mid, mid, k0);
    return ExtRat(static_cast<long>(up + down - centre));
}

std::vector<ExtRat> valuation_sequence(const GhostContext& ctx, const WeightPoint& w, Int n_max,
                                       const std::set<Int>& omit) {
    if (n_max < 0) throw ParameterError("n_max must be >= 0");
    std::vector<ExtRat> out;
    out.reserve(n_max + 1);
    out.emplace_back(0);
    if (n_max == 0) return out;

    const Int kb_top = std::max<Int>(0, k_max_bullet(ctx, n_max - 1));
    // v(w - w_k) = A + B * r where r is the point's radius (or t).
    mpq_class r = 0;
    std::optional<Int> inf_k;
    const Classical* cl = std::get_if<Classical>(&w);
    const Perturbed* pt = std::get_if<Perturbed>(&w);
    if (pt) r = pt->r;
    if (auto bd = std::get_if<Boundary>(&w)) r = bd->t;

    std::vector<Int> pa(kb_top + 2, 0), pb(kb_top + 2, 0);
    for (Int kb = 0; kb <= kb_top; ++kb) {
        Int k = ctx.k_of(kb);
        Int va = 0, vb = 0;
        if (!omit.count(k)) {
            if (cl) {
                if (k == cl->k)
                    inf_k = k;
                else
                    va = 1 + vp_small(k - cl->k, ctx.p);
            } else if (pt) {
                if (k == pt->k0) {
                    vb = 1;
                } else {
                    Int d = 1 + vp_small(k - pt->k0, ctx.p);
                    if (d < r)
                        va = d;
                    else
                        vb = 1;
                }
            } else {
                vb = 1;
            }
        }
        pa[kb + 1] = pa[kb] + va;
        pb[kb + 1] = pb[kb] + vb;
    }
    auto seg = [&](const std::vector<Int>& pre, Int lo, Int hi) -> Int {
        if (lo > hi) return 0;
        return pre[hi + 1] - pre[lo];
    };

    Int A = 0, B = 0;
    for (Int n = 0; n < n_max; ++n) {
        IncrementRanges ir = increment_ranges(ctx, n);
        A += seg(pa, ir.plus_lo, ir.plus_hi) - seg(pa, ir.minus_lo, ir.minus_hi);
        B += seg(pb, ir.plus_lo, ir.plus_hi) - seg(pb, ir.minus_lo, ir.minus_hi);
        if (inf_k && multiplicity(ctx, n + 1, *inf_k) > 0)
            out.push_back(ExtRat::infinity());
        else
            out.emplace_back(mpq_class(mpq_class(static_cast<long>(A)) + static_cast<long>(B) * r));
    }
    return out;
}

std::vector<Int> classical_valuation_sequence(const GhostContext& ctx, Int k, Int n_max, bool omit_k) {
    if (n_max < 0) throw ParameterError("n_max must be >= 0");
    std::vector<Int> out;
    out.reserve(n_max + 1);
    out.push_back(0);
    if (n_max == 0) return out;
    const Int kb_top = std::max<Int>(0, k_max_bullet(ctx, n_max - 1));
    std::vector<Int> pre(kb_top + 2, 0);
    for (Int kb = 0; kb <= kb_top; ++kb) {
        Int kk = ctx.k_of(kb);
        pre[kb + 1] = pre[kb] + (kk == k ? 0 : 1 + vp_small(kk - k, ctx.p));
    }
    auto seg = [&](Int lo, Int hi) -> Int { return lo > hi ? 0 : pre[hi + 1] - pre[lo]; };
    const bool hits = !omit_k && k >= 2 && ctx.in_class(k);
    Int A = 0;
    for (Int n = 0; n < n_max; ++n) {
        IncrementRanges ir = increment_ranges(ctx, n);
        A += seg(ir.plus_lo, ir.plus_hi) - seg(ir.minus_lo, ir.minus_hi);
        out.push_back(hits && multiplicity(ctx, n + 1, k) > 0 ? -1 : A);
    }
    return out;
}

std::shared_ptr<const GhostCoefficient> GhostSeries::coefficient(Int n) const {
    {
        std::shared_lock lk(mu_);
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
    }
    auto g = std::make_shared<const GhostCoefficient>(ghostline::coefficient(ctx_, n));
    std::unique_lock lk(mu_);
    auto [it, inserted] = cache_.emplace(n, g);
    return it->second;
}

std::size_t GhostSeries::cached() const {
    std::shared_lock lk(mu_);
    return cache_.size();
}

}  // namespace ghostline
