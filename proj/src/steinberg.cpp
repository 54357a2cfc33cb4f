#include "ghostline/steinberg.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace ghostline {

bool DeltaProfile::is_hull_vertex(Int l) const {
    return std::binary_search(hull_vertices.begin(), hull_vertices.end(), l);
}

mpq_class DeltaProfile::raw_at(Int l) const { return frac(raw2.at(l + half_new), 2); }

mpq_class DeltaProfile::hull_at(Int l) const {
    if (l < -half_new || l > half_new) throw std::out_of_range("hull_at: l out of range");
    auto it = std::lower_bound(hull_vertices.begin(), hull_vertices.end(), l);
    std::size_t j = it - hull_vertices.begin();
    if (*it == l) return frac(hull_vertex_y2[j], 2);
    Int x0 = hull_vertices[j - 1], dx = hull_vertices[j] - x0;
    Int dy = hull_vertex_y2[j] - hull_vertex_y2[j - 1];
    return frac(hull_vertex_y2[j - 1] * dx + dy * (l - x0), 2 * dx);
}

namespace {

// Segment of the hull covering [L-1, L], as (2 dy, dx).
std::pair<Int, Int> gap_parts(const DeltaProfile& prof, Int L) {
    if (L < 1 || L > prof.half_new) throw std::out_of_range("hull_gap: L out of range");
    auto it = std::lower_bound(prof.hull_vertices.begin(), prof.hull_vertices.end(), L);
    std::size_t j = it - prof.hull_vertices.begin();
    return {prof.hull_vertex_y2[j] - prof.hull_vertex_y2[j - 1], prof.hull_vertices[j] - prof.hull_vertices[j - 1]};
}

}  // namespace

mpq_class DeltaProfile::hull_gap(Int L) const {
    auto [dy2, dx] = gap_parts(*this, L);
    return frac(dy2, 2 * dx);
}

bool DeltaProfile::gap_at_most(Int L, const ExtRat& d) const {
    if (d.is_inf()) return true;
    auto [dy2, dx] = gap_parts(*this, L);
    const mpq_class& q = d.value();
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return static_cast<__int128>(dy2) <= static_cast<__int128>(2 * dx) * q.get_num().get_si();
    return cmp(frac(dy2, 2 * dx), q) <= 0;
}

static void require_class(const GhostContext& ctx, Int k) {
    if (k < 2) throw ParameterError("weight must be >= 2");
    ctx.kb_of(k);
}

mpq_class delta_prime(const GhostContext& ctx, Int k, Int l) {
    require_class(ctx, k);
    auto d = dims(ctx, k);
    if (l < -d.d_new / 2 || l > d.d_new / 2)
        throw ParameterError("|l| exceeds d_new/2 = " + std::to_string(d.d_new / 2));
    ExtRat v = eval_vp_omit(ctx, d.d_iw / 2 + l, Classical{k}, {k});
    return v.value() - frac(k - 2, 2) * l;
}

DeltaProfile delta_profile(const GhostContext& ctx, Int k) {
    require_class(ctx, k);
    auto d = dims(ctx, k);
    DeltaProfile prof;
    prof.k = k;
    prof.half_iw = d.d_iw / 2;
    prof.half_new = d.d_new / 2;
    const Int h = prof.half_new, c = prof.half_iw;
    auto seq = classical_valuation_sequence(ctx, k, c + h, true);
    prof.raw2.reserve(2 * h + 1);
    for (Int l = -h; l <= h; ++l) prof.raw2.push_back(2 * seq[c + l] - (k - 2) * l);
    // Monotone chain on (l, 2 Delta'), collinear points dropped.
    auto& X = prof.hull_vertices;
    auto& Y = prof.hull_vertex_y2;
    for (Int l = -h; l <= h; ++l) {
        Int y = prof.raw2[l + h];
        while (X.size() >= 2) {
            std::size_t m = X.size();
            __int128 lhs = static_cast<__int128>(y - Y[m - 2]) * (X[m - 1] - X[m - 2]);
            __int128 rhs = static_cast<__int128>(Y[m - 1] - Y[m - 2]) * (l - X[m - 2]);
            if (lhs > rhs) break;
            X.pop_back();
            Y.pop_back();
        }
        X.push_back(l);
        Y.push_back(y);
    }
    return prof;
}

std::shared_ptr<const DeltaProfile> DeltaCache::get(Int k) const {
    {
        std::shared_lock lk(mu_);
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
    }
    auto prof = std::make_shared<const DeltaProfile>(delta_profile(ctx_, k));
    std::unique_lock lk(mu_);
    return cache_.emplace(k, prof).first->second;
}

namespace {

std::shared_ptr<const DeltaProfile> profile_for(const GhostContext& ctx, Int k, const DeltaCache* cache) {
    if (cache && cache->context() == ctx) return cache->get(k);
    return std::make_shared<const DeltaProfile>(delta_profile(ctx, k));
}

std::string range_str(const NearSteinbergRange& r) {
    std::ostringstream os;
    os << "k=" << r.k << " L=" << r.L << " (" << r.lo << "," << r.hi << ")";
    return os.str();
}

}  // namespace

std::optional<Int> l_max(const DeltaProfile& prof, const ExtRat& distance) {
    if (prof.half_new < 1 || !prof.gap_at_most(1, distance)) return std::nullopt;
    Int lo = 1, hi = prof.half_new;
    while (lo < hi) {
        Int mid = lo + (hi - lo + 1) / 2;
        if (prof.gap_at_most(mid, distance))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::optional<Int> l_max(const GhostContext& ctx, const WeightPoint& w, Int k, const DeltaCache* cache) {
    require_class(ctx, k);
    if (d_new(ctx, k) == 0) return std::nullopt;
    return l_max(*profile_for(ctx, k, cache), vp_point_to_weight(ctx, w, k));
}

std::vector<NearSteinbergRange> near_steinberg_ranges(const GhostContext& ctx, const WeightPoint& w,
                                                      Int n_max, const DeltaCache* cache) {
    if (n_max < 1) throw ParameterError("n_max must be >= 1");
    std::vector<NearSteinbergRange> out;
    Int lo = std::max<Int>(0, k_min_bullet(ctx, 1).value);
    Int hi = k_max_bullet(ctx, n_max - 1);
    for (Int kb = lo; kb <= hi; ++kb) {
        Int k = ctx.k_of(kb);
        auto d = dims(ctx, k);
        if (d.d_new < 2 || d.d_ur + 1 > n_max) continue;
        auto L = l_max(*profile_for(ctx, k, cache), vp_point_to_weight(ctx, w, k));
        if (!L) continue;
        NearSteinbergRange r{k, *L, d.d_iw / 2 - *L, d.d_iw / 2 + *L};
        if (r.lo + 1 <= n_max && r.hi - 1 >= 1) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) {
        return std::tie(x.lo, x.hi, x.k) < std::tie(y.lo, y.hi, y.k);
    });
    return out;
}

NestVerdict check_nested(const std::vector<NearSteinbergRange>& ranges) {
    NestVerdict v;
    for (std::size_t i = 0; i < ranges.size(); ++i)
        for (std::size_t j = i + 1; j < ranges.size(); ++j) {
            auto& x = ranges[i];
            auto& y = ranges[j];
            bool disjoint = x.hi <= y.lo || y.hi <= x.lo;
            bool nested = (x.lo <= y.lo && y.hi <= x.hi) || (y.lo <= x.lo && x.hi <= y.hi);
            if (!disjoint && !nested) {
                v.nested = false;
                v.witness = std::make_pair(x, y);
                return v;
            }
        }
    return v;
}

VertexTheoremReport vertex_theorem_check(const GhostContext& ctx, const WeightPoint& w, Int n_max,
                                         const DeltaCache* cache) {
    VertexTheoremReport rep;
    rep.ranges = near_steinberg_ranges(ctx, w, n_max, cache);
    auto nest = check_nested(rep.ranges);
    if (!nest.nested) {
        rep.ok = false;
        rep.violations.push_back("ranges not nested: " + range_str(nest.witness->first) + " vs " +
                                 range_str(nest.witness->second));
    }
    Int top = n_max;
    for (auto& r : rep.ranges) top = std::max(top, r.hi);
    NewtonPolygon np = np_certified(ctx, w, top);

    for (Int n = 0; n <= n_max; ++n) {
        bool vert = is_vertex(np, n);
        if (vert) rep.vertices.push_back(n);
        bool inside = std::any_of(rep.ranges.begin(), rep.ranges.end(), [&](auto& r) { return r.contains(n); });
        if (vert == inside) {
            rep.ok = false;
            rep.violations.push_back("n=" + std::to_string(n) + (vert ? " is a vertex inside a range"
                                                                       : " is not a vertex outside all ranges"));
        }
    }

    // Slope over each maximal range lies in a/2 + Z + Z*gamma.
    for (auto& r : rep.ranges) {
        bool maximal = std::none_of(rep.ranges.begin(), rep.ranges.end(), [&](auto& o) {
            return !(o == r) && o.lo <= r.lo && r.hi <= o.hi && (o.lo < r.lo || r.hi < o.hi);
        });
        if (!maximal) continue;
        mpq_class s = slope_at(np, r.lo + 1);
        for (Int i = r.lo + 2; i <= r.hi; ++i)
            if (slope_at(np, i) != s) {
                rep.ok = false;
                rep.violations.push_back("NP not straight over " + range_str(r));
                break;
            }
        mpz_class den = 1;
        if (!std::holds_alternative<Classical>(w)) {
            ExtRat gamma(0);
            for (Int n = r.lo + 1; n < r.hi; ++n)
                for (auto& [k, m] : coefficient(ctx, n).factors) gamma = std::max(gamma, vp_point_to_weight(ctx, w, k));
            if (gamma.is_finite()) den = gamma.value().get_den();
        }
        mpq_class t = (s - frac(ctx.a, 2)) * den;
        if (t.get_den() != 1) {
            rep.ok = false;
            rep.violations.push_back("slope " + rat_str(s) + " over " + range_str(r) + " outside a/2+Z+Z*gamma");
        }
    }
    return rep;
}

std::vector<DeltaVertexReport> delta_vertex_scan(const GhostContext& ctx, Int k0, const DeltaCache* cache) {
    require_class(ctx, k0);
    auto prof = profile_for(ctx, k0, cache);
    const Int h = prof->half_new, c0 = prof->half_iw, kb0 = ctx.kb_of(k0);
    std::vector<DeltaVertexReport> out(std::max<Int>(0, h));
    if (h < 1) return out;
    for (Int l = 0; l < h; ++l) out[l].non_vertex = !prof->is_hull_vertex(l);

    // Every range through n lies inside the zero window of n, so these windows cover all witnesses.
    auto scan = [&](Int n_lo, Int n_hi, bool above) {
        Int lo = std::max<Int>(0, k_min_bullet(ctx, std::max<Int>(1, n_lo)).value);
        Int hi = k_max_bullet(ctx, n_hi - 1);
        if (above) lo = std::max(lo, kb0 + 1);
        else hi = std::min(hi, kb0 - 1);
        for (Int kb = lo; kb <= hi; ++kb) {
            Int k = ctx.k_of(kb);
            if (d_new(ctx, k) < 2) continue;
            auto L = l_max(*profile_for(ctx, k, cache), vp_between_weights(ctx, k0, k));
            if (!L) continue;
            Int ck = profile_for(ctx, k, cache)->half_iw;
            for (Int n = std::max(n_lo, ck - *L + 1); n <= std::min(n_hi, ck + *L - 1); ++n) {
                auto& rep = out[above ? n - c0 : c0 - n];
                auto& slot = above ? rep.k1 : rep.k2;
                if (!slot) slot = k;
            }
        }
    };
    scan(c0, c0 + h - 1, true);
    scan(c0 - h + 1, c0, false);
    for (auto& rep : out) {
        rep.upper_witness = rep.k1.has_value();
        rep.lower_witness = rep.k2.has_value();
    }
    return out;
}

DeltaVertexReport delta_vertex_check(const GhostContext& ctx, Int k0, Int l, const DeltaCache* cache) {
    require_class(ctx, k0);
    Int h = d_new(ctx, k0) / 2;
    if (l < 0 || l > h - 1) throw ParameterError("l must lie in [0, d_new/2 - 1]");
    return delta_vertex_scan(ctx, k0, cache)[l];
}

}  // namespace ghostline
