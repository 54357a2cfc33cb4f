#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ghostline/newton.hpp"

namespace ghostline {

// Delta'_{k,l} and its lower hull for l in [-h, h], h = d_new / 2.
// Values are held doubled so that they stay integral.
struct DeltaProfile {
    Int k = 0;
    Int half_iw = 0;
    Int half_new = 0;
    std::vector<Int> raw2;            // 2 Delta'_{k,l}, index l + h
    std::vector<Int> hull_vertices;   // increasing l
    std::vector<Int> hull_vertex_y2;  // 2 Delta_{k,l} at each vertex

    mpq_class raw_at(Int l) const;
    mpq_class hull_at(Int l) const;
    bool is_hull_vertex(Int l) const;
    // Delta_{k,L} - Delta_{k,L-1}, 1 <= L <= h; nondecreasing in L.
    mpq_class hull_gap(Int L) const;
    // hull_gap(L) <= d.
    bool gap_at_most(Int L, const ExtRat& d) const;
};

struct NearSteinbergRange {
    Int k;
    Int L;
    Int lo;  // open interval (lo, hi)
    Int hi;
    bool contains(Int n) const { return lo < n && n < hi; }
    friend bool operator==(const NearSteinbergRange&, const NearSteinbergRange&) = default;
};

// Direct evaluation through the factored coefficient.
mpq_class delta_prime(const GhostContext& ctx, Int k, Int l);
DeltaProfile delta_profile(const GhostContext& ctx, Int k);

// Thread-safe per-context memo of profiles.
class DeltaCache {
public:
    explicit DeltaCache(GhostContext ctx) : ctx_(ctx) {}
    const GhostContext& context() const { return ctx_; }
    std::shared_ptr<const DeltaProfile> get(Int k) const;

private:
    GhostContext ctx_;
    mutable std::shared_mutex mu_;
    mutable std::map<Int, std::shared_ptr<const DeltaProfile>> cache_;
};

std::optional<Int> l_max(const GhostContext& ctx, const WeightPoint& w, Int k, const DeltaCache* cache = nullptr);
std::optional<Int> l_max(const DeltaProfile& prof, const ExtRat& distance);

// Every range meeting [1, n_max], sorted by (lo, hi, k).
std::vector<NearSteinbergRange> near_steinberg_ranges(const GhostContext& ctx, const WeightPoint& w,
                                                      Int n_max, const DeltaCache* cache = nullptr);

struct NestVerdict {
    bool nested = true;
    std::optional<std::pair<NearSteinbergRange, NearSteinbergRange>> witness;
};
NestVerdict check_nested(const std::vector<NearSteinbergRange>& ranges);

struct VertexTheoremReport {
    bool ok = true;
    std::vector<Int> vertices;  // NP vertices in [0, n_max]
    std::vector<NearSteinbergRange> ranges;
    std::vector<std::string> violations;
};
// Vertices of NP(G(w,-)) versus near-Steinberg ranges, plus the slope class over maximal ranges.
VertexTheoremReport vertex_theorem_check(const GhostContext& ctx, const WeightPoint& w, Int n_max,
                                         const DeltaCache* cache = nullptr);

struct DeltaVertexReport {
    bool non_vertex = false;
    bool upper_witness = false;  // some k1 > k0 at index d/2 + l
    bool lower_witness = false;  // some k2 < k0 at index d/2 - l
    std::optional<Int> k1, k2;
    bool ok() const { return non_vertex == upper_witness && upper_witness == lower_witness; }
};
DeltaVertexReport delta_vertex_check(const GhostContext& ctx, Int k0, Int l, const DeltaCache* cache = nullptr);
// The same for every l in [0, d_new/2 - 1] in one pass.
std::vector<DeltaVertexReport> delta_vertex_scan(const GhostContext& ctx, Int k0, const DeltaCache* cache = nullptr);

}  // namespace ghostline
