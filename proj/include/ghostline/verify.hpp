#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ghostline/steinberg.hpp"

namespace ghostline {

struct Witness {
    std::string at;   // e.g. "k=18 l=2"
    std::string lhs;  // exact values as num/den
    std::string rel;  // ==, <=, >=, ...
    std::string rhs;
};

struct CheckReport {
    using Fields = std::vector<std::pair<std::string, std::string>>;

    std::string name;
    Fields params;
    bool pass = true;
    std::int64_t checked = 0;
    std::int64_t failures = 0;
    std::vector<Witness> witnesses;  // first max_witnesses failures
    Fields meta;
    double elapsed_ms = 0;

    static constexpr std::size_t max_witnesses = 16;

    // Records one assertion; describe() builds the witness and runs only on failure.
    template <class Describe>
    bool expect(bool ok, Describe&& describe) {
        ++checked;
        if (!ok) record_failure(describe());
        return ok;
    }
    void record_failure(Witness w);
    // Folds in another report's counts and witnesses.
    void absorb(const CheckReport& other);
};

// Stable field order: name, params, status, checked, failures, witnesses, meta, elapsed_ms.
std::string report_json(const CheckReport& r, int indent = -1);
std::string report_json(const std::vector<CheckReport>& rs, int indent = -1);

CheckReport check_ghost_duality(const GhostContext& ctx, Int kb_max);
CheckReport check_mid_slopes(const GhostContext& ctx, Int k);
CheckReport check_theta(const GhostContext& ctx, Int k0, Int l_max);
CheckReport check_atkin_lehner(const GhostContext& ctx, Int k0);
CheckReport check_p_stabilization(const GhostContext& ctx, Int k0);
CheckReport check_gouvea(const GhostContext& ctx, Int k0);
CheckReport check_halo(const GhostContext& ctx, const mpq_class& t, Int n_max);
// n_max < 0 picks d_iw(k0) + p.
CheckReport check_integrality(const GhostContext& ctx, Int k0, Int n_max = -1);
CheckReport check_delta_estimates(const GhostContext& ctx, Int k, bool with_k_prime,
                                  const DeltaCache* cache = nullptr);
CheckReport check_nested(const GhostContext& ctx, const WeightPoint& w, Int n_max,
                         const DeltaCache* cache = nullptr);
CheckReport check_vertex_theorem(const GhostContext& ctx, const WeightPoint& w, Int n_max,
                                 const DeltaCache* cache = nullptr);
CheckReport check_delta_vertices(const GhostContext& ctx, Int k0, const DeltaCache* cache = nullptr);

// Intervals of k'_bullet (inclusive, clipped at 0) for which d_ur(k') or d_iw(k') - d_ur(k') lies
// in (d_iw(k)/2 - l, d_iw(k)/2 + l), or d_iw(k')/2 lies in [d_iw(k)/2 - l, d_iw(k)/2 + l].
std::vector<std::pair<Int, Int>> k_prime_windows(const GhostContext& ctx, Int k, Int l);
// Largest v_p(m) over integers m in [lo, hi], 1 <= lo <= hi.
Int max_vp_in(Int lo, Int hi, Int p);

// Per-context sweeps.
struct SweepOptions {
    Int kb_max = 200;
    Int theta_l_max = 6;
    Int halo_n_max = 30;
    bool with_k_prime = true;
    Int points = 3;  // random Perturbed points per context for nested / vertex_theorem
    std::uint64_t seed = 20240601;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// One aggregated report for `suite` over all weights of the sweep on this context.
CheckReport run_suite(const std::string& suite, const GhostContext& ctx, const SweepOptions& opt,
                      const DeltaCache* cache = nullptr);

// Every (p, a, s_eps) with a in [1, p-4], every suite, run on a worker pool.
// Reports come back ordered by (p, a, s_eps, suite order).
std::vector<CheckReport> scan(const std::vector<Int>& primes, const std::vector<std::string>& suites,
                              const SweepOptions& opt, unsigned workers = 0);

}  // namespace ghostline
