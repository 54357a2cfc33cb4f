#pragma once

#include <map>
#include <memory>
#include <set>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "ghostline/dimensions.hpp"

namespace ghostline {

// g_n(w) = prod (w - w_k)^mult, held in factored form.
struct GhostCoefficient {
    Int n = 0;
    std::vector<std::pair<Int, Int>> factors;  // (k, mult), sorted by k

    Int degree() const;
    friend bool operator==(const GhostCoefficient&, const GhostCoefficient&) = default;
};

// m_n(k); zero outside (d_ur, d_iw - d_ur).
Int multiplicity(const GhostContext& ctx, Int n, Int k);

// Window of k_bullet that can carry a zero of g_n, clipped at 0; empty when lo > hi.
std::pair<Int, Int> zero_window(const GhostContext& ctx, Int n);

GhostCoefficient coefficient(const GhostContext& ctx, Int n);
Int degree(const GhostContext& ctx, Int n);

// deg e_n, n >= 1.
Int power_basis_degree(const GhostContext& ctx, Int n);
Int lambda_halo(const GhostContext& ctx, Int n);
// lambda_{n+1} corrected by the residue of n - 2 s_eps mod 2p.
Int degree_increment_closed_form(const GhostContext& ctx, Int n);

// k_bullet ranges where m_{n+1}(k) - m_n(k) is +1 and -1, clipped at 0.
struct IncrementRanges {
    Int plus_lo, plus_hi;    // inclusive
    Int minus_lo, minus_hi;  // inclusive
};
IncrementRanges increment_ranges(const GhostContext& ctx, Int n);

ExtRat eval_vp(const GhostContext& ctx, Int n, const WeightPoint& w);
ExtRat eval_vp_omit(const GhostContext& ctx, Int n, const WeightPoint& w, const std::set<Int>& omit);
ExtRat eval_vp(const GhostCoefficient& g, const GhostContext& ctx, const WeightPoint& w,
               const std::set<Int>& omit = {});

// v(g_{n+1, k0^}(w_k0)) - v(g_{n, k0^}(w_k0)) from the two-range sum; k0 any integer.
ExtRat eval_increment_oracle(const GhostContext& ctx, Int n, Int k0);
// Second difference at n >= 1 from the three-range form.
ExtRat eval_second_increment_oracle(const GhostContext& ctx, Int n, Int k0);

// v(g_n(w)) for n = 0..n_max, omitting factors at the listed weights.
// Evaluated incrementally from prefix sums of the valuation profile.
std::vector<ExtRat> valuation_sequence(const GhostContext& ctx, const WeightPoint& w, Int n_max,
                                       const std::set<Int>& omit = {});

// Integer form at a classical point w_k: v(g_n(w_k)) for n = 0..n_max, -1 marking +inf.
std::vector<Int> classical_valuation_sequence(const GhostContext& ctx, Int k, Int n_max, bool omit_k);

// Thread-safe index-keyed cache of coefficients for one context.
class GhostSeries {
public:
    explicit GhostSeries(GhostContext ctx) : ctx_(ctx) {}
    const GhostContext& context() const { return ctx_; }
    std::shared_ptr<const GhostCoefficient> coefficient(Int n) const;
    std::size_t cached() const;

private:
    GhostContext ctx_;
    mutable std::shared_mutex mu_;
    mutable std::map<Int, std::shared_ptr<const GhostCoefficient>> cache_;
};

}  // namespace ghostline
