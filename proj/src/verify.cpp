#include "ghostline/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "ghostline/parallel.hpp"
#include "json.hpp"

namespace ghostline {

using json = nlohmann::ordered_json;

void CheckReport::record_failure(Witness w) {
    ++failures;
    pass = false;
    if (witnesses.size() < max_witnesses) witnesses.push_back(std::move(w));
}

void CheckReport::absorb(const CheckReport& o) {
    checked += o.checked;
    failures += o.failures;
    pass = pass && o.pass;
    for (auto& w : o.witnesses)
        if (witnesses.size() < max_witnesses) witnesses.push_back(w);
    for (auto& m : o.meta) {
        bool seen = false;
        for (auto& x : meta) seen = seen || x.first == m.first;
        if (!seen) meta.push_back(m);
    }
}

static json to_json(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    json params = json::object();
    for (auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["status"] = r.pass ? "pass" : "fail";
    j["checked"] = r.checked;
    j["failures"] = r.failures;
    json ws = json::array();
    for (auto& w : r.witnesses) ws.push_back({{"at", w.at}, {"lhs", w.lhs}, {"rel", w.rel}, {"rhs", w.rhs}});
    j["witnesses"] = ws;
    json meta = json::object();
    for (auto& [k, v] : r.meta) meta[k] = v;
    j["meta"] = meta;
    j["elapsed_ms"] = std::round(r.elapsed_ms * 1000) / 1000;
    return j;
}

std::string report_json(const CheckReport& r, int indent) { return to_json(r).dump(indent); }

std::string report_json(const std::vector<CheckReport>& rs, int indent) {
    json a = json::array();
    for (auto& r : rs) a.push_back(to_json(r));
    return a.dump(indent);
}

namespace {

std::string S(Int v) { return std::to_string(v); }
std::string R(const mpq_class& q) { return rat_str(q); }
mpq_class Q(Int v) { return mpq_class(static_cast<long>(v)); }

CheckReport start(const std::string& name, const GhostContext& ctx, CheckReport::Fields extra = {}) {
    CheckReport r;
    r.name = name;
    r.params = {{"p", S(ctx.p)}, {"a", S(ctx.a)}, {"s_eps", S(ctx.s_eps)}};
    for (auto& e : extra) r.params.push_back(e);
    return r;
}

// Sets elapsed time on scope exit.
class Stopwatch {
public:
    explicit Stopwatch(CheckReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        r_.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    CheckReport& r_;
    std::chrono::steady_clock::time_point t0_;
};

// Slopes 1..upto counted with multiplicity; requires upto <= certified_upto.
std::vector<mpq_class> slope_list(const NewtonPolygon& np, Int upto) {
    if (upto > np.certified_upto) throw std::out_of_range("slope_list beyond certified range");
    std::vector<mpq_class> out;
    out.reserve(std::max<Int>(0, upto));
    for (auto& [s, w] : np.slopes)
        for (Int j = 0; j < w && static_cast<Int>(out.size()) < upto; ++j) out.push_back(s);
    return out;
}

void require_class_weight(const GhostContext& ctx, Int k) {
    if (k < 2) throw ParameterError("weight must be >= 2");
    ctx.kb_of(k);
}

bool in_half_plus_z(const mpq_class& s, Int a) {
    mpq_class t = s - frac(a, 2);
    return t.get_den() == 1;
}

GhostContext shifted_context(const GhostContext& ctx, Int s) { return new_context(ctx.p, ctx.a, ctx.res(s)); }

}  // namespace

CheckReport check_ghost_duality(const GhostContext& ctx, Int kb_max) {
    CheckReport r = start("ghost_duality", ctx, {{"kb_max", S(kb_max)}});
    Stopwatch sw(r);
    for (Int kb = 0; kb <= kb_max; ++kb) {
        Int k = ctx.k_of(kb);
        if (k < 2) continue;
        auto d = dims(ctx, k);
        Int h = d.d_new / 2;
        if (h < 1) continue;
        auto v = classical_valuation_sequence(ctx, k, d.d_iw - d.d_ur, true);
        for (Int l = 0; l < h; ++l) {
            Int lhs = v[d.d_iw - d.d_ur - l] - v[d.d_ur + l];
            Int rhs = (k - 2) * (h - l);
            r.expect(lhs == rhs, [&] { return Witness{"k=" + S(k) + " l=" + S(l), S(lhs), "==", S(rhs)}; });
        }
    }
    return r;
}

CheckReport check_mid_slopes(const GhostContext& ctx, Int k) {
    require_class_weight(ctx, k);
    CheckReport r = start("mid_slopes", ctx, {{"k", S(k)}});
    Stopwatch sw(r);
    auto d = dims(ctx, k);
    if (d.d_new == 0) return r;
    auto np = np_certified(ctx, Classical{k}, d.d_iw - d.d_ur);
    auto sl = slope_list(np, d.d_iw - d.d_ur);
    mpq_class target = frac(k - 2, 2);
    for (Int i = d.d_ur + 1; i <= d.d_iw - d.d_ur; ++i)
        r.expect(sl[i - 1] == target, [&] { return Witness{"k=" + S(k) + " i=" + S(i), R(sl[i - 1]), "==", R(target)}; });
    return r;
}

CheckReport check_theta(const GhostContext& ctx, Int k0, Int l_max) {
    if (k0 < 2) throw ParameterError("k0 must be >= 2");
    if (l_max < 0) throw ParameterError("l_max must be >= 0");
    GhostContext ctx1 = shifted_context(ctx, ctx.s_eps + 1 - k0);
    CheckReport r = start("theta", ctx, {{"k0", S(k0)}, {"l_max", S(l_max)}, {"s_eps_prime", S(ctx1.s_eps)}});
    Stopwatch sw(r);
    r.meta = {{"evaluation", "eps' side at w_{2-k0}"},
              {"alternate_reading", "eps' side at w_{k0}; not part of the verdict"}};
    const Int d = d_iw(ctx, k0);
    auto A = classical_valuation_sequence(ctx, k0, d + l_max + 1, false);
    auto B = classical_valuation_sequence(ctx1, 2 - k0, l_max + 1, false);
    auto C = classical_valuation_sequence(ctx1, k0, l_max + 1, false);
    bool alternate = true;
    for (Int l = 0; l <= l_max; ++l) {
        auto at = [&] { return "k0=" + S(k0) + " l=" + S(l); };
        if (!r.expect(A[d + l] >= 0 && A[d + l + 1] >= 0, [&] { return Witness{at(), "finite", "==", "inf"}; })) continue;
        Int lhs = A[d + l + 1] - A[d + l];
        Int rhs = B[l + 1] - B[l] + k0 - 1;
        r.expect(lhs == rhs, [&] { return Witness{at(), S(lhs), "==", S(rhs)}; });
        if (C[l] < 0 || C[l + 1] < 0 || C[l + 1] - C[l] + k0 - 1 != lhs) alternate = false;
    }
    r.meta.emplace_back("alternate_reading_holds", alternate ? "true" : "false");
    // Consequence: slopes after index d are at least k0 - 1.
    if (l_max >= 1) {
        auto np = np_certified(ctx, Classical{k0}, d + l_max);
        auto sl = slope_list(np, d + l_max);
        for (Int l = 1; l <= l_max; ++l)
            r.expect(sl[d + l - 1] >= k0 - 1, [&] { return Witness{"k0=" + S(k0) + " slope " + S(d + l), R(sl[d + l - 1]), ">=", S(k0 - 1)}; });
    }
    return r;
}

CheckReport check_atkin_lehner(const GhostContext& ctx, Int k0) {
    if (k0 < 2) throw ParameterError("k0 must be >= 2");
    GhostContext ctx2 = shifted_context(ctx, k0 - 2 - ctx.a - ctx.s_eps);
    CheckReport r = start("atkin_lehner", ctx, {{"k0", S(k0)}, {"s_eps_second", S(ctx2.s_eps)}});
    Stopwatch sw(r);
    const Int d = d_iw(ctx, k0);
    if (d < 1) return r;
    const bool same = ctx.in_class(k0);
    Int ur = same ? d_ur(ctx, k0) : 0;
    auto A = classical_valuation_sequence(ctx, k0, d, true);
    auto B = classical_valuation_sequence(ctx2, k0, d, true);
    for (Int l = 1; l <= d; ++l) {
        Int lhs = (A[d + 1 - l] - A[d - l]) + (B[l] - B[l - 1]);
        Int rhs = same && ur + 1 <= l && l <= d - ur ? k0 - 2 : k0 - 1;
        r.expect(lhs == rhs, [&] { return Witness{"k0=" + S(k0) + " l=" + S(l), S(lhs), "==", S(rhs)}; });
    }
    if (!same) {
        auto sa = slope_list(np_certified(ctx, Classical{k0}, d), d);
        auto sb = slope_list(np_certified(ctx2, Classical{k0}, d), d);
        for (Int l = 1; l <= d; ++l) {
            mpq_class sum = sa[l - 1] + sb[d - l];
            auto at = [&] { return "k0=" + S(k0) + " l=" + S(l); };
            r.expect(sum == k0 - 1, [&] { return Witness{at() + " pair", R(sum), "==", S(k0 - 1)}; });
            r.expect(sa[l - 1] <= k0 - 1, [&] { return Witness{at() + " bound", R(sa[l - 1]), "<=", S(k0 - 1)}; });
        }
    }
    return r;
}

CheckReport check_p_stabilization(const GhostContext& ctx, Int k0) {
    require_class_weight(ctx, k0);
    CheckReport r = start("p_stabilization", ctx, {{"k0", S(k0)}});
    Stopwatch sw(r);
    auto dm = dims(ctx, k0);
    const Int d = dm.d_iw;
    if (d < 1) return r;
    auto sl = slope_list(np_certified(ctx, Classical{k0}, d), d);
    for (Int l = 1; l <= dm.d_ur; ++l) {
        mpq_class sum = sl[l - 1] + sl[d - l];
        r.expect(sum == k0 - 1, [&] { return Witness{"k0=" + S(k0) + " l=" + S(l), R(sum), "==", S(k0 - 1)}; });
    }
    for (Int i = 1; i <= d; ++i)
        r.expect(sl[i - 1] <= k0 - 1, [&] { return Witness{"k0=" + S(k0) + " slope " + S(i), R(sl[i - 1]), "<=", S(k0 - 1)}; });
    return r;
}

CheckReport check_gouvea(const GhostContext& ctx, Int k0) {
    require_class_weight(ctx, k0);
    CheckReport r = start("gouvea", ctx, {{"k0", S(k0)}});
    Stopwatch sw(r);
    const Int p = ctx.p, a = ctx.a;
    const Int u = d_ur(ctx, k0);
    if (u < 1) return r;
    Int G = (p - 1) / 2 * (u - 1) - ctx.delta_eps + ctx.beta(u - 1);
    Int F = floor_div(k0 - 1 - std::min(a + 1, p - 2 - a), p + 1);
    std::string at = "k0=" + S(k0);
    r.expect(G <= F, [&] { return Witness{at + " bound", S(G), "<=", S(F)}; });
    auto sl = slope_list(np_certified(ctx, Classical{k0}, u), u);
    for (Int i = 1; i <= u; ++i) r.expect(sl[i - 1] <= G, [&] { return Witness{at + " slope " + S(i), R(sl[i - 1]), "<=", S(G)}; });
    auto v = classical_valuation_sequence(ctx, k0, u, false);
    for (Int i = 1; i <= u; ++i)
        r.expect(v[u] - v[u - i] <= i * G, [&] { return Witness{at + " i=" + S(i), S(v[u] - v[u - i]), "<=", S(i * G)}; });
    return r;
}

CheckReport check_halo(const GhostContext& ctx, const mpq_class& t, Int n_max) {
    if (t <= 0 || t >= 1) throw ParameterError("t must lie in (0, 1)");
    CheckReport r = start("halo", ctx, {{"t", R(t)}, {"n_max", S(n_max)}});
    Stopwatch sw(r);
    auto np = np_certified(ctx, Boundary{t}, n_max);
    auto sl = slope_list(np, n_max);
    Int prev = degree(ctx, 0);
    for (Int n = 0; n < n_max; ++n) {
        Int next = degree(ctx, n + 1);
        mpq_class want = t * (next - prev);
        r.expect(sl[n] == want, [&] { return Witness{"n=" + S(n + 1), R(sl[n]), "==", R(want)}; });
        if (n >= 1) r.expect(sl[n] > sl[n - 1], [&] { return Witness{"n=" + S(n + 1) + " increase", R(sl[n]), ">", R(sl[n - 1])}; });
        prev = next;
    }
    Int x = np.vertices.front().first;
    for (auto& [s, w] : np.slopes) {
        if (x + w > n_max) break;
        r.expect(w == 1, [&] { return Witness{"segment at x=" + S(x), S(w), "==", "1"}; });
        x += w;
    }
    return r;
}

CheckReport check_integrality(const GhostContext& ctx, Int k0, Int n_max) {
    require_class_weight(ctx, k0);
    if (n_max < 0) n_max = d_iw(ctx, k0) + ctx.p;
    CheckReport r = start("integrality", ctx, {{"k0", S(k0)}, {"n_max", S(n_max)}});
    Stopwatch sw(r);
    auto np = np_certified(ctx, Classical{k0}, n_max);
    Int x = np.vertices.front().first;
    for (auto& [s, w] : np.slopes) {
        if (x + w > np.certified_upto) break;
        std::string at = "k0=" + S(k0) + " segment [" + S(x) + "," + S(x + w) + "]";
        if (w == 1) {
            r.expect(s.get_den() == 1, [&] { return Witness{at, R(s), "in", "Z"}; });
        } else {
            r.expect(w % 2 == 0, [&] { return Witness{at + " width", S(w), "in", "2Z"}; });
            r.expect(in_half_plus_z(s, ctx.a), [&] { return Witness{at, R(s), "in", "a/2+Z"}; });
        }
        x += w;
    }
    return r;
}

Int max_vp_in(Int lo, Int hi, Int p) {
    if (lo < 1 || lo > hi) throw ParameterError("max_vp_in needs 1 <= lo <= hi");
    Int e = 0, pe = 1;
    while (pe <= hi / p) {
        Int next = pe * p;
        if (floor_div(hi, next) < ceil_div(lo, next)) break;
        pe = next;
        ++e;
    }
    return e;
}

std::vector<std::pair<Int, Int>> k_prime_windows(const GhostContext& ctx, Int k, Int l) {
    const Int c = d_iw(ctx, k) / 2;
    std::vector<std::pair<Int, Int>> w;
    auto add = [&](Int lo, Int hi) {
        lo = std::max<Int>(0, lo);
        if (lo <= hi) w.emplace_back(lo, hi);
    };
    // d_ur(k') in [c-l+1, c+l-1].
    add(k_max_bullet(ctx, c - l) + 1, k_max_bullet(ctx, c + l - 1));
    // d_iw(k') - d_ur(k') in [c-l+1, c+l-1].
    add(k_min_bullet(ctx, c - l).value, k_min_bullet(ctx, c + l - 1).value - 1);
    // d_iw(k')/2 in [c-l, c+l].
    add(k_mid_bullet(ctx, c - l), k_mid_bullet(ctx, c + l));
    return w;
}

CheckReport check_delta_estimates(const GhostContext& ctx, Int k, bool with_k_prime, const DeltaCache* cache) {
    require_class_weight(ctx, k);
    CheckReport r = start("delta_estimates", ctx, {{"k", S(k)}, {"with_k_prime", with_k_prime ? "true" : "false"}});
    Stopwatch sw(r);
    const Int p = ctx.p, a = ctx.a, kb = ctx.kb_of(k);
    std::shared_ptr<const DeltaProfile> prof;
    if (cache && cache->context() == ctx)
        prof = cache->get(k);
    else
        prof = std::make_shared<const DeltaProfile>(delta_profile(ctx, k));
    const Int h = prof->half_new, c = prof->half_iw;
    if (h < 1) return r;
    const Int hp = (p + 1) / 2;
    auto raw2 = [&](Int l) { return prof->raw2[l + h]; };
    auto theta_of = [&](Int l) {
        Int n = c - l;
        return ctx.beta(n - 1) - ctx.beta(n) + hp;
    };
    auto eta_of = [&](Int l) { return (p - 1) / 2 * kb - hp * ctx.delta_eps + ctx.beta(c - l) - 1; };

    for (Int l = 1; l <= h; ++l) {
        auto at = [&] { return "k=" + S(k) + " l=" + S(l); };
        mpq_class gap = frac(raw2(l) - raw2(l - 1), 2);
        Int theta = theta_of(l), eta = eta_of(l);
        r.expect(theta == a + 2 || theta == p - 1 - a, [&] { return Witness{at() + " theta", S(theta), "in", "{" + S(a + 2) + "," + S(p - 1 - a) + "}"}; });

        // Lower bound on the gap.
        mpq_class lb = frac(std::min(a + 2, p - 1 - a), 2) + frac((p - 1) * (l - 1), 2);
        mpq_class lb2 = frac(3, 2) + frac((p - 1) * (l - 1), 2);
        r.expect(gap >= lb, [&] { return Witness{at() + " gap lower", R(gap), ">=", R(lb)}; });
        r.expect(lb >= lb2, [&] { return Witness{at() + " gap lower chain", R(lb), ">=", R(lb2)}; });

        // Exact digit form of the gap and the two boundary identities.
        Int n = c - l;
        Int X = eta - hp * (l - 1), Y = eta + theta + hp * (l - 1);
        if (n >= 1) {
            r.expect(k_max_bullet(ctx, n) - kb == X, [&] { return Witness{at() + " k_max", S(k_max_bullet(ctx, n) - kb), "==", S(X)}; });
            r.expect(p * kb - k_min_bullet(ctx, n).tilde == Y, [&] { return Witness{at() + " k_min~", S(p * kb - k_min_bullet(ctx, n).tilde), "==", S(Y)}; });
        }
        if (X >= 0) {
            mpq_class exact = frac((p - 1) * (l - 1) + theta, 2) +
                              frac(theta + digit_sum(X, p) + 2 * digit_sum(l - 1, p) - digit_sum(Y, p), p - 1);
            r.expect(gap == exact, [&] { return Witness{at() + " digit form", R(gap), "==", R(exact)}; });
        }

        // Upper bound on the gap.
        if (X >= 1) {
            Int beta = max_vp_in(X, Y, p);
            mpq_class ub = frac((p - 1) * l + 3, 2) + Q(beta + floor_log(l, p));
            r.expect(gap <= ub, [&] { return Witness{at() + " gap upper", R(gap), "<=", R(ub)}; });
        }

        // Hull defect.
        mpq_class D = prof->raw_at(l) - prof->hull_at(l);
        if (p >= 7) {
            long double x = std::log(static_cast<long double>(l)) / std::log(static_cast<long double>(p));
            Int pe = 1, e = 0;
            while (pe < l) pe *= p, ++e;
            if (pe == l) x = static_cast<long double>(e);
            long double bound = 3 * x * x;
            long double Dd = D.get_d();
            bool ok = Dd <= bound;
            if (std::fabs(static_cast<double>(Dd - bound)) < 1e-12 && pe != l) ok = false;
            r.expect(ok, [&] { return Witness{at() + " hull defect", R(D), "<=", "3(log_p l)^2 ~ " + std::to_string(static_cast<double>(bound))}; });
        }
        if (l < 2 * p && l != p) r.expect(D == 0, [&] { return Witness{at() + " hull equal", R(D), "==", "0/1"}; });
        if (l == p) r.expect(D <= 1, [&] { return Witness{at() + " hull defect at p", R(D), "<=", "1/1"}; });

        // Strengthened bound against nearby weights.
        if (with_k_prime) {
            Int best = -1, arg = 0;
            for (auto [lo, hi] : k_prime_windows(ctx, k, l)) {
                Int u = lo - kb, v = hi - kb;
                if (v >= 1) {
                    Int from = std::max<Int>(1, u);
                    Int e = max_vp_in(from, v, p);
                    if (e > best) {
                        Int pe = 1;
                        for (Int i = 0; i < e; ++i) pe *= p;
                        best = e;
                        arg = kb + ceil_div(from, pe) * pe;
                    }
                }
                if (u <= -1) {
                    Int from = std::max<Int>(1, -v);
                    Int e = max_vp_in(from, -u, p);
                    if (e > best) {
                        Int pe = 1;
                        for (Int i = 0; i < e; ++i) pe *= p;
                        best = e;
                        arg = kb - ceil_div(from, pe) * pe;
                    }
                }
            }
            if (best >= 0) {
                Int dist = 1 + best;
                mpq_class lhs = gap - dist;
                mpq_class rhs = frac(1, 2) + frac((p - 1) * (l - 1), 2) - Q(floor_log((p + 1) * l, p));
                auto atk = [&] { return at() + " k'=" + S(ctx.k_of(arg)); };
                r.expect(lhs >= rhs, [&] { return Witness{atk() + " near weight", R(lhs), ">=", R(rhs)}; });
                if (l >= 2)
                    r.expect(rhs >= frac(2 * l - 1, 2), [&] { return Witness{atk() + " near weight chain", R(rhs), ">=", R(frac(2 * l - 1, 2))}; });
                else
                    r.expect(lhs >= frac(1, 2), [&] { return Witness{atk() + " near weight l=1", R(lhs), ">=", "1/2"}; });
            }
        }
    }

    // Second differences.
    for (Int l = 1; l <= h - 1; ++l) {
        auto at = [&] { return "k=" + S(k) + " l=" + S(l); };
        mpq_class second = frac(raw2(l + 1) - 2 * raw2(l) + raw2(l - 1), 2);
        Int v = vp_small(l, p);
        Int b1 = p - 1 - theta_of(l) - 2 * v;
        r.expect(second >= b1, [&] { return Witness{at() + " convexity", R(second), ">=", S(b1)}; });
        r.expect(b1 >= 1 - 2 * v, [&] { return Witness{at() + " convexity chain", S(b1), ">=", S(1 - 2 * v)}; });
    }
    return r;
}

CheckReport check_nested(const GhostContext& ctx, const WeightPoint& w, Int n_max, const DeltaCache* cache) {
    CheckReport r = start("nested", ctx, {{"point", format_point(w)}, {"n_max", S(n_max)}});
    Stopwatch sw(r);
    auto ranges = near_steinberg_ranges(ctx, w, n_max, cache);
    auto v = check_nested(ranges);
    auto str = [](const NearSteinbergRange& x) {
        return "k=" + S(x.k) + " (" + S(x.lo) + "," + S(x.hi) + ")";
    };
    if (v.nested)
        r.expect(true, [&] { return Witness{"", "", "", ""}; });
    else
        r.expect(false, [&] { return Witness{format_point(w), str(v.witness->first), "nested with", str(v.witness->second)}; });
    r.meta.emplace_back("ranges", S(static_cast<Int>(ranges.size())));
    return r;
}

CheckReport check_vertex_theorem(const GhostContext& ctx, const WeightPoint& w, Int n_max, const DeltaCache* cache) {
    CheckReport r = start("vertex_theorem", ctx, {{"point", format_point(w)}, {"n_max", S(n_max)}});
    Stopwatch sw(r);
    auto rep = vertex_theorem_check(ctx, w, n_max, cache);
    r.checked += n_max + 1;
    for (auto& msg : rep.violations) r.expect(false, [&] { return Witness{format_point(w), msg, "", ""}; });
    if (!rep.ok && rep.violations.empty()) r.expect(false, [&] { return Witness{format_point(w), "failed", "", ""}; });
    r.meta.emplace_back("ranges", S(static_cast<Int>(rep.ranges.size())));
    return r;
}

CheckReport check_delta_vertices(const GhostContext& ctx, Int k0, const DeltaCache* cache) {
    require_class_weight(ctx, k0);
    CheckReport r = start("delta_vertices", ctx, {{"k0", S(k0)}});
    Stopwatch sw(r);
    r.meta = {{"slope_classes", "slopes of the unshifted valuations"}};
    auto reps = delta_vertex_scan(ctx, k0, cache);
    auto b = [](bool x) { return std::string(x ? "1" : "0"); };
    for (std::size_t l = 0; l < reps.size(); ++l) {
        auto& x = reps[l];
        r.expect(x.ok(), [&] { return Witness{"k0=" + S(k0) + " l=" + S(static_cast<Int>(l)), "non_vertex=" + b(x.non_vertex) + " upper=" + b(x.upper_witness), "==", "lower=" + b(x.lower_witness)}; });
    }
    std::shared_ptr<const DeltaProfile> prof;
    if (cache && cache->context() == ctx)
        prof = cache->get(k0);
    else
        prof = std::make_shared<const DeltaProfile>(delta_profile(ctx, k0));
    auto& X = prof->hull_vertices;
    auto& Y = prof->hull_vertex_y2;
    for (std::size_t j = 1; j < X.size(); ++j) {
        Int w = X[j] - X[j - 1];
        mpq_class s = frac(Y[j] - Y[j - 1], 2 * w) + frac(k0 - 2, 2);
        std::string at = "k0=" + S(k0) + " segment [" + S(X[j - 1]) + "," + S(X[j]) + "]";
        if (w == 1) {
            r.expect(s.get_den() == 1, [&] { return Witness{at, R(s), "in", "Z"}; });
        } else {
            r.expect(w % 2 == 0, [&] { return Witness{at + " width", S(w), "in", "2Z"}; });
            r.expect(in_half_plus_z(s, ctx.a), [&] { return Witness{at, R(s), "in", "a/2+Z"}; });
        }
    }
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "ghost_duality", "mid_slopes", "theta",           "atkin_lehner", "p_stabilization", "gouvea",
        "halo",          "integrality", "delta_estimates", "nested",       "vertex_theorem",  "delta_vertices"};
    return names;
}

bool is_suite(const std::string& name) {
    for (auto& n : suite_names())
        if (n == name) return true;
    return false;
}

namespace {

struct RandomPoint {
    WeightPoint w;
    Int n_max;
};

std::vector<RandomPoint> random_points(const GhostContext& ctx, const SweepOptions& opt) {
    std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(ctx.p) << 32) ^
                        (static_cast<std::uint64_t>(ctx.a) << 16) ^ static_cast<std::uint64_t>(ctx.s_eps));
    auto uni = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
    std::vector<RandomPoint> out;
    const Int top = std::max<Int>(1, opt.kb_max);
    for (Int i = 0; i < opt.points; ++i) {
        Int kb0 = uni(0, top);
        Int k0 = ctx.k_of(kb0);
        if (uni(0, 4) == 0) k0 = std::max<Int>(2, k0 + uni(1, ctx.p - 2));
        if (k0 < 2) k0 = ctx.k_of(kb0 + 1);
        // Radii cluster around the gaps of nearby profiles; a few land below 1.
        Int den = uni(1, 6);
        Int num = uni(1, 14 * den);
        mpq_class r = frac(num, den);
        Int n_max = d_iw(ctx, k0) + 2;
        out.push_back({make_perturbed(k0, r), std::max<Int>(2, n_max)});
    }
    return out;
}

}  // namespace

CheckReport run_suite(const std::string& suite, const GhostContext& ctx, const SweepOptions& opt,
                      const DeltaCache* cache) {
    if (!is_suite(suite)) throw ParameterError("unknown suite '" + suite + "'");
    CheckReport r = start(suite, ctx, {{"kb_max", S(opt.kb_max)}});
    Stopwatch sw(r);
    std::unique_ptr<DeltaCache> own;
    if (!cache || !(cache->context() == ctx)) {
        own = std::make_unique<DeltaCache>(ctx);
        cache = own.get();
    }
    const Int k_top = ctx.k_of(opt.kb_max);
    auto each_class_weight = [&](auto&& f) {
        for (Int kb = 0; kb <= opt.kb_max; ++kb)
            if (ctx.k_of(kb) >= 2) f(ctx.k_of(kb));
    };
    if (suite == "ghost_duality") {
        r.absorb(check_ghost_duality(ctx, opt.kb_max));
    } else if (suite == "mid_slopes") {
        each_class_weight([&](Int k) { r.absorb(check_mid_slopes(ctx, k)); });
    } else if (suite == "theta") {
        for (Int k0 = 2; k0 <= k_top; ++k0) r.absorb(check_theta(ctx, k0, opt.theta_l_max));
    } else if (suite == "atkin_lehner") {
        for (Int k0 = 2; k0 <= k_top; ++k0) r.absorb(check_atkin_lehner(ctx, k0));
    } else if (suite == "p_stabilization") {
        each_class_weight([&](Int k) { r.absorb(check_p_stabilization(ctx, k)); });
    } else if (suite == "gouvea") {
        each_class_weight([&](Int k) { r.absorb(check_gouvea(ctx, k)); });
    } else if (suite == "halo") {
        for (mpq_class t : {frac(1, 2), frac(1, 3), frac(2, 7), frac(5, 6)}) r.absorb(check_halo(ctx, t, opt.halo_n_max));
    } else if (suite == "integrality") {
        each_class_weight([&](Int k) { r.absorb(check_integrality(ctx, k)); });
    } else if (suite == "delta_estimates") {
        each_class_weight([&](Int k) { r.absorb(check_delta_estimates(ctx, k, opt.with_k_prime, cache)); });
    } else if (suite == "nested") {
        for (auto& pt : random_points(ctx, opt)) r.absorb(check_nested(ctx, pt.w, pt.n_max, cache));
        for (mpq_class t : {frac(1, 2), frac(3, 4)}) r.absorb(check_nested(ctx, Boundary{t}, opt.kb_max + 1, cache));
    } else if (suite == "vertex_theorem") {
        Int n = 0;
        for (auto& pt : random_points(ctx, opt)) {
            r.absorb(check_vertex_theorem(ctx, pt.w, pt.n_max, cache));
            ++n;
        }
        r.meta.emplace_back("points", S(n));
    } else if (suite == "delta_vertices") {
        each_class_weight([&](Int k) { r.absorb(check_delta_vertices(ctx, k, cache)); });
    }
    return r;
}

std::vector<CheckReport> scan(const std::vector<Int>& primes, const std::vector<std::string>& suites,
                              const SweepOptions& opt, unsigned workers) {
    for (auto& s : suites)
        if (!is_suite(s)) throw ParameterError("unknown suite '" + s + "'");
    std::vector<GhostContext> ctxs;
    for (Int p : primes)
        for (Int a = 1; a <= p - 4; ++a)
            for (Int s = 0; s <= p - 2; ++s) ctxs.push_back(new_context(p, a, s));
    std::vector<CheckReport> out(ctxs.size() * suites.size());
    parallel_for(
        ctxs.size(),
        [&](std::size_t i) {
            DeltaCache cache(ctxs[i]);
            for (std::size_t j = 0; j < suites.size(); ++j)
                out[i * suites.size() + j] = run_suite(suites[j], ctxs[i], opt, &cache);
        },
        workers);
    return out;
}

}  // namespace ghostline
