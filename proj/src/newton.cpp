#include "ghostline/newton.hpp"

#include <algorithm>

namespace ghostline {

namespace {

// > 0 when o, a, b turn counterclockwise.
int turn(const std::pair<Int, mpq_class>& o, const std::pair<Int, mpq_class>& a,
         const std::pair<Int, mpq_class>& b) {
    mpq_class lhs = (b.second - o.second) * (a.first - o.first);
    mpq_class rhs = (a.second - o.second) * (b.first - o.first);
    return cmp(lhs, rhs);
}

NewtonPolygon hull_of(std::vector<std::pair<Int, mpq_class>> pts) {
    NewtonPolygon np;
    for (auto& pt : pts) {
        while (np.vertices.size() >= 2 &&
               turn(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0)
            np.vertices.pop_back();
        np.vertices.push_back(pt);
    }
    for (std::size_t i = 1; i < np.vertices.size(); ++i) {
        Int w = np.vertices[i].first - np.vertices[i - 1].first;
        mpq_class s = (np.vertices[i].second - np.vertices[i - 1].second) / w;
        np.slopes.emplace_back(s, w);
    }
    return np;
}

// Same on integer ordinates, -1 marking +inf.
NewtonPolygon hull_of_int(const std::vector<Int>& ys) {
    std::vector<std::pair<Int, Int>> h;
    for (Int x = 0; x < static_cast<Int>(ys.size()); ++x) {
        Int y = ys[x];
        if (y < 0) continue;
        while (h.size() >= 2) {
            auto& o = h[h.size() - 2];
            auto& a = h.back();
            __int128 lhs = static_cast<__int128>(y - o.second) * (a.first - o.first);
            __int128 rhs = static_cast<__int128>(a.second - o.second) * (x - o.first);
            if (lhs > rhs) break;
            h.pop_back();
        }
        h.emplace_back(x, y);
    }
    NewtonPolygon np;
    for (auto& [x, y] : h) np.vertices.emplace_back(x, mpq_class(static_cast<long>(y)));
    for (std::size_t i = 1; i < h.size(); ++i) {
        Int w = h[i].first - h[i - 1].first;
        np.slopes.emplace_back(frac(h[i].second - h[i - 1].second, w), w);
    }
    return np;
}

}  // namespace

NewtonPolygon lower_convex_hull(const std::vector<std::pair<Int, ExtRat>>& points) {
    std::vector<std::pair<Int, mpq_class>> pts;
    for (auto& [x, y] : points)
        if (y.is_finite()) pts.emplace_back(x, y.value());
    if (pts.empty()) throw ParameterError("lower_convex_hull: no finite points");
    std::sort(pts.begin(), pts.end(), [](auto& l, auto& r) { return l.first < r.first; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first == pts[i - 1].first) throw ParameterError("lower_convex_hull: repeated x");
    NewtonPolygon np = hull_of(std::move(pts));
    np.certified_upto = np.vertices.back().first;
    np.window_end = np.certified_upto;
    return np;
}

std::optional<mpq_class> future_increment_bound(const GhostContext& ctx, const WeightPoint& w, Int n) {
    const Int p = ctx.p;
    auto plus_count = [&](Int j) {
        auto ir = increment_ranges(ctx, j);
        return std::max<Int>(0, ir.plus_hi - ir.plus_lo + 1);
    };
    auto minus_count = [&](Int j) {
        auto ir = increment_ranges(ctx, j);
        return std::max<Int>(0, ir.minus_hi - ir.minus_lo + 1);
    };

    // Constant profile: every factor has valuation c, increments are c times the degree jump.
    std::optional<mpq_class> constant;
    if (auto b = std::get_if<Boundary>(&w)) constant = b->t;
    if (auto q = std::get_if<Perturbed>(&w); q && q->r <= 1) constant = q->r;
    if (constant) return mpq_class(*constant * (plus_count(n) - minus_count(n)));

    Int k0;
    std::optional<Int> cap;  // floor(r) - 1
    if (auto c = std::get_if<Classical>(&w)) {
        k0 = c->k;
    } else {
        auto& q = std::get<Perturbed>(w);
        k0 = q.k0;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.r.get_num_mpz_t(), q.r.get_den_mpz_t());
        cap = fl.get_si() - 1;
    }
    // The base weight must lie below every factor that can still move.
    Int first = std::min(std::max<Int>(0, k_min_bullet(ctx, n).value), k_mid_bullet(ctx, n) + 1);
    if (k0 >= ctx.k_of(std::max<Int>(0, first))) return std::nullopt;

    auto lower_plus = [&](Int j) -> mpq_class {
        Int P = plus_count(j);
        Int s = P;
        Int pe = p;
        for (Int e = 1; pe <= P && (!cap || e <= *cap); ++e) {
            s += P / pe;
            if (pe > P / p) break;
            pe *= p;
        }
        return mpq_class(static_cast<long>(s));
    };
    auto upper_minus = [&](Int j) -> mpq_class {
        Int M = minus_count(j);
        Int X = std::max<Int>(1, ctx.k_of(k_mid_bullet(ctx, j)) - k0);
        return frac(M * p, p - 1) +
               static_cast<long>(floor_log(X, p));
    };
    mpq_class best = lower_plus(n) - upper_minus(n);
    for (Int j = n + 1; j <= n + 2; ++j) best = std::min(best, mpq_class(lower_plus(j) - upper_minus(j)));
    return best;
}

NewtonPolygon np_of_ghost(const GhostContext& ctx, const WeightPoint& w, Int n_max, Int buffer) {
    if (n_max < 1) throw ParameterError("n_max must be >= 1");
    if (buffer < 0) throw ParameterError("buffer must be >= 0");
    const Int N = n_max + buffer;
    NewtonPolygon np;
    bool last_inf;
    if (auto c = std::get_if<Classical>(&w)) {
        auto seq = classical_valuation_sequence(ctx, c->k, N, false);
        last_inf = seq[N] < 0;
        np = hull_of_int(seq);
    } else {
        auto seq = valuation_sequence(ctx, w, N);
        std::vector<std::pair<Int, mpq_class>> pts;
        for (Int n = 0; n <= N; ++n)
            if (seq[n].is_finite()) pts.emplace_back(n, seq[n].value());
        last_inf = seq[N].is_inf();
        np = hull_of(std::move(pts));
    }
    np.window_end = N;
    np.buffer_used = buffer;
    np.certified_upto = 0;

    if (last_inf) return np;
    auto bound = future_increment_bound(ctx, w, N);
    if (!bound) return np;
    // Vertex i (not the last) is final once every later increment is at least the slope ending at i.
    for (std::size_t i = 1; i + 1 < np.vertices.size(); ++i) {
        if (np.slopes[i - 1].first > *bound) break;
        np.certified_upto = np.vertices[i].first;
    }
    return np;
}

NewtonPolygon np_certified(const GhostContext& ctx, const WeightPoint& w, Int n_max, Int buffer) {
    if (buffer < 0) buffer = 2 * ctx.p + 8;
    // At a ghost zero w_k the window has to clear the block of vanishing coefficients.
    if (auto c = std::get_if<Classical>(&w); c && c->k >= 2 && ctx.in_class(c->k)) {
        auto d = dims(ctx, c->k);
        if (n_max > d.d_ur && n_max + buffer < d.d_iw - d.d_ur) buffer = d.d_iw - d.d_ur - n_max + buffer;
    }
    for (int attempt = 0; attempt <= 4; ++attempt, buffer *= 2) {
        NewtonPolygon np = np_of_ghost(ctx, w, n_max, buffer);
        if (np.certified_upto >= n_max) return np;
    }
    throw CertificationError("Newton polygon at " + format_point(w) + " not certified up to n = " +
                             std::to_string(n_max) + " (final buffer " + std::to_string(buffer / 2) + ")");
}

bool is_vertex(const NewtonPolygon& np, Int n) {
    if (n < 0 || n > np.certified_upto)
        throw std::out_of_range("is_vertex: index " + std::to_string(n) + " beyond certified range");
    for (auto& v : np.vertices)
        if (v.first == n) return true;
    return false;
}

mpq_class slope_at(const NewtonPolygon& np, Int i) {
    if (i < 1 || i > np.certified_upto)
        throw std::out_of_range("slope_at: index " + std::to_string(i) + " beyond certified range");
    Int x0 = np.vertices.front().first;
    for (auto& [s, w] : np.slopes) {
        if (i <= x0 + w) return s;
        x0 += w;
    }
    throw std::out_of_range("slope_at: index past hull");
}

}  // namespace ghostline
