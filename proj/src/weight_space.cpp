#include "ghostline/weight_space.hpp"

#include <charconv>

namespace ghostline {

Int GhostContext::kb_of(Int k) const {
    if (!in_class(k))
        throw ParameterError("weight " + std::to_string(k) + " is not congruent to k_eps = " +
                             std::to_string(k_eps) + " mod " + std::to_string(p - 1));
    return (k - k_eps) / (p - 1);
}

GhostContext new_context(Int p, Int a, Int s_eps) {
    if (!is_prime(p) || p < 5)
        throw ParameterError("p must be a prime >= 5 (got " + std::to_string(p) + ")");
    if (a < 1 || a > p - 4)
        throw ParameterError("a must lie in [1, p-4] = [1, " + std::to_string(p - 4) + "] (got " +
                             std::to_string(a) + ")");
    if (s_eps < 0 || s_eps > p - 2)
        throw ParameterError("s_eps must lie in [0, p-2] = [0, " + std::to_string(p - 2) +
                             "] (got " + std::to_string(s_eps) + ")");
    GhostContext c;
    c.p = p;
    c.a = a;
    c.s_eps = s_eps;
    c.k_eps = 2 + c.res(a + 2 * s_eps);
    c.delta_eps = (s_eps + c.res(a + s_eps)) / (p - 1);
    if ((p - 1) * c.delta_eps + c.res(a + 2 * s_eps) != s_eps + c.res(a + s_eps))
        throw std::logic_error("delta identity violated");
    if (a + s_eps < p - 1) {
        c.t1 = s_eps + c.delta_eps;
        c.t2 = a + s_eps + c.delta_eps + 2;
    } else {
        c.t1 = c.res(a + s_eps) + c.delta_eps + 1;
        c.t2 = s_eps + c.delta_eps + 1;
    }
    c.beta_even = c.t1;
    c.beta_odd = c.t2 - (p + 1) / 2;
    return c;
}

WeightPoint make_perturbed(Int k0, const mpq_class& r) {
    if (r <= 0) throw ParameterError("perturbation radius must be positive");
    mpq_class q = r;
    q.canonicalize();
    return Perturbed{k0, q};
}

WeightPoint make_boundary(const mpq_class& t) {
    if (t <= 0 || t >= 1) throw ParameterError("boundary valuation must lie in (0, 1)");
    mpq_class q = t;
    q.canonicalize();
    return Boundary{q};
}

ExtRat vp_between_weights(const GhostContext& ctx, Int k1, Int k2) {
    if (k1 == k2) return ExtRat::infinity();
    return ExtRat(static_cast<long>(1 + vp_small(k1 - k2, ctx.p)));
}

ExtRat vp_point_to_weight(const GhostContext& ctx, const WeightPoint& w, Int k) {
    if (auto c = std::get_if<Classical>(&w)) return vp_between_weights(ctx, c->k, k);
    if (auto q = std::get_if<Perturbed>(&w)) {
        if (q->k0 == k) return ExtRat(q->r);
        return min(ExtRat(q->r), vp_between_weights(ctx, q->k0, k));
    }
    return ExtRat(std::get<Boundary>(w).t);
}

static Int parse_int(const std::string& s) {
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParameterError("malformed integer '" + s + "'");
    return v;
}

WeightPoint parse_point(const std::string& s) {
    auto c1 = s.find(':');
    if (c1 == std::string::npos) throw ParameterError("malformed point '" + s + "'");
    std::string kind = s.substr(0, c1), rest = s.substr(c1 + 1);
    if (kind == "classical") return Classical{parse_int(rest)};
    if (kind == "boundary") return make_boundary(parse_rational(rest));
    if (kind == "perturbed") {
        auto c2 = rest.find(':');
        if (c2 == std::string::npos) throw ParameterError("malformed point '" + s + "'");
        return make_perturbed(parse_int(rest.substr(0, c2)), parse_rational(rest.substr(c2 + 1)));
    }
    throw ParameterError("unknown point kind '" + kind + "'");
}

std::string format_point(const WeightPoint& w) {
    if (auto c = std::get_if<Classical>(&w)) return "classical:" + std::to_string(c->k);
    if (auto q = std::get_if<Perturbed>(&w))
        return "perturbed:" + std::to_string(q->k0) + ":" + rat_str(q->r);
    return "boundary:" + rat_str(std::get<Boundary>(w).t);
}

}  // namespace ghostline
