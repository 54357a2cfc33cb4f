// One pass/fail line per acceptance criterion, exact comparisons throughout.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ghostline/parallel.hpp"
#include "ghostline/verify.hpp"
#include "json.hpp"

using namespace ghostline;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string run_cli(const std::string& args, int& code) {
    std::string cmd = std::string(GHOSTLINE_CLI_PATH) + " " + args;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) {
        code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

Outcome dimension_tables() {
    Outcome o;
    const Int iw[6][13] = {
        {1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4, 5}, {0, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4},
        {0, 0, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4}, {0, 0, 0, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4},
        {1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 4, 5}, {0, 1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 4},
    };
    const Int tri[6][7][3] = {
        {{4, 1, 0}, {10, 1, 2}, {16, 1, 4}, {22, 1, 6}, {28, 2, 6}, {34, 2, 8}, {40, 2, 10}},
        {{6, 0, 2}, {12, 1, 2}, {18, 1, 4}, {24, 1, 6}, {30, 1, 8}, {36, 2, 8}, {42, 2, 10}},
        {{2, 0, 0}, {8, 0, 2}, {14, 0, 4}, {20, 1, 4}, {26, 1, 6}, {32, 1, 8}, {38, 1, 10}},
        {{4, 0, 0}, {10, 0, 2}, {16, 0, 4}, {22, 0, 6}, {28, 1, 6}, {34, 1, 8}, {40, 1, 10}},
        {{6, 0, 2}, {12, 1, 2}, {18, 1, 4}, {24, 1, 6}, {30, 1, 8}, {36, 2, 8}, {42, 2, 10}},
        {{2, 0, 0}, {8, 0, 2}, {14, 0, 4}, {20, 1, 4}, {26, 1, 6}, {32, 1, 8}, {38, 1, 10}},
    };
    int code = 0;
    auto out = run_cli("dims --p 7 --a 2 --kmax 42 --format json", code);
    o.require(code == 0, "dims exited with " + std::to_string(code));
    if (!o.pass) return o;
    auto j = json::parse(out);
    o.require(j["disks"].size() == 6, "expected six disks");
    if (!o.pass) return o;
    for (int s = 0; s < 6; ++s) {
        auto& d = j["disks"][s];
        for (int k = 2; k <= 14; ++k)
            o.require(d["d_iw"][k - 2] == json::array({k, iw[s][k - 2]}),
                      "d_iw cell s=" + std::to_string(s) + " k=" + std::to_string(k));
        for (int i = 0; i < 7; ++i)
            o.require(d["triples"][i] == json::array({tri[s][i][0], tri[s][i][1], tri[s][i][2]}),
                      "triple s=" + std::to_string(s) + " #" + std::to_string(i));
    }
    return o;
}

Outcome ghost_coefficients() {
    Outcome o;
    using F = std::vector<std::pair<Int, Int>>;
    auto span = [](F f, Int k0, Int k1, Int m) {
        for (Int k = k0; k <= k1; k += 6) f.emplace_back(k, m);
        return f;
    };
    std::vector<F> a{{}, {{10, 1}, {16, 1}, {22, 1}}, span({{16, 2}, {22, 2}}, 28, 46, 1),
                     span(span({{16, 1}, {22, 3}}, 28, 46, 2), 52, 70, 1)};
    std::vector<F> b{{{6, 1}},
                     {{12, 1}, {18, 1}, {24, 1}, {30, 1}},
                     span({{18, 2}, {24, 2}, {30, 2}}, 36, 54, 1),
                     span(span({{18, 1}, {24, 3}, {30, 3}}, 36, 54, 2), 60, 78, 1),
                     span(span(span({{24, 2}, {30, 4}}, 36, 54, 3), 60, 78, 2), 84, 102, 1)};
    auto c0 = new_context(7, 2, 0), c4 = new_context(7, 2, 4);
    for (std::size_t n = 1; n <= a.size(); ++n)
        o.require(coefficient(c0, n).factors == a[n - 1], "g_" + std::to_string(n) + " on 1 x omega^2");
    for (std::size_t n = 1; n <= b.size(); ++n)
        o.require(coefficient(c4, n).factors == b[n - 1], "g_" + std::to_string(n) + " on omega^2 x 1");
    return o;
}

Outcome degree_tables() {
    Outcome o;
    const Int inc[6][15] = {
        {0, 3, 5, 8, 10, 13, 15, 18, 21, 23, 26, 28, 31, 33, 36}, {1, 3, 6, 9, 11, 14, 16, 19, 21, 24, 27, 29, 32, 34, 37},
        {2, 4, 7, 9, 12, 15, 17, 20, 22, 25, 27, 30, 33, 35, 38}, {3, 5, 8, 10, 13, 15, 18, 21, 23, 26, 28, 31, 33, 36, 39},
        {1, 3, 6, 9, 11, 14, 16, 19, 21, 24, 27, 29, 32, 34, 37}, {2, 4, 7, 9, 12, 15, 17, 20, 22, 25, 27, 30, 33, 35, 38},
    };
    for (Int s = 0; s < 6; ++s) {
        auto ctx = new_context(7, 2, s);
        for (Int n = 1; n <= 15; ++n)
            o.require(degree(ctx, n) - degree(ctx, n - 1) == inc[s][n - 1],
                      "degree increment s=" + std::to_string(s) + " n=" + std::to_string(n));
    }
    struct Halo {
        Int s;
        Int inc[16], e[16], lambda[16];
    };
    const Halo halo[] = {
        {0,
         {0, 3, 5, 8, 10, 13, 15, 18, 21, 23, 26, 28, 31, 33, 36, 39},
         {0, 2, 6, 8, 12, 14, 18, 20, 24, 26, 30, 32, 36, 38, 42, 44},
         {0, 2, 6, 7, 11, 12, 16, 18, 21, 23, 26, 28, 31, 33, 36, 38}},
        {4,
         {1, 3, 6, 9, 11, 14, 16, 19, 21, 24, 27, 29, 32, 34, 37, 39},
         {0, 4, 6, 10, 12, 16, 18, 22, 24, 28, 30, 34, 36, 40, 42, 46},
         {0, 4, 6, 9, 11, 14, 16, 19, 21, 24, 26, 30, 31, 35, 36, 40}},
    };
    for (auto& h : halo) {
        auto ctx = new_context(7, 2, h.s);
        for (Int n = 0; n < 16; ++n) {
            std::string at = " s=" + std::to_string(h.s) + " n=" + std::to_string(n);
            o.require(degree(ctx, n + 1) - degree(ctx, n) == h.inc[n], "halo table deg g diff" + at);
            o.require(power_basis_degree(ctx, n + 1) == h.e[n], "halo table deg e" + at);
            o.require(lambda_halo(ctx, n + 1) == h.lambda[n], "halo table lambda" + at);
        }
    }
    return o;
}

mpq_class hull_y(const NewtonPolygon& np, Int x) {
    for (std::size_t i = 0; i + 1 < np.vertices.size(); ++i) {
        auto& [x0, y0] = np.vertices[i];
        auto& [x1, y1] = np.vertices[i + 1];
        if (x0 <= x && x <= x1) return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
    return np.vertices.back().second;
}

Outcome near_steinberg_example() {
    Outcome o;
    auto ctx = new_context(7, 2, 4);
    auto prof = delta_profile(ctx, 18);
    Int dp[] = {17, 11, 8, 11, 17};
    for (Int l = -2; l <= 2; ++l) o.require(prof.raw_at(l) == dp[l + 2], "Delta'_{18," + std::to_string(l) + "}");
    for (mpq_class r : {frac(201, 100), frac(5, 2), mpq_class(3), mpq_class(4), mpq_class(6), mpq_class(7), mpq_class(1000)}) {
        mpq_class row[] = {1, 3 + r, 8 + 2 * r, 19 + r, 33};
        for (Int i = 1; i <= 5; ++i)
            o.require(eval_vp(ctx, i, make_perturbed(18, r)) == ExtRat(row[i - 1]),
                      "v_p(g_" + std::to_string(i) + ") at r=" + rat_str(r));
    }
    struct Regime {
        mpq_class r;
        std::vector<mpq_class> y;
        std::vector<Int> verts;
    };
    std::vector<Regime> regimes;
    for (mpq_class r : {mpq_class(7), frac(13, 2), mpq_class(50)}) regimes.push_back({r, {1, 9, 17, 25, 33}, {1, 5}});
    for (mpq_class r : {frac(7, 2), mpq_class(4), frac(11, 2)}) regimes.push_back({r, {1, 3 + r, 11 + r, 19 + r, 33}, {1, 2, 4, 5}});
    for (mpq_class r : {frac(21, 10), frac(5, 2), frac(29, 10)}) regimes.push_back({r, {1, 3 + r, 8 + 2 * r, 19 + r, 33}, {1, 2, 3, 4, 5}});
    for (auto& g : regimes) {
        auto np = np_certified(ctx, make_perturbed(18, g.r), 5);
        std::vector<Int> verts;
        for (Int x = 1; x <= 5; ++x) {
            o.require(hull_y(np, x) == g.y[x - 1], "hull at x=" + std::to_string(x) + " r=" + rat_str(g.r));
            if (is_vertex(np, x)) verts.push_back(x);
        }
        o.require(verts == g.verts, "vertex set at r=" + rat_str(g.r));
    }
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    for (Int p : {5, 7, 11})
        for (Int a = 1; a <= p - 4; ++a)
            for (Int s = 0; s <= p - 2; ++s) {
                auto ctx = new_context(p, a, s);
                std::string at = " p=" + std::to_string(p) + " a=" + std::to_string(a) + " s=" + std::to_string(s);
                for (Int k = 2; k <= 10000; ++k) {
                    if (d_iw(ctx, k) != d_iw_power_basis_oracle(ctx, k)) o.require(false, "d_iw at k=" + std::to_string(k) + at);
                    if (k <= 5000 && ctx.in_class(k) && d_ur(ctx, k) != d_ur_jh_oracle(ctx, k))
                        o.require(false, "d_ur at k=" + std::to_string(k) + at);
                }
            }
    std::mt19937_64 rng(20240601);
    auto uni = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
    const Int primes[] = {5, 7, 11};
    for (int trial = 0; trial < 1000; ++trial) {
        Int p = primes[uni(0, 2)];
        auto ctx = new_context(p, uni(1, p - 4), uni(0, p - 2));
        Int n = uni(0, 40), k0 = uni(2, 3000);
        auto lhs = eval_increment_oracle(ctx, n, k0);
        auto rhs = eval_vp_omit(ctx, n + 1, Classical{k0}, {k0}) - eval_vp_omit(ctx, n, Classical{k0}, {k0});
        o.require(lhs == rhs, "increment at n=" + std::to_string(n) + " k0=" + std::to_string(k0));
    }
    return o;
}

Outcome theorem_sweeps() {
    Outcome o;
    SweepOptions opt;
    opt.kb_max = 200;
    opt.points = 3;
    auto reports = scan({5, 7, 11, 13}, suite_names(), opt, worker_count());
    Int points = 0;
    for (auto& r : reports) {
        if (!r.pass) {
            std::ostringstream os;
            os << r.name << " p=" << r.params[0].second << " a=" << r.params[1].second << " s=" << r.params[2].second;
            if (!r.witnesses.empty()) {
                auto& w = r.witnesses.front();
                os << " at " << w.at << ": " << w.lhs << " " << w.rel << " " << w.rhs;
            }
            o.require(false, os.str());
        }
        if (r.name == "vertex_theorem")
            for (auto& [k, v] : r.meta)
                if (k == "points") points += std::stoll(v);
    }
    o.require(points >= 500, "only " + std::to_string(points) + " random points");
    o.detail = o.pass ? std::to_string(reports.size()) + " reports, " + std::to_string(points) + " random points" : o.detail;
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "dimension tables", 1, dimension_tables},
        {2, "ghost coefficients", 1, ghost_coefficients},
        {3, "degree and halo tables", 1, degree_tables},
        {4, "near-Steinberg example", 1, near_steinberg_example},
        {5, "oracle equivalence", 60, oracle_equivalence},
        {6, "theorem sweeps", 600, theorem_sweeps},
    };
    int failed = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = s < c.limit_s;
        bool ok = o.pass && in_time;
        failed += !ok;
        std::ostringstream line;
        line << "criterion " << c.id << " (" << c.name << "): " << (ok ? "PASS" : "FAIL") << "  " << s << " s (limit "
             << c.limit_s << " s)";
        if (!o.detail.empty()) line << "  " << o.detail;
        if (!in_time) line << "  over time";
        std::cout << line.str() << std::endl;
    }
    return failed ? 1 : 0;
}
