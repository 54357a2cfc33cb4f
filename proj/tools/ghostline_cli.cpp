#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghostline/parallel.hpp"
#include "ghostline/verify.hpp"
#include "json.hpp"

using namespace ghostline;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failed = 1, bad_params = 2, uncertified = 3, internal = 4 };

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json doc;
    std::vector<Table> tables;
};

std::string S(Int v) { return std::to_string(v); }

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void write_csv(std::ostream& os, const std::vector<Table>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) os << "\n";
        if (ts.size() > 1) os << "# " << ts[i].name << "\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t j = 0; j < cells.size(); ++j) os << (j ? "," : "") << csv_cell(cells[j]);
            os << "\n";
        };
        line(ts[i].header);
        for (auto& r : ts[i].rows) line(r);
    }
}

void write_table(std::ostream& os, const std::vector<Table>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        auto& t = ts[i];
        if (i) os << "\n";
        if (!t.name.empty()) os << t.name << "\n";
        std::vector<std::size_t> w(t.header.size());
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = t.header[j].size();
        for (auto& r : t.rows)
            for (std::size_t j = 0; j < r.size() && j < w.size(); ++j) w[j] = std::max(w[j], r[j].size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (j) s += "  ";
                s += std::string(w[j] - cells[j].size(), ' ') + cells[j];
            }
            os << s << "\n";
        };
        line(t.header);
        std::size_t total = 0;
        for (auto x : w) total += x;
        os << std::string(total + 2 * (w.empty() ? 0 : w.size() - 1), '-') << "\n";
        for (auto& r : t.rows) line(r);
    }
}

struct Common {
    Int p = 7;
    Int a = 2;
    Int s_eps = -1;
    std::string format = "json";
    std::string out;
};

GhostContext context_of(const Common& c) {
    if (c.s_eps < 0) throw ParameterError("--seps is required");
    return new_context(c.p, c.a, c.s_eps);
}

Output cmd_dims(const Common& c, Int k_max) {
    if (k_max < 2) throw ParameterError("--kmax must be >= 2");
    std::vector<GhostContext> ctxs;
    if (c.s_eps >= 0) {
        ctxs.push_back(new_context(c.p, c.a, c.s_eps));
    } else {
        for (Int s = 0; s <= c.p - 2; ++s) ctxs.push_back(new_context(c.p, c.a, s));
    }
    Output o;
    Table iw{"d_iw", {"s_eps", "k_eps"}, {}};
    for (Int k = 2; k <= k_max; ++k) iw.header.push_back("k=" + S(k));
    Table tr{"triples", {"s_eps", "k", "d_ur", "d_new"}, {}};
    json disks = json::array();
    for (auto& ctx : ctxs) {
        json row = json::array(), triples = json::array();
        std::vector<std::string> cells{S(ctx.s_eps), S(ctx.k_eps)};
        for (Int k = 2; k <= k_max; ++k) {
            Int d = d_iw(ctx, k);
            row.push_back({k, d});
            cells.push_back(S(d));
            if (ctx.in_class(k)) {
                auto t = dims(ctx, k);
                triples.push_back({k, t.d_ur, t.d_new});
                tr.rows.push_back({S(ctx.s_eps), S(k), S(t.d_ur), S(t.d_new)});
            }
        }
        iw.rows.push_back(cells);
        disks.push_back({{"s_eps", ctx.s_eps}, {"k_eps", ctx.k_eps}, {"d_iw", row}, {"triples", triples}});
    }
    o.doc = {{"p", c.p}, {"a", c.a}, {"kmax", k_max}, {"disks", disks}};
    o.tables = {iw, tr};
    return o;
}

Output cmd_ghost(const Common& c, Int n) {
    auto ctx = context_of(c);
    if (n < 0) throw ParameterError("--n must be >= 0");
    auto g = coefficient(ctx, n);
    Output o;
    json fs = json::array();
    Table t{"g_" + S(n), {"k", "mult"}, {}};
    for (auto& [k, m] : g.factors) {
        fs.push_back({k, m});
        t.rows.push_back({S(k), S(m)});
    }
    o.doc = {{"n", n}, {"factors", fs}};
    o.tables = {t};
    return o;
}

Output cmd_np(const Common& c, const std::string& point, Int n_max, Int buffer) {
    auto ctx = context_of(c);
    auto w = parse_point(point);
    auto np = np_certified(ctx, w, n_max, buffer);
    Output o;
    json vs = json::array(), ss = json::array();
    Table tv{"vertices", {"x", "y"}, {}}, ts{"slopes", {"slope", "width"}, {}};
    for (std::size_t i = 0; i < np.vertices.size() && np.vertices[i].first <= np.certified_upto; ++i) {
        auto& [x, y] = np.vertices[i];
        vs.push_back({x, rat_str(y)});
        tv.rows.push_back({S(x), rat_str(y)});
        if (i >= 1) {
            auto& [s, wd] = np.slopes[i - 1];
            ss.push_back({rat_str(s), wd});
            ts.rows.push_back({rat_str(s), S(wd)});
        }
        // Stop at the first vertex covering [0, n_max].
        if (x >= n_max) break;
    }
    o.doc = {{"vertices", vs}, {"slopes", ss}, {"certified_upto", np.certified_upto}, {"buffer", np.buffer_used}};
    Table tc{"certification", {"certified_upto", "buffer"}, {{S(np.certified_upto), S(np.buffer_used)}}};
    o.tables = {tv, ts, tc};
    return o;
}

Output cmd_delta(const Common& c, Int k) {
    auto ctx = context_of(c);
    auto prof = delta_profile(ctx, k);
    Output o;
    json raw = json::array(), hull = json::array();
    Table t{"delta_" + S(k), {"l", "raw", "hull"}, {}};
    for (Int l = -prof.half_new; l <= prof.half_new; ++l) {
        auto r = rat_str(prof.raw_at(l)), h = rat_str(prof.hull_at(l));
        raw.push_back({l, r});
        hull.push_back({l, h});
        t.rows.push_back({S(l), r, h});
    }
    o.doc = {{"k", k}, {"raw", raw}, {"hull", hull}};
    o.tables = {t};
    return o;
}

json range_json(const NearSteinbergRange& r) { return {{"k", r.k}, {"L", r.L}, {"lo", r.lo}, {"hi", r.hi}}; }

Output cmd_ns(const Common& c, const std::string& point, Int n_max) {
    auto ctx = context_of(c);
    auto w = parse_point(point);
    if (n_max < 1) throw ParameterError("--nmax must be >= 1");
    DeltaCache cache(ctx);
    auto ranges = near_steinberg_ranges(ctx, w, n_max, &cache);
    auto verdict = check_nested(ranges);
    Output o;
    json rs = json::array();
    Table t{"ranges", {"k", "L", "lo", "hi"}, {}};
    for (auto& r : ranges) {
        rs.push_back(range_json(r));
        t.rows.push_back({S(r.k), S(r.L), S(r.lo), S(r.hi)});
    }
    json wit = nullptr;
    if (verdict.witness) wit = {range_json(verdict.witness->first), range_json(verdict.witness->second)};
    o.doc = {{"point", format_point(w)}, {"n_max", n_max}, {"ranges", rs}, {"nested", verdict.nested}, {"witness", wit}};
    o.tables = {t, Table{"verdict", {"nested"}, {{verdict.nested ? "true" : "false"}}}};
    return o;
}

Output reports_output(const std::vector<CheckReport>& rs, bool single) {
    Output o;
    o.doc = json::parse(single ? report_json(rs.front()) : report_json(rs));
    Table t{"reports", {"p", "a", "s_eps", "suite", "status", "checked", "failures", "elapsed_ms"}, {}};
    Table w{"witnesses", {"p", "a", "s_eps", "suite", "at", "lhs", "rel", "rhs"}, {}};
    auto param = [](const CheckReport& r, const std::string& key) {
        for (auto& [k, v] : r.params)
            if (k == key) return v;
        return std::string();
    };
    for (auto& r : rs) {
        std::ostringstream ms;
        ms << r.elapsed_ms;
        std::vector<std::string> id{param(r, "p"), param(r, "a"), param(r, "s_eps"), r.name};
        auto row = id;
        row.insert(row.end(), {r.pass ? "pass" : "fail", S(r.checked), S(r.failures), ms.str()});
        t.rows.push_back(row);
        for (auto& x : r.witnesses) {
            auto wr = id;
            wr.insert(wr.end(), {x.at, x.lhs, x.rel, x.rhs});
            w.rows.push_back(wr);
        }
    }
    o.tables = {t};
    if (!w.rows.empty()) o.tables.push_back(w);
    return o;
}

struct VerifyArgs {
    std::string suite;
    Int k = -1;
    Int l_max = 6;
    std::string t = "1/2";
    Int n_max = -1;
    std::string point;
    bool sweep = false;
    bool no_k_prime = false;
    SweepOptions opt;
};

CheckReport run_verify(const Common& c, const VerifyArgs& v) {
    auto ctx = context_of(c);
    if (!is_suite(v.suite)) throw ParameterError("unknown suite '" + v.suite + "'");
    if (v.sweep || v.suite == "ghost_duality") {
        if (v.suite == "ghost_duality" && !v.sweep) return check_ghost_duality(ctx, v.opt.kb_max);
        SweepOptions opt = v.opt;
        opt.theta_l_max = v.l_max;
        opt.with_k_prime = !v.no_k_prime;
        if (v.n_max > 0) opt.halo_n_max = v.n_max;
        return run_suite(v.suite, ctx, opt);
    }
    auto need_k = [&] {
        if (v.k < 0) throw ParameterError("suite " + v.suite + " needs --k");
        return v.k;
    };
    auto need_point = [&] {
        if (v.point.empty()) throw ParameterError("suite " + v.suite + " needs --point");
        if (v.n_max < 1) throw ParameterError("suite " + v.suite + " needs --nmax");
        return parse_point(v.point);
    };
    const auto& s = v.suite;
    if (s == "mid_slopes") return check_mid_slopes(ctx, need_k());
    if (s == "theta") return check_theta(ctx, need_k(), v.l_max);
    if (s == "atkin_lehner") return check_atkin_lehner(ctx, need_k());
    if (s == "p_stabilization") return check_p_stabilization(ctx, need_k());
    if (s == "gouvea") return check_gouvea(ctx, need_k());
    if (s == "halo") return check_halo(ctx, parse_rational(v.t), v.n_max > 0 ? v.n_max : 30);
    if (s == "integrality") return check_integrality(ctx, need_k(), v.n_max);
    if (s == "delta_estimates") return check_delta_estimates(ctx, need_k(), !v.no_k_prime);
    if (s == "nested") {
        auto w = need_point();
        return check_nested(ctx, w, v.n_max);
    }
    if (s == "vertex_theorem") {
        auto w = need_point();
        return check_vertex_theorem(ctx, w, v.n_max);
    }
    return check_delta_vertices(ctx, need_k());
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--p", c.p, "prime p >= 5");
    sub->add_option("--a", c.a, "a in [1, p-4]");
    sub->add_option("--seps", c.s_eps, "s_eps in [0, p-2]");
    sub->add_option("--format", c.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", c.out, "output path (default stdout)");
}

void emit(const Common& c, const Output& o) {
    std::ofstream file;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file) throw ParameterError("cannot open '" + c.out + "'");
    }
    std::ostream& os = c.out.empty() ? std::cout : file;
    if (c.format == "json") {
        os << o.doc.dump() << "\n";
    } else if (c.format == "csv") {
        write_csv(os, o.tables);
    } else {
        write_table(os, o.tables);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ghost series slopes, Newton polygons and verification suites"};
    app.require_subcommand(1);
    Common c;

    Int k_max = 14;
    auto* dims_cmd = app.add_subcommand("dims", "d_iw, d_ur, d_new across the weight disks");
    add_common(dims_cmd, c);
    dims_cmd->add_option("--kmax", k_max, "largest weight")->required();

    Int n = 1;
    auto* ghost_cmd = app.add_subcommand("ghost", "factored ghost coefficient g_n");
    add_common(ghost_cmd, c);
    ghost_cmd->add_option("--n", n, "coefficient index")->required();

    std::string point;
    Int n_max = 0, buffer = -1;
    auto* np_cmd = app.add_subcommand("np", "certified Newton polygon of the ghost series at a point");
    add_common(np_cmd, c);
    np_cmd->add_option("--point", point, "classical:K | perturbed:K0:NUM/DEN | boundary:NUM/DEN")->required();
    np_cmd->add_option("--nmax", n_max, "certify up to this index")->required();
    np_cmd->add_option("--buffer", buffer, "initial buffer (default 2p+8)");

    Int k = 0;
    auto* delta_cmd = app.add_subcommand("delta", "Delta' profile and its lower hull at weight k");
    add_common(delta_cmd, c);
    delta_cmd->add_option("--k", k, "weight on the disk")->required();

    auto* ns_cmd = app.add_subcommand("ns", "near-Steinberg ranges and nestedness");
    add_common(ns_cmd, c);
    ns_cmd->add_option("--point", point, "weight point")->required();
    ns_cmd->add_option("--nmax", n_max, "index bound")->required();

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "run one verification suite");
    add_common(verify_cmd, c);
    verify_cmd->add_option("--suite", va.suite, "suite name")->required();
    verify_cmd->add_option("--k,--k0", va.k, "weight");
    verify_cmd->add_option("--lmax", va.l_max, "theta: largest l");
    verify_cmd->add_option("--t", va.t, "halo: boundary valuation in (0,1)");
    verify_cmd->add_option("--nmax", va.n_max, "index bound");
    verify_cmd->add_option("--point", va.point, "weight point");
    verify_cmd->add_flag("--sweep", va.sweep, "sweep every weight with k_bullet <= --kbmax");
    verify_cmd->add_option("--kbmax", va.opt.kb_max, "sweep bound on k_bullet");
    verify_cmd->add_option("--points", va.opt.points, "random points per context");
    verify_cmd->add_option("--seed", va.opt.seed, "random seed");
    verify_cmd->add_flag("--no-kprime", va.no_k_prime, "skip the near-weight bounds");

    std::vector<Int> primes{5, 7, 11, 13};
    std::vector<std::string> suites = suite_names();
    SweepOptions so;
    bool no_k_prime = false;
    unsigned workers = 0;
    auto* scan_cmd = app.add_subcommand("scan", "every suite over a grid of (p, a, s_eps)");
    scan_cmd->add_option("--format", c.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
    scan_cmd->add_option("--out", c.out, "output path (default stdout)");
    scan_cmd->add_option("--primes", primes, "primes")->delimiter(',');
    scan_cmd->add_option("--suites", suites, "suites")->delimiter(',');
    scan_cmd->add_option("--kbmax", so.kb_max, "bound on k_bullet");
    scan_cmd->add_option("--lmax", so.theta_l_max, "theta: largest l");
    scan_cmd->add_option("--halo-nmax", so.halo_n_max, "halo: index bound");
    scan_cmd->add_option("--points", so.points, "random points per context");
    scan_cmd->add_option("--seed", so.seed, "random seed");
    scan_cmd->add_flag("--no-kprime", no_k_prime, "skip the near-weight bounds");
    scan_cmd->add_option("--workers", workers, "worker threads (default GHOSTLINE_WORKERS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::bad_params;
    }

    try {
        if (*dims_cmd) {
            emit(c, cmd_dims(c, k_max));
        } else if (*ghost_cmd) {
            emit(c, cmd_ghost(c, n));
        } else if (*np_cmd) {
            emit(c, cmd_np(c, point, n_max, buffer));
        } else if (*delta_cmd) {
            emit(c, cmd_delta(c, k));
        } else if (*ns_cmd) {
            emit(c, cmd_ns(c, point, n_max));
        } else if (*verify_cmd) {
            auto r = run_verify(c, va);
            emit(c, reports_output({r}, true));
            return r.pass ? Exit::ok : Exit::failed;
        } else if (*scan_cmd) {
            so.with_k_prime = !no_k_prime;
            for (Int p : primes)
                if (p < 5 || !is_prime(p)) throw ParameterError("scan: p = " + S(p) + " is not a prime >= 5");
            auto rs = scan(primes, suites, so, workers ? workers : worker_count());
            emit(c, reports_output(rs, false));
            for (auto& r : rs)
                if (!r.pass) return Exit::failed;
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::bad_params;
    } catch (const CertificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::uncertified;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::bad_params;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Exit::internal;
    }
    return Exit::ok;
}
