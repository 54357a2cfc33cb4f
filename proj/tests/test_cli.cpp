#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(GHOSTLINE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

// Numbers on the data rows of csv or table output, in order.
std::vector<std::string> data_numbers(const std::string& text) {
    static const std::regex row("^[-0-9/, ]*[0-9][-0-9/, ]*$");
    static const std::regex num("-?[0-9]+(/[0-9]+)?");
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        if (!std::regex_match(line, row)) continue;
        for (std::sregex_iterator it(line.begin(), line.end(), num), end; it != end; ++it) out.push_back(it->str());
    }
    return out;
}

std::string str(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

TEST_CASE("ghost coefficient golden output") {
    auto r = cli("ghost --p 7 --a 2 --seps 4 --n 2 --format json");
    CHECK(r.code == 0);
    CHECK(r.out == "{\"n\":2,\"factors\":[[12,1],[18,1],[24,1],[30,1]]}\n");
    r = cli("ghost --p 7 --a 2 --seps 0 --n 1");
    CHECK(r.out == "{\"n\":1,\"factors\":[]}\n");
}

TEST_CASE("delta profile golden output") {
    auto r = cli("delta --p 7 --a 2 --seps 4 --k 18");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"k\":18,\"raw\":[[-2,\"17/1\"],[-1,\"11/1\"],[0,\"8/1\"],[1,\"11/1\"],[2,\"17/1\"]],"
          "\"hull\":[[-2,\"17/1\"],[-1,\"11/1\"],[0,\"8/1\"],[1,\"11/1\"],[2,\"17/1\"]]}\n");
}

TEST_CASE("dims reproduces the example tables and csv/table carry the same numbers") {
    auto r = cli("dims --p 7 --a 2 --kmax 42");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["disks"].size() == 6);
    CHECK(j["disks"][0]["k_eps"] == 4);
    CHECK(j["disks"][4]["k_eps"] == 6);
    // First row of the d_iw table and of the triples table.
    std::vector<int> row0{1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4, 5};
    for (int k = 2; k <= 14; ++k) CHECK(j["disks"][0]["d_iw"][k - 2][1] == row0[k - 2]);
    CHECK(j["disks"][0]["triples"][4] == json::array({28, 2, 6}));
    CHECK(j["disks"][3]["triples"][4] == json::array({28, 1, 6}));

    std::vector<std::string> want;
    for (auto& d : j["disks"]) {
        want.push_back(str(d["s_eps"]));
        want.push_back(str(d["k_eps"]));
        for (auto& e : d["d_iw"]) want.push_back(str(e[1]));
    }
    for (auto& d : j["disks"])
        for (auto& t : d["triples"]) {
            want.push_back(str(d["s_eps"]));
            for (auto& x : t) want.push_back(str(x));
        }
    CHECK(data_numbers(cli("dims --p 7 --a 2 --kmax 42 --format csv").out) == want);
    CHECK(data_numbers(cli("dims --p 7 --a 2 --kmax 42 --format table").out) == want);
}

TEST_CASE("np at the example point") {
    auto r = cli("np --p 7 --a 2 --seps 4 --point perturbed:18:4/1 --nmax 5");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    std::vector<int> xs;
    for (auto& v : j["vertices"]) xs.push_back(v[0]);
    CHECK(xs == std::vector<int>{0, 1, 2, 4, 5});
    CHECK(j["vertices"][2][1] == "7/1");
    CHECK(j["slopes"][2] == json::array({"8/1", 2}));
    CHECK(j["certified_upto"].get<int>() >= 5);
    CHECK(j.contains("buffer"));
    CHECK(j.dump() + "\n" == r.out);

    std::vector<std::string> want;
    for (auto& v : j["vertices"]) want.insert(want.end(), {str(v[0]), str(v[1])});
    for (auto& s : j["slopes"]) want.insert(want.end(), {str(s[0]), str(s[1])});
    want.insert(want.end(), {str(j["certified_upto"]), str(j["buffer"])});
    const std::string q = "np --p 7 --a 2 --seps 4 --point perturbed:18:4/1 --nmax 5";
    CHECK(data_numbers(cli(q + " --format csv").out) == want);
    CHECK(data_numbers(cli(q + " --format table").out) == want);

    auto b = json::parse(cli("np --p 7 --a 2 --seps 0 --point boundary:1/2 --nmax 4").out);
    CHECK(b["slopes"][1] == json::array({"3/2", 1}));
}

TEST_CASE("near-Steinberg ranges") {
    auto j = json::parse(cli("ns --p 7 --a 2 --seps 4 --point perturbed:18:7 --nmax 6").out);
    CHECK(j["nested"] == true);
    bool found = false;
    for (auto& r : j["ranges"]) found = found || r == json{{"k", 18}, {"L", 2}, {"lo", 1}, {"hi", 5}};
    CHECK(found);
    CHECK(json::parse(cli("ns --p 7 --a 2 --seps 4 --point boundary:1/2 --nmax 20").out)["ranges"].empty());
}

TEST_CASE("verify and scan") {
    auto r = cli("verify --p 7 --a 2 --seps 0 --suite theta --k0 4");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["name"] == "theta");
    CHECK(j["status"] == "pass");
    CHECK(cli("verify --p 7 --a 2 --seps 4 --suite vertex_theorem --point perturbed:18:5/2 --nmax 5").code == 0);
    CHECK(cli("verify --p 7 --a 2 --seps 4 --suite halo --t 2/7 --nmax 12").code == 0);
    CHECK(cli("verify --p 5 --a 1 --seps 2 --suite delta_estimates --sweep --kbmax 20").code == 0);

    r = cli("scan --primes 5,7 --suites ghost_duality,mid_slopes --kbmax 10 --workers 2");
    CHECK(r.code == 0);
    auto a = json::parse(r.out);
    CHECK(a.size() == (4 + 18) * 2);
    CHECK(a[0]["name"] == "ghost_duality");
    CHECK(a[0]["params"]["p"] == "5");
}

TEST_CASE("output file") {
    std::string path = "test_cli_out.json";
    std::remove(path.c_str());
    CHECK(cli("ghost --p 7 --a 2 --seps 4 --n 2 --out " + path).code == 0);
    std::ifstream f(path);
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(s == "{\"n\":2,\"factors\":[[12,1],[18,1],[24,1],[30,1]]}\n");
    std::remove(path.c_str());
}

TEST_CASE("parameter errors exit with 2") {
    CHECK(cli("ghost --p 6 --a 2 --seps 0 --n 2").code == 2);
    CHECK(cli("ghost --p 7 --a 4 --seps 0 --n 2").code == 2);
    CHECK(cli("ghost --p 7 --a 2 --n 2").code == 2);
    CHECK(cli("delta --p 7 --a 2 --seps 4 --k 19").code == 2);
    CHECK(cli("np --p 7 --a 2 --seps 4 --point bogus --nmax 5").code == 2);
    CHECK(cli("verify --p 7 --a 2 --seps 0 --suite nope").code == 2);
    CHECK(cli("verify --p 7 --a 2 --seps 0 --suite mid_slopes").code == 2);
    CHECK(cli("dims --p 7 --a 2 --kmax 14 --format xml").code == 2);
    CHECK(cli("dims --p 7 --a 2").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("scan --primes 4").code == 2);
}
