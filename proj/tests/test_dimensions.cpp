#include "doctest.h"
#include "ghostline/dimensions.hpp"

using namespace ghostline;

TEST_CASE("Iwahori dimensions, p = 7, a = 2, k = 2..14 on every disk") {
    const Int table[6][13] = {
        {1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4, 5},  // 1 x omega^2
        {0, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4},  // omega^5 x omega^3
        {0, 0, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4},  // omega^4 x omega^4
        {0, 0, 0, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4},  // omega^3 x omega^5
        {1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 4, 5},  // omega^2 x 1
        {0, 1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 4},  // omega x omega
    };
    for (Int s = 0; s <= 5; ++s) {
        auto ctx = new_context(7, 2, s);
        for (Int k = 2; k <= 14; ++k) CHECK(d_iw(ctx, k) == table[s][k - 2]);
    }
}

TEST_CASE("triples (k, d_ur, d_new), p = 7, a = 2") {
    const Int table[6][7][3] = {
        {{4, 1, 0}, {10, 1, 2}, {16, 1, 4}, {22, 1, 6}, {28, 2, 6}, {34, 2, 8}, {40, 2, 10}},
        {{6, 0, 2}, {12, 1, 2}, {18, 1, 4}, {24, 1, 6}, {30, 1, 8}, {36, 2, 8}, {42, 2, 10}},
        {{2, 0, 0}, {8, 0, 2}, {14, 0, 4}, {20, 1, 4}, {26, 1, 6}, {32, 1, 8}, {38, 1, 10}},
        {{4, 0, 0}, {10, 0, 2}, {16, 0, 4}, {22, 0, 6}, {28, 1, 6}, {34, 1, 8}, {40, 1, 10}},
        {{6, 0, 2}, {12, 1, 2}, {18, 1, 4}, {24, 1, 6}, {30, 1, 8}, {36, 2, 8}, {42, 2, 10}},
        {{2, 0, 0}, {8, 0, 2}, {14, 0, 4}, {20, 1, 4}, {26, 1, 6}, {32, 1, 8}, {38, 1, 10}},
    };
    for (Int s = 0; s <= 5; ++s) {
        auto ctx = new_context(7, 2, s);
        for (auto& t : table[s]) {
            auto d = dims(ctx, t[0]);
            CHECK(d.d_ur == t[1]);
            CHECK(d.d_new == t[2]);
            CHECK(d.d_iw == 2 * d.d_ur + d.d_new);
        }
    }
    CHECK(d_iw(new_context(7, 2, 4), 18) == 6);
    CHECK(d_new(new_context(7, 2, 4), 18) == 4);
    CHECK_THROWS_AS(d_ur(new_context(7, 2, 0), 11), ParameterError);
}

TEST_CASE("extremal k_bullet values") {
    auto c0 = new_context(7, 2, 0), c4 = new_context(7, 2, 4);
    CHECK(k_mid_bullet(c4, 3) == 2);
    CHECK(k_mid_bullet(c0, 1) == 0);
    for (Int s = 0; s <= 5; ++s) {
        auto c = new_context(7, 2, s);
        CHECK(k_mid_bullet(c, 0) == c.delta_eps - 1);
    }
    CHECK(k_max_bullet(c0, 1) == 3);
    CHECK(k_max_bullet(c0, 2) == 7);
    CHECK(k_max_bullet(c4, 0) == 0);
    CHECK(k_min_bullet(c0, 2).tilde == 5);
    CHECK(k_min_bullet(c0, 2).value == 1);
    CHECK(k_min_bullet(c0, 3).value == 2);
    CHECK(c4.k_of(k_min_bullet(c4, 2).value) == 12);
}

TEST_CASE("k_bullet thresholds invert the dimension functions") {
    for (Int p : {5, 7, 11})
        for (Int a = 1; a <= p - 4; ++a)
            for (Int s = 0; s <= p - 2; ++s) {
                auto c = new_context(p, a, s);
                for (Int n = 0; n <= 30; ++n) {
                    Int kmax = k_max_bullet(c, n), kmin = k_min_bullet(c, n).value, kmid = k_mid_bullet(c, n);
                    if (kmid >= 0) CHECK(d_iw(c, c.k_of(kmid)) == 2 * n);
                    for (Int kb = 0; kb <= 4 * (n + 2) + 10; ++kb) {
                        auto d = dims(c, c.k_of(kb));
                        CHECK((d.d_ur <= n) == (kb <= kmax));
                        CHECK((d.d_iw - d.d_ur <= n) == (kb < kmin));
                    }
                }
            }
}

TEST_CASE("closed forms agree with the basis count and the Jordan-Holder recursion") {
    for (Int p : {5, 7, 11})
        for (Int a = 1; a <= p - 4; ++a)
            for (Int s = 0; s <= p - 2; ++s) {
                auto c = new_context(p, a, s);
                for (Int k = 2; k <= 1200; ++k) {
                    CHECK(d_iw(c, k) == d_iw_power_basis_oracle(c, k));
                    if (c.in_class(k)) CHECK(d_ur(c, k) == d_ur_jh_oracle(c, k));
                }
            }
    auto c0 = new_context(7, 2, 0);
    CHECK(d_iw_power_basis_oracle(c0, 10) == 4);
    CHECK(d_iw_power_basis_oracle(c0, 2) == 1);
    CHECK(d_ur_jh_oracle(c0, 16) == 1);
    CHECK(d_ur_jh_oracle(new_context(7, 2, 3), 28) == 1);
}
