#include <doctest.h>

#include "helpers.hpp"
#include "quademb/minimality.hpp"

using namespace quademb;
using namespace quademb::testing;

TEST_CASE("f(x) arithmetic behind the order bound") {
    // f is increasing from 3 on, and f(n) - f(n-1) = n - 3.
    for (int n = 4; n <= 40; ++n) CHECK(order_bound_f(n) > order_bound_f(n - 1));
    for (int n = 5; n <= 40; ++n) CHECK(order_bound_f(n) - order_bound_f(n - 1) == n - 3);
    for (int n = 0; n <= 20; ++n)
        CHECK(order_bound_f(n) == static_cast<long long>(n) * (n - 1) / 2 - 2 * n);
}

TEST_CASE("table formulas") {
    auto gs40 = minimal_table_gs(4, 0);
    CHECK(gs40.orientable_genus == 3);
    CHECK(gs40.nonorientable_genus == 6);
    CHECK(gs40.order == 8);
    auto k410 = minimal_table_k4(1, 0);
    CHECK(k410.orientable_genus == 4);
    CHECK(k410.nonorientable_genus == 8);
    CHECK(k410.order == 8);
    auto k420 = minimal_table_k4(2, 0);
    CHECK(k420.orientable_genus == 23);
    CHECK(k420.order == 16);
    CHECK_THROWS(minimal_table_gs(3, 0));
    CHECK_THROWS(minimal_table_gs(4, 1));   // p <= k/4 - 1 = 0
    CHECK_THROWS(minimal_table_k4(1, 1));   // q <= 0
    CHECK_THROWS(minimal_table_k4(0, 0));
    CHECK(to_tsv(gs40) == "gs\t4 0\t3\t6\t8");
}

TEST_CASE("overlap identity between the two families") {
    // For l/4 <= q <= (l-1)/2 the k4 row equals gs(4l, 4q-l).
    for (int l = 1; l <= 8; ++l)
        for (int q = (l + 3) / 4; 2 * q <= l - 1; ++q) {
            auto a = minimal_table_k4(l, q);
            auto b = minimal_table_gs(4 * l, 4 * q - l);
            CHECK(a.orientable_genus == b.orientable_genus);
            CHECK(a.nonorientable_genus == b.nonorientable_genus);
            CHECK(a.order == b.order);  // both 8l
        }
}

TEST_CASE("certificate rejects non-quadrangular input") {
    CHECK_THROWS(minimality_certificate(embed_k4_planar()));
}

TEST_CASE("small quadrangular embeddings of non-complete graphs") {
    // C4 on the sphere: n=4, d = 6-4 = 2 > n-4 = 0, and n < 5: inconclusive.
    auto cert = minimality_certificate(embed_cycle_planar(4));
    CHECK(cert.verdict == MinimalityVerdict::inconclusive);
    CHECK(cert.n == 4);
    CHECK(cert.deleted == 2);
}
