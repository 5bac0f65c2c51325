#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "monocert/criteria.hpp"
#include "monocert/oracle.hpp"
#include "monocert/parse.hpp"
#include "support/generators.hpp"

using namespace monocert;
using namespace monocert::testsupport;

namespace {
int_poly P(const char* s) { return parse_poly(s); }

std::vector<mpq_class> q_coeffs(std::initializer_list<long> nums, long den = 1) {
    std::vector<mpq_class> out;
    for (long n : nums) out.emplace_back(n, den);
    return out;
}
}

TEST_CASE("characteristic polynomial of small matrices") {
    CHECK(charpoly(rational_matrix::identity(2)) == q_coeffs({1, -2, 1}));
    CHECK(charpoly(rational_matrix::companion(P("t^2-5"))) == q_coeffs({-5, 0, 1}));

    // (1/2) * companion(t^2-5) + (1/2) * I has charpoly t^2 - t - 1
    rational_matrix m = rational_matrix::companion(P("t^2-5"));
    m += rational_matrix::identity(2);
    m.scale(mpq_class(1, 2));
    CHECK(charpoly(m) == q_coeffs({-1, -1, 1}));
}

TEST_CASE("companion matrices reproduce their polynomial") {
    std::mt19937_64 rng(89);
    for (int i = 0; i < 40; ++i) {
        int_poly f = random_monic(rng, 1 + rng() % 6, 12);
        std::vector<mpq_class> cp = charpoly(rational_matrix::companion(f));
        REQUIRE(cp.size() == f.coeffs().size());
        for (std::size_t k = 0; k < cp.size(); ++k) {
            CHECK(cp[k] == mpq_class(f.coeff(k)));
        }
    }
}

TEST_CASE("index oracle on the classical instances") {
    oracle_result a = index_divisible_by_p(P("t^2+1"), 2);
    CHECK_FALSE(a.divides);
    CHECK(a.classes_scanned == 3);

    oracle_result b = index_divisible_by_p(P("t^2-5"), 2);
    CHECK(b.divides);
    CHECK(b.certificate == std::vector<std::uint64_t>{1, 1});  // (1 + theta)/2
    REQUIRE(b.witness_charpoly.size() == 3);
    CHECK(b.witness_charpoly[0] == -1);  // t^2 - t - 1
    CHECK(b.witness_charpoly[1] == -1);
    CHECK(b.witness_charpoly[2] == 1);

    oracle_result c = index_divisible_by_p(P("t^3-t^2-2*t-8"), 2);
    CHECK(c.divides);
    CHECK(c.certificate == std::vector<std::uint64_t>{0, 1, 1});  // (theta + theta^2)/2

    // sqrt(45) = 3*sqrt(5): the element theta/3 = sqrt(5) is integral
    oracle_result d = index_divisible_by_p(P("t^2-45"), 3);
    CHECK(d.divides);
    CHECK(d.certificate == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("oracle certificates are scalar-class representatives") {
    oracle_result b = index_divisible_by_p(P("t^2-5"), 2);
    std::size_t first = 0;
    while (first < b.certificate.size() && b.certificate[first] == 0) ++first;
    REQUIRE(first < b.certificate.size());
    CHECK(b.certificate[first] == 1);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(index_divisible_by_p(P("t^8+t+3"), 7, 1'000'000), error);  // 7^8 > 10^6
    try {
        index_divisible_by_p(P("t^8+t+3"), 7, 1'000'000);
    } catch (const error& e) {
        CHECK(e.code() == errc::cap_exceeded);
        CHECK(e.is_cap());
    }
    CHECK_THROWS_AS(index_divisible_by_p(P("2*t^2+1"), 3), error);  // not monic
}

TEST_CASE("oracle agrees with the criteria on a random corpus") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 40; ++i) {
        int_poly f = random_monic_irreducible(rng, 2 + rng() % 4, 15);
        for (std::uint64_t p : {2, 3, 5}) {
            bool oracle_divides = index_divisible_by_p(f, p).divides;
            bool criterion_maximal = dedekind_p_maximal(f, p).p_maximal;
            CHECK(oracle_divides == !criterion_maximal);
        }
    }
}
