#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "monocert/parse.hpp"
#include "monocert/tower.hpp"

using namespace monocert;

namespace {
int_poly P(const char* s) { return parse_poly(s); }
}

TEST_CASE("construction validates nu") {
    CHECK_NOTHROW(tower(3));
    CHECK_NOTHROW(tower(6));
    CHECK_NOTHROW(tower(11));

    CHECK_THROWS_AS(tower(4), error);    // 0 mod 4
    CHECK_THROWS_AS(tower(5), error);    // 1 mod 4
    CHECK_THROWS_AS(tower(1), error);    // too small
    CHECK_THROWS_AS(tower(-3), error);
    CHECK_THROWS_AS(tower(18), error);   // 2 mod 4 but 9 | 18
    CHECK_THROWS_AS(tower(75), error);   // 3 mod 4 but 25 | 75

    tower two(2);  // allowed, but flagged
    CHECK_FALSE(two.notes().empty());
    CHECK(tower(3).notes().empty());
}

TEST_CASE("minimal polynomials follow the square recurrence") {
    tower tw(3);
    CHECK(tw.minpoly(1) == P("t^2-3"));
    CHECK(tw.minpoly(2) == P("t^4-6*t^2+6"));
    CHECK(tw.minpoly(3) == compose(P("t^2-3"), tw.minpoly(2)));
    CHECK(tw.minpoly(3) == tw.minpoly(2) * tw.minpoly(2) - int_poly(3L));
    CHECK(tw.minpoly(0) == P("t"));

    for (mpz_class nu : {2, 6, 7, 10, 11}) {
        tower t2(nu);
        int_poly p2 = t2.minpoly(2);
        CHECK(p2 == int_poly::from_coeffs({nu * nu - nu, 0, -2 * nu, 0, 1}));
        CHECK(compose(t2.minpoly(1), t2.minpoly(1)) == p2);
    }

    tower_options small;
    small.poly_depth_cap = 3;
    tower capped(3, small);
    CHECK_THROWS_AS(capped.minpoly(4), error);
}

TEST_CASE("scalar recurrences match polynomial coefficients") {
    tower tw(3);
    CHECK(tw.c_term(1) == -3);
    CHECK(tw.c_term(2) == 6);
    CHECK(tw.c_term(3) == 33);
    CHECK(tw.c_term(4) == 1086);
    CHECK(tw.d_coeff(1) == 1);
    CHECK(tw.d_coeff(2) == -6);
    CHECK(tw.d_coeff(3) == -72);

    for (mpz_class nu : {2, 3, 6, 7, 10, 11}) {
        tower t(nu);
        CHECK(t.d_coeff(2) == -2 * nu);
        for (unsigned n = 1; n <= 7; ++n) {
            CHECK(t.c_term(n) == t.minpoly(n).coeff(0));
            CHECK(t.d_coeff(n) == t.minpoly(n).coeff(2));
        }
    }

    tower_options small;
    small.scalar_cap = 5;
    tower capped(3, small);
    CHECK_THROWS_AS(capped.c_term(6), error);
}

TEST_CASE("P_n splits as R_n*t^4 + D_n*t^2 + C_n") {
    for (mpz_class nu : {3, 10}) {
        tower tw(nu);
        CHECK(tw.r_poly(1).is_zero());
        CHECK(tw.r_poly(2) == int_poly(1L));
        for (unsigned n = 1; n <= 6; ++n) {
            int_poly rebuilt = tw.r_poly(n) * P("t^4") +
                               int_poly::monomial(tw.d_coeff(n), 2) + int_poly(tw.c_term(n));
            CHECK(rebuilt == tw.minpoly(n));
        }
    }
}

TEST_CASE("first level at which p divides C_n") {
    tower tw(3);
    CHECK(tw.n_of_p(2) == 2);   // C_1 = -3 odd, C_2 = 6
    CHECK(tw.n_of_p(3) == 1);   // 3 | nu
    CHECK(tw.n_of_p(11) == 3);  // orbit 0 -> 8 -> 6 -> 0
    CHECK_FALSE(tw.n_of_p(5).has_value());  // orbit cycles at 1 -> 3 -> 1
    CHECK_THROWS_AS(tw.n_of_p(4), error);

    // minimality, re-verified by a direct scan
    for (std::uint64_t p : {2, 3, 7, 11, 13, 23}) {
        auto np = tw.n_of_p(p);
        if (!np) continue;
        for (unsigned k = 1; k < *np; ++k) {
            CHECK(mpz_fdiv_ui(tw.c_term(k).get_mpz_t(), p) != 0);
        }
        CHECK(mpz_fdiv_ui(tw.c_term(*np).get_mpz_t(), p) == 0);
    }
}

TEST_CASE("valuations of C_n") {
    tower tw(3);
    CHECK(tw.v_p_c(2, 2).value == 1);
    CHECK_FALSE(tw.v_p_c(2, 2).at_least);
    CHECK(tw.v_p_c(3, 11).value == 1);
    CHECK(tw.v_p_c(1, 5).value == 0);

    // cap semantics: C_2 = 6 is 0 mod 2^1, so with cap 1 only ">= 1" is known
    valuation capped = tw.v_p_c(2, 2, 1);
    CHECK(capped.value == 1);
    CHECK(capped.at_least);

    // a genuine v = 2 instance: nu = 10, C_2 = 90 = 2 * 3^2 * 5
    tower t10(10);
    valuation v3 = t10.v_p_c(2, 3);
    CHECK(v3.value == 2);
    CHECK_FALSE(v3.at_least);
}

TEST_CASE("Eisenstein structure of P_n") {
    tower t3(3);
    eisenstein_report e1 = t3.eisenstein(1);
    CHECK(e1.shift_a == 1);  // 3 mod 4 shifts by 1
    CHECK(e1.two_eisenstein);
    CHECK(e1.parity_ok);
    CHECK(shift(t3.minpoly(1), 1) == P("t^2+2*t-2"));

    eisenstein_report e2 = t3.eisenstein(2);
    CHECK(e2.two_eisenstein);  // unshifted for even levels
    REQUIRE(e2.nu_prime_checks.size() == 1);
    CHECK(e2.nu_prime_checks[0].first == 3);
    CHECK(e2.nu_prime_checks[0].second);

    tower t2(2);
    eisenstein_report e3 = t2.eisenstein(1);
    CHECK(e3.shift_a == 0);  // 2 mod 4 needs no shift
    CHECK(e3.two_eisenstein);

    for (mpz_class nu : {2, 3, 6, 7, 10, 11}) {
        tower tw(nu);
        for (unsigned n = 1; n <= 6; ++n) CHECK(tw.eisenstein(n).all_ok());
    }
}

TEST_CASE("is_eisenstein") {
    CHECK(is_eisenstein(P("t^2+2*t-2"), 2));
    CHECK_FALSE(is_eisenstein(P("t^2-4"), 2));   // p^2 divides the constant term
    CHECK_FALSE(is_eisenstein(P("t^2+t+2"), 2)); // middle coefficient not divisible
    CHECK_FALSE(is_eisenstein(P("2*t^2+2"), 2)); // not monic
}

TEST_CASE("discriminant recursion against the direct resultant") {
    tower t3(3);
    CHECK(t3.disc_value(1) == 12);
    CHECK(t3.disc_value(2) == 13824);
    CHECK(t3.disc_valuation(1, 2).value == 2);
    CHECK(t3.disc_valuation(1, 3).value == 1);

    for (mpz_class nu : {2, 3, 6, 7, 10, 11}) {
        tower tw(nu);
        for (unsigned n = 1; n <= 3; ++n) {
            CHECK(tw.disc_value(n) == discriminant(tw.minpoly(n)));
        }
    }

    factored_disc fd = t3.disc_factored(4);
    CHECK(fd.exp2 == 4ULL * 16);
    CHECK(fd.nu_exponent == 8);
    REQUIRE(fd.c_exponents.size() == 4);
    CHECK(fd.c_exponents[0] == 8);
    CHECK(fd.c_exponents[1] == 4);
    CHECK(fd.c_exponents[2] == 2);
    CHECK(fd.c_exponents[3] == 1);
    CHECK(fd.sign == 1);

    // a prime away from 2, nu, and every C_k has valuation 0
    CHECK(t3.disc_valuation(4, 13).value == 0);
}

TEST_CASE("parity: P_n has no monomial of odd degree") {
    for (mpz_class nu : {2, 7, 11}) {
        tower tw(nu);
        for (unsigned n = 1; n <= 7; ++n) {
            const int_poly& pn = tw.minpoly(n);
            for (std::size_t k = 1; k < pn.coeffs().size(); k += 2) {
                CHECK(pn.coeff(k) == 0);
            }
        }
    }
}

TEST_CASE("dynamical lemma suite") {
    tower t3(3);
    lemma_report rep = t3.lemma_suite(2, 6);
    CHECK(rep.n_p == 2);
    CHECK(rep.all_ok());

    // s(D_3) = {2, 3} = s(C_1) union s(C_2)
    REQUIRE(!rep.supports.empty());
    CHECK(rep.supports[0].n == 2);
    CHECK(rep.supports[0].d_support == std::vector<std::uint64_t>{2, 3});
    CHECK(rep.supports[0].c_union == std::vector<std::uint64_t>{2, 3});
    CHECK(rep.supports[0].complete);

    // C-bar periodicity example: C_3 = 33 = 1 = -3 = C_1 mod 2
    CHECK(!rep.periodicity.empty());
    CHECK(rep.periodicity[0].index == 1);
    CHECK(rep.periodicity[0].ok);

    CHECK(t3.lemma_suite(11, 7).all_ok());
    CHECK(t3.lemma_suite(3, 6).all_ok());

    CHECK_THROWS_AS(t3.lemma_suite(5, 6), error);  // n(5) undefined

    // exact-supports mode fails once a support cannot be completed
    tower_options tight;
    tight.trial_bound = 3;
    tower t3t(3, tight);
    CHECK_THROWS_AS(t3t.lemma_suite(2, 6, true), error);
    CHECK(t3t.lemma_suite(2, 6, false).all_ok());  // identity certificate still decides
}

TEST_CASE("per-prime certification across levels") {
    tower t3(3);
    tower_prime_report r2 = t3.certify_prime(2, 6);
    CHECK(r2.n_p == 2);
    CHECK(r2.v_p_c.exactly_one());
    CHECK(r2.valuation_is_one);
    CHECK(r2.ok());
    for (const auto& lv : r2.levels) CHECK(lv.all_dvr);

    tower_prime_report r3 = t3.certify_prime(3, 6);
    CHECK(r3.n_p == 1);
    CHECK(r3.ok());
    for (const auto& lv : r3.levels) CHECK(lv.all_dvr);

    tower_prime_report r11 = t3.certify_prime(11, 5);
    CHECK(r11.n_p == 3);
    CHECK(r11.v_p_c.exactly_one());
    CHECK(r11.ok());

    // the v >= 2 instance: nu = 10, p = 3, n(3) = 2, v_3(C_2) = 2; some ideal
    // above 3 at level 2 must fail, and that is what the theorem asserts
    tower t10(10);
    tower_prime_report r10 = t10.certify_prime(3, 4);
    CHECK(r10.n_p == 2);
    CHECK(r10.v_p_c.at_least_two());
    CHECK_FALSE(r10.valuation_is_one);
    CHECK(r10.ok());
    CHECK_FALSE(r10.levels[1].all_dvr);
    CHECK(r10.pivot_ideal_checked);

    // a prime with no n(p) is unramified everywhere in range
    tower_prime_report r5 = t3.certify_prime(5, 4);
    CHECK_FALSE(r5.n_p.has_value());
    CHECK(r5.ok());
    for (const auto& lv : r5.levels) CHECK(lv.all_dvr);
}

TEST_CASE("rigidity probe reports valuations along multiples of n(p)") {
    tower t3(3);
    auto probe2 = t3.rigidity_probe(2, 1);
    REQUIRE(probe2.size() == 2);
    CHECK(probe2[0] == std::pair<unsigned, valuation>{2, valuation{1, false}});
    CHECK(probe2[1].first == 4);
    CHECK(probe2[1].second.value == 1);  // v_2(1086) = 1

    auto probe3 = t3.rigidity_probe(3, 2);
    for (const auto& [level, v] : probe3) {
        CHECK(v.value == 1);
        CHECK_FALSE(v.at_least);
    }

    CHECK_THROWS_AS(t3.rigidity_probe(5, 2), error);  // n(5) undefined
}
