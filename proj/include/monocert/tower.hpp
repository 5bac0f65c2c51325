#ifndef MONOCERT_TOWER_HPP
#define MONOCERT_TOWER_HPP

// The family x_{n+1} = sqrt(nu + x_n), x_0 = 0: minimal polynomials
// P_n = (t^2 - nu)^(composed n times), their constant-term dynamics
// C_{n+1} = C_n^2 - nu, the t^2 coefficients D_{n+1} = 2*C_n*D_n, Eisenstein
// structure, discriminant bookkeeping, and the per-prime certification that
// ties v_p(C_{n(p)}) to the local structure of Z[x_n] at every level.
//
// Caches are filled lazily per level and are append-only; concurrent readers
// are fine once a level exists, but first computation of a level must happen
// from a single thread.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "monocert/criteria.hpp"
#include "monocert/errors.hpp"
#include "monocert/fppoly.hpp"
#include "monocert/intpoly.hpp"

namespace monocert {

// A p-adic valuation that may have been cut off at a cap: at_least == false
// means the value is exact; at_least == true means "v >= value".
struct valuation {
    unsigned long long value = 0;
    bool at_least = false;

    bool exactly_one() const { return !at_least && value == 1; }
    bool at_least_two() const { return value >= 2; }
    std::string to_string() const {
        return (at_least ? ">=" : "") + std::to_string(value);
    }
    friend bool operator==(const valuation& a, const valuation& b) {
        return a.value == b.value && a.at_least == b.at_least;
    }
};

struct tower_options {
    unsigned poly_depth_cap = 12;   // P_n materialized up to degree 2^cap
    unsigned scalar_cap = 20;       // exact integer C_n, D_n up to this level
    unsigned val_cap = 8;           // valuations computed mod p^val_cap
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t factor_seed = default_factor_seed;
};

struct support_result {
    std::vector<std::uint64_t> primes;  // distinct primes dividing x, found by trial division
    mpz_class cofactor;                 // 1 when the factorization is complete
};

// Bound-limited prime support of a nonzero integer by trial division. A
// leftover cofactor below bound^2 is prime and is included; larger leftovers
// stay in `cofactor`.
support_result prime_support(const mpz_class& x, std::uint64_t bound);

struct eisenstein_report {
    unsigned level = 0;
    mpz_class nu;
    long shift_a = 0;     // the shift used for odd levels (0 or 1)
    bool parity_ok = false;        // no monomial of odd degree
    bool two_eisenstein = false;   // after the shift for odd n, unshifted for even n
    std::vector<std::pair<mpz_class, bool>> nu_prime_checks;  // p | nu -> P_n p-Eisenstein
    std::vector<std::string> notes;

    bool all_ok() const;
};

// Symbolic factorization of disc(x_n) through the recursion
// disc(x_1) = 4*nu, disc(x_n) = disc(x_{n-1})^2 * 2^(2^n) * C_n:
// disc(x_n) = sign * 2^exp2 * prod_{k=1..n} |C_k|^(2^(n-k)), and the k = 1
// slot doubles as the nu-part of the seed since |C_1| = nu.
struct factored_disc {
    unsigned level = 0;
    unsigned long long exp2 = 0;  // n * 2^n
    std::vector<unsigned long long> c_exponents;  // index k-1 holds 2^(n-k), k = 1..n
    unsigned long long nu_exponent = 0;           // 2^(n-1), same datum as c_exponents[0]
    int sign = 1;
};

struct index_check {
    unsigned index = 0;
    bool ok = false;
};

struct pair_check {
    unsigned k = 0;
    unsigned l = 0;
    bool ok = false;
};

struct support_check {
    unsigned n = 0;  // compares s(D_{n+1}) with the union of s(C_k), k <= n
    std::vector<std::uint64_t> d_support;      // primes <= bound dividing D_{n+1}
    std::vector<std::uint64_t> c_union;        // primes <= bound dividing some C_k
    bool truncated_equal = false;  // equality restricted to primes <= bound (exact there)
    bool complete = false;         // both sides fully factored within the bound
    bool identity_ok = false;      // D_{n+1} = 2^n*prod(C_k) and 2 | some C_k: certifies
                                   // the full support equality without factoring
    bool ok = false;
};

struct lemma_report {
    std::uint64_t p = 0;
    unsigned n_p = 0;
    unsigned depth = 0;
    std::vector<support_check> supports;
    std::vector<index_check> periodicity;    // C_{n+n(p)} = C_n mod p
    std::vector<index_check> divisibility;   // P_r | P_{r+n(p)} mod p
    std::vector<pair_check> coprimality;     // gcd(P_k, P_l) = 1 for k != l mod n(p)
    std::vector<index_check> separability;   // P_n^2*R_{n(p)}(P_n) + D_{n(p)} separable
    std::vector<std::string> notes;

    bool all_ok() const;
};

struct level_verdict {
    unsigned level = 0;
    std::vector<std::pair<mod_poly, bool>> ideal_dvr;  // (phi, localization is a DVR)
    bool all_dvr = false;
};

struct tower_prime_report {
    std::uint64_t p = 0;
    std::optional<unsigned> n_p;
    valuation v_p_c;                // v_p(C_{n(p)}) when n_p is set
    bool valuation_is_one = false;  // v = 1 exactly
    std::vector<level_verdict> levels;
    // v = 1 implies every ideal at every tested level gives a DVR:
    bool dvr_everywhere_ok = true;
    // v >= 2 implies some ideal above p at level n(p) fails:
    bool pivot_failure_ok = true;
    // The ideal (p, x_{n(p)}) itself: mu = t there, t divides h-bar, and
    // membership of P_{n(p)} in (p, t)^2 happens exactly when p^2 | C_{n(p)}.
    bool pivot_ideal_checked = false;
    bool pivot_ideal_ok = true;
    std::vector<std::string> notes;

    bool ok() const {
        return dvr_everywhere_ok && pivot_failure_ok &&
               (!pivot_ideal_checked || pivot_ideal_ok);
    }
};

class tower {
  public:
    // Requires nu >= 2, squarefree, congruent to 2 or 3 mod 4; anything else
    // is rejected with invalid_nu naming the failed condition.
    explicit tower(mpz_class nu, tower_options options = {});

    const mpz_class& nu() const { return nu_; }
    const tower_options& options() const { return opt_; }
    // Notes that apply to every report of this tower (e.g. the nu = 2 flag).
    const std::vector<std::string>& notes() const { return notes_; }

    // P_n (P_0 = t, P_1 = t^2 - nu), computed by P_{n+1} = P_n^2 - nu.
    const int_poly& minpoly(unsigned n) const;

    const mpz_class& c_term(unsigned n) const;   // C_n = P_n(0), n >= 1
    const mpz_class& d_coeff(unsigned n) const;  // D_n = [t^2] P_n, n >= 1

    // R_n with P_n = R_n*t^4 + D_n*t^2 + C_n.
    int_poly r_poly(unsigned n) const;

    // Smallest n >= 1 with p | C_n, by orbit detection of 0 under x -> x^2-nu
    // in F_p; nullopt if the orbit never returns to 0.
    std::optional<unsigned> n_of_p(std::uint64_t p) const;

    // v_p(C_n) computed mod p^cap (defaults to options().val_cap).
    valuation v_p_c(unsigned n, std::uint64_t p, unsigned cap = 0) const;

    eisenstein_report eisenstein(unsigned n) const;

    factored_disc disc_factored(unsigned n) const;
    valuation disc_valuation(unsigned n, std::uint64_t p) const;
    // Expands the recursion to the integer disc(x_n); needs exact C_k.
    mpz_class disc_value(unsigned n) const;

    // exact_supports: require complete factorizations for the support checks
    // and raise unfactored_support when the trial bound is insufficient.
    lemma_report lemma_suite(std::uint64_t p, unsigned depth,
                             bool exact_supports = false) const;

    // Per-prime certification: relates v_p(C_{n(p)}) to the local structure
    // of Z[x_n] at every level 1..max_level.
    tower_prime_report certify_prime(std::uint64_t p, unsigned max_level) const;

    // v_p(C_{(k+1)*n(p)}) for k = 0..steps.
    std::vector<std::pair<unsigned, valuation>> rigidity_probe(std::uint64_t p,
                                                               unsigned steps) const;

  private:
    const support_result& c_support(unsigned k) const;
    const support_result& d_support(unsigned k) const;

    mpz_class nu_;
    tower_options opt_;
    std::vector<std::string> notes_;
    std::vector<std::uint64_t> nu_primes_;  // prime factorization of nu (squarefree)
    mutable std::vector<int_poly> pn_;
    mutable std::vector<mpz_class> c_;
    mutable std::vector<mpz_class> d_;
    mutable std::map<unsigned, support_result> c_support_cache_;
    mutable std::map<unsigned, support_result> d_support_cache_;
};

// Monic, every non-leading coefficient divisible by p, constant term not
// divisible by p^2.
bool is_eisenstein(const int_poly& f, const mpz_class& p);

}  // namespace monocert

#endif
