#ifndef MONOCERT_CRITERIA_HPP
#define MONOCERT_CRITERIA_HPP

// p-maximality of Z[theta] for theta with monic minimal polynomial f, decided
// three ways and cross-checked:
//   * factorization form: every repeated irreducible factor of f mod p must
//     avoid the reduced cofactor g from f = prod(mu_i^e_i) + p*g;
//   * ideal form: f must avoid the square of the maximal ideal (p, mu(t));
//   * local form: the localization at each maximal ideal above p must be a
//     discrete valuation ring, read off a decomposition f = mu*h + p*g.
// Maximal ideals above p are represented by the irreducible factors of f mod
// p; no general ideal arithmetic is done. All operations are pure; reports
// are immutable and safe to share.

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "monocert/errors.hpp"
#include "monocert/fppoly.hpp"
#include "monocert/intpoly.hpp"

namespace monocert {

// Verdict for one maximal ideal above p, with all intermediate data.
// Invariants (enforced at construction): f = mu*h + p*g exactly,
// dvr == !in_m_squared == (gcd_triple == 1).
struct local_report {
    int_poly f;
    std::uint64_t p = 0;
    int_poly mu;          // monic; reduces to an irreducible factor of f mod p
    int_poly h;
    int_poly g;
    bool in_m_squared = false;  // f in (p, mu(t))^2
    mod_poly gcd_triple;        // gcd(mu, g, h) mod p (monic)
    bool dvr = false;

    local_report() : gcd_triple(2) {}
};

struct dedekind_report {
    int_poly f;
    std::uint64_t p = 0;
    mod_factorization factorization;  // canonical order
    std::vector<int_poly> lifts;      // lifts[i] reduces to factorization.factors[i].phi
    int_poly g;                       // f = prod lifts[i]^e_i + p*g
    std::vector<std::size_t> offending;  // indices i with e_i >= 2 and phi_i | g mod p
    bool p_maximal = false;
};

// One failure core shared by all three formalisms: phi = factors[i].phi,
// the Uchida ideal is (p, F(t)) and the Lüneburg ideal is (p, F(theta))
// for F = lift(phi).
struct witness_triple {
    std::uint64_t p = 0;
    mod_poly phi;
    std::size_t dedekind_index = 0;
    int_poly uchida_generator;  // F

    witness_triple() : phi(2) {}
};

struct dedekind_witness {
    std::uint64_t p;
    std::size_t index;
};
struct uchida_witness {
    std::uint64_t p;
    int_poly generator;  // monic F with (p, F(t)) maximal
};
struct lueneburg_witness {
    std::uint64_t p;
    mod_poly phi;  // irreducible; the ideal is (p, lift(phi)(theta))
};
using witness_input = std::variant<dedekind_witness, uchida_witness, lueneburg_witness>;

struct prime_check {
    std::uint64_t p = 0;
    unsigned disc_valuation = 0;
    bool p_maximal = false;
    std::vector<witness_triple> witnesses;
};

struct maximality_report {
    int_poly f;
    mpz_class disc;
    bool auto_mode = true;
    std::vector<prime_check> checked;
    mpz_class unresolved = 1;  // unfactored cofactor of |disc|; 1 when fully resolved

    bool all_checked_maximal() const;
    // Only auto mode with a fully factored discriminant certifies maximality.
    bool certified_maximal() const {
        return auto_mode && unresolved == 1 && all_checked_maximal();
    }
};

struct maximal_order_options {
    std::optional<std::vector<std::uint64_t>> primes;  // nullopt: auto mode
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t factor_seed = default_factor_seed;
};

// f monic and squarefree over Z (certified via a small-prime reduction, with
// an exact resultant fallback).
bool squarefree_over_z(const int_poly& f);

// The decomposition f = mu*h + p*g with h the quotient of monic division of
// f by mu and g the remainder divided by p. Preconditions: f, mu monic;
// mu irreducible mod p (MuNotIrreducible) dividing f mod p (MuDoesNotDivide).
std::pair<int_poly, int_poly> canonical_decomposition(const int_poly& f, std::uint64_t p,
                                                      const int_poly& mu);

// f in (p, mu(t))^2, decided on the canonical decomposition: membership holds
// iff mu divides both h and g mod p. (Sufficiency by expanding; necessity
// because the reduced pair (h, g) of any decomposition differs from the
// canonical one by (p*D, -mu*D), which leaves divisibility by mu unchanged.)
bool ideal_square_membership(const int_poly& f, std::uint64_t p, const int_poly& mu);

local_report dvr_local_test(const int_poly& f, std::uint64_t p, const int_poly& mu);

dedekind_report dedekind_p_maximal(const int_poly& f, std::uint64_t p,
                                   std::uint64_t seed = default_factor_seed);

// Same criterion with caller-supplied lifts of the canonical factors; the
// verdict must not depend on the choice (each lifts[i] must reduce to
// factors[i].phi).
dedekind_report dedekind_with_lifts(const int_poly& f, std::uint64_t p,
                                    std::vector<int_poly> lifts,
                                    std::uint64_t seed = default_factor_seed);

// Local test at every maximal ideal above p; p-maximal iff all are DVRs.
std::pair<bool, std::vector<local_report>> p_maximal_local(
    const int_poly& f, std::uint64_t p, std::uint64_t seed = default_factor_seed);

// The distinct irreducible factors phi of f mod p; each represents the
// maximal ideal (p, lift(phi)(theta)).
std::vector<mod_poly> maximal_ideals_above(const int_poly& f, std::uint64_t p,
                                           std::uint64_t seed = default_factor_seed);

// Completes any one witness of failure to the matched triple. Throws
// not_a_witness_error (carrying the passing verdict) if the input does not
// certify failure.
witness_triple convert_witness(const int_poly& f, const witness_input& input,
                               std::uint64_t seed = default_factor_seed);

maximality_report maximal_order_check(const int_poly& f,
                                      const maximal_order_options& options = {});

}  // namespace monocert

#endif
