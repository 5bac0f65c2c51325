#ifndef MONOCERT_FPPOLY_HPP
#define MONOCERT_FPPOLY_HPP

// Univariate polynomial arithmetic and complete factorization over a prime
// field F_p. Moduli are validated by trial division at the entry points
// (reduce and the constructors used by the CLI); internal operations trust
// their inputs. Values are immutable; operations are pure and, given the
// seed, deterministic.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "monocert/errors.hpp"
#include "monocert/intpoly.hpp"

namespace monocert {

class mod_poly {
  public:
    explicit mod_poly(std::uint64_t p) : p_(p) {}
    mod_poly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

    static mod_poly constant(std::uint64_t p, std::uint64_t c);
    static mod_poly variable(std::uint64_t p);
    static mod_poly monomial(std::uint64_t p, std::uint64_t c, std::size_t k);

    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
    std::optional<std::size_t> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    std::uint64_t coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }
    std::uint64_t leading_coeff() const;
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    friend bool operator==(const mod_poly& a, const mod_poly& b) {
        return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const mod_poly& a, const mod_poly& b) { return !(a == b); }

    mod_poly operator-() const;
    friend mod_poly operator+(const mod_poly& a, const mod_poly& b);
    friend mod_poly operator-(const mod_poly& a, const mod_poly& b);
    friend mod_poly operator*(const mod_poly& a, const mod_poly& b);

    mod_poly scalar_mul(std::uint64_t c) const;
    mod_poly make_monic() const;  // requires nonzero
    mod_poly derivative() const;
    std::uint64_t eval(std::uint64_t x) const;

    std::string to_string() const;

  private:
    void normalize();

    std::uint64_t p_;
    std::vector<std::uint64_t> coeffs_;
};

struct mod_divmod_result {
    mod_poly quotient;
    mod_poly remainder;
};

// Field division with remainder; throws zero_polynomial if d = 0.
mod_divmod_result divmod(const mod_poly& f, const mod_poly& d);

// Monic gcd; gcd(0, 0) = 0.
mod_poly gcd(const mod_poly& a, const mod_poly& b);

// b^e mod m by square-and-multiply; throws zero_polynomial if m = 0.
mod_poly powmod(const mod_poly& b, const mpz_class& e, const mod_poly& m);

bool is_irreducible(const mod_poly& f);

// (factor, multiplicity) pairs: pairwise coprime squarefree parts, exact in
// characteristic p (p-th powers are peeled off via the Frobenius).
std::vector<std::pair<mod_poly, unsigned>> squarefree_decomposition(const mod_poly& f);

// Product of the distinct irreducible factors (the radical), char-p aware.
mod_poly squarefree_part(const mod_poly& f);

struct mod_factor {
    mod_poly phi;            // monic irreducible
    unsigned multiplicity;   // >= 1
};

struct mod_factorization {
    std::uint64_t p = 0;
    std::uint64_t unit = 1;  // leading coefficient of the input
    std::vector<mod_factor> factors;

    mod_poly reconstruct() const;
};

inline constexpr std::uint64_t default_factor_seed = 0x5eed0001;

// Complete factorization: squarefree decomposition, then distinct-degree,
// then equal-degree splitting (Cantor–Zassenhaus; trace map for p = 2; root
// enumeration for linear factors over tiny fields). The factor list is
// canonically ordered (degree, then coefficient vectors compared from the
// constant term up), so output does not depend on the random splitting path.
mod_factorization factor(const mod_poly& f, std::uint64_t seed = default_factor_seed);

// Ordering used for canonical factor lists.
bool canonical_less(const mod_poly& a, const mod_poly& b);

// Trial-division primality validation; also rejects moduli >= 2^31, which is
// far beyond the desk scale this library targets.
void check_prime(std::uint64_t p);

// Coefficientwise reduction into [0, p); validates that p is prime.
mod_poly reduce(const int_poly& f, std::uint64_t p);

// Canonical lift with coefficients in [0, p).
int_poly lift(const mod_poly& f);

}  // namespace monocert

#endif
