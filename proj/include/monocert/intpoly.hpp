#ifndef MONOCERT_INTPOLY_HPP
#define MONOCERT_INTPOLY_HPP

// Dense univariate polynomials over Z with arbitrary-precision coefficients.
// All operations are exact; values are immutable in spirit (every operation
// returns a fresh polynomial) and safe to share across threads.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "monocert/errors.hpp"

namespace monocert {

class int_poly {
  public:
    // Zero polynomial (empty coefficient vector).
    int_poly() = default;
    explicit int_poly(mpz_class constant) { assign_constant(std::move(constant)); }
    explicit int_poly(long constant) { assign_constant(mpz_class(constant)); }

    // coeffs[k] is the coefficient of t^k; trailing zeros are stripped.
    static int_poly from_coeffs(std::vector<mpz_class> coeffs);
    static int_poly variable();                               // t
    static int_poly monomial(mpz_class coeff, std::size_t k); // coeff * t^k

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    // degree() of the zero polynomial is "nothing", never -1.
    std::optional<std::size_t> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    // Coefficient of t^k; zero beyond the degree.
    const mpz_class& coeff(std::size_t k) const;
    const mpz_class& leading_coeff() const;  // throws zero_polynomial
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    friend bool operator==(const int_poly& a, const int_poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const int_poly& a, const int_poly& b) { return !(a == b); }

    int_poly operator-() const;
    friend int_poly operator+(const int_poly& a, const int_poly& b);
    friend int_poly operator-(const int_poly& a, const int_poly& b);
    friend int_poly operator*(const int_poly& a, const int_poly& b);
    friend int_poly operator*(const int_poly& a, const mpz_class& s);
    friend int_poly operator*(const mpz_class& s, const int_poly& a) { return a * s; }

    int_poly derivative() const;
    mpz_class eval(const mpz_class& x) const;

    std::string to_string() const;  // canonical renderer, e.g. "t^4 - 6*t^2 + 6"

  private:
    void assign_constant(mpz_class c);
    void normalize();

    std::vector<mpz_class> coeffs_;
};

struct divmod_result {
    int_poly quotient;
    int_poly remainder;
};

// Exact division with remainder by a monic divisor: f = d*q + r, deg r < deg d.
// Throws non_monic_divisor if d is not monic (in particular if d is zero).
divmod_result monic_divmod(const int_poly& f, const int_poly& d);

// f(g(t)).
int_poly compose(const int_poly& f, const int_poly& g);

// f(t + a).
int_poly shift(const int_poly& f, const mpz_class& a);

// f^e with f^0 = 1.
int_poly pow(const int_poly& f, unsigned long e);

// f/m where m must divide every coefficient; throws inexact_division_error
// naming the first (lowest-index) offending coefficient.
int_poly exact_div_scalar(const int_poly& f, const mpz_class& m);

// Resultant via the subresultant PRS (fraction-free; no rational intermediates).
mpz_class resultant(const int_poly& f, const int_poly& g);

// (-1)^(n(n-1)/2) * res(f, f') for monic f of degree n; throws zero_polynomial.
mpz_class discriminant(const int_poly& f);

}  // namespace monocert

#endif
