#ifndef MONOCERT_ORACLE_HPP
#define MONOCERT_ORACLE_HPP

// Brute-force ground truth for whether p divides the index [O_K : Z[theta]]:
// enumerate alpha = (a_0 + a_1*theta + ... + a_{n-1}*theta^{n-1})/p over one
// representative per scalar class of nonzero a in F_p^n and test algebraic
// integrality via an exact characteristic polynomial of the multiplication
// matrix. Deliberately independent of the factorization-based criteria.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "monocert/errors.hpp"
#include "monocert/intpoly.hpp"

namespace monocert {

class rational_matrix {
  public:
    explicit rational_matrix(std::size_t n) : n_(n), a_(n * n, 0) {}

    static rational_matrix identity(std::size_t n);
    // Multiplication-by-theta matrix on the basis 1, theta, ..., theta^(n-1);
    // f must be monic of degree n >= 1.
    static rational_matrix companion(const int_poly& f);

    std::size_t size() const { return n_; }
    mpq_class& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const mpq_class& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    rational_matrix operator*(const rational_matrix& rhs) const;
    rational_matrix& operator+=(const rational_matrix& rhs);
    rational_matrix& scale(const mpq_class& s);

    mpq_class trace() const;

  private:
    std::size_t n_;
    std::vector<mpq_class> a_;  // row-major, canonicalized mpq
};

// Exact characteristic polynomial (monic, coefficient of x^k at index k) by
// the Faddeev-LeVerrier recurrence over exact rationals.
std::vector<mpq_class> charpoly(const rational_matrix& m);

struct oracle_result {
    bool divides = false;                   // p | [O_K : Z[theta]]
    std::vector<std::uint64_t> certificate; // witnessing a, lexicographically smallest
    std::vector<mpz_class> witness_charpoly;  // integer charpoly of the witness alpha
    std::uint64_t classes_scanned = 0;
};

// f monic (irreducibility is the caller's responsibility); requires
// p^deg(f) <= enumeration_cap, else cap_exceeded.
oracle_result index_divisible_by_p(const int_poly& f, std::uint64_t p,
                                   std::uint64_t enumeration_cap = 1'000'000);

}  // namespace monocert

#endif
