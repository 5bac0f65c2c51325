#ifndef MONOCERT_TESTS_GENERATORS_HPP
#define MONOCERT_TESTS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "monocert/criteria.hpp"
#include "monocert/fppoly.hpp"
#include "monocert/intpoly.hpp"

namespace monocert::testsupport {

inline int_poly random_poly(std::mt19937_64& rng, std::size_t max_deg, long coeff_bound) {
    std::uniform_int_distribution<std::size_t> degd(0, max_deg);
    std::uniform_int_distribution<long> cd(-coeff_bound, coeff_bound);
    std::vector<mpz_class> c(degd(rng) + 1);
    for (auto& x : c) x = cd(rng);
    return int_poly::from_coeffs(std::move(c));
}

inline int_poly random_monic(std::mt19937_64& rng, std::size_t deg, long coeff_bound) {
    std::uniform_int_distribution<long> cd(-coeff_bound, coeff_bound);
    std::vector<mpz_class> c(deg + 1);
    for (std::size_t i = 0; i < deg; ++i) c[i] = cd(rng);
    c[deg] = 1;
    return int_poly::from_coeffs(std::move(c));
}

inline int_poly random_monic_squarefree(std::mt19937_64& rng, std::size_t deg,
                                        long coeff_bound) {
    for (;;) {
        int_poly f = random_monic(rng, deg, coeff_bound);
        if (squarefree_over_z(f)) return f;
    }
}

// Certified irreducible over Q: f irreducible mod q for some small prime q.
// Rejection sampling; only certifies, never decides.
inline int_poly random_monic_irreducible(std::mt19937_64& rng, std::size_t deg,
                                         long coeff_bound) {
    for (;;) {
        int_poly f = random_monic(rng, deg, coeff_bound);
        for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
            mod_poly fq = reduce(f, q);
            if (*fq.degree() == deg && is_irreducible(fq)) return f;
        }
    }
}

inline mod_poly random_mod_poly(std::mt19937_64& rng, std::uint64_t p, std::size_t max_deg) {
    std::uniform_int_distribution<std::size_t> degd(0, max_deg);
    std::uniform_int_distribution<std::uint64_t> cd(0, p - 1);
    std::vector<std::uint64_t> c(degd(rng) + 1);
    for (auto& x : c) x = cd(rng);
    return mod_poly(p, std::move(c));
}

}  // namespace monocert::testsupport

#endif
