#include "support/cyclotomic.hpp"

#include <stdexcept>
#include <vector>

namespace monocert::testsupport {

int_poly cyclotomic(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
    // t^n - 1 divided by the cyclotomic polynomials of the proper divisors
    std::vector<mpz_class> c(n + 1, 0);
    c[0] = -1;
    c[n] = 1;
    int_poly acc = int_poly::from_coeffs(std::move(c));
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) {
            auto [q, r] = monic_divmod(acc, cyclotomic(d));
            if (!r.is_zero()) throw std::logic_error("cyclotomic: division left a remainder");
            acc = q;
        }
    }
    return acc;
}

int_poly real_cyclotomic_minpoly(unsigned n) {
    if (n == 0) throw std::invalid_argument("real_cyclotomic_minpoly: n must be positive");
    if (n == 1) return int_poly::from_coeffs({-2, 1});  // zeta = 1
    if (n == 2) return int_poly::from_coeffs({2, 1});   // zeta = -1
    int_poly phi = cyclotomic(n);
    const std::size_t m = *phi.degree() / 2;
    // phi is palindromic of even degree 2m for n >= 3, so
    // phi(t)/t^m = a_m + sum_{k>=1} a_{m+k} (t^k + t^-k), and t^k + t^-k is a
    // polynomial v_k in x = t + 1/t with v_0 = 2, v_1 = x, v_{k+1} = x*v_k - v_{k-1}.
    int_poly vk_prev(2L);
    int_poly vk = int_poly::variable();
    int_poly acc(phi.coeff(m));
    for (std::size_t k = 1; k <= m; ++k) {
        acc = acc + vk * phi.coeff(m + k);
        int_poly next = int_poly::variable() * vk - vk_prev;
        vk_prev = vk;
        vk = next;
    }
    return acc;
}

}  // namespace monocert::testsupport
