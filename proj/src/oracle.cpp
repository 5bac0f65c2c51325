#include "monocert/oracle.hpp"

#include <sstream>
#include <stdexcept>

#include "monocert/fppoly.hpp"

namespace monocert {

rational_matrix rational_matrix::identity(std::size_t n) {
    rational_matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

rational_matrix rational_matrix::companion(const int_poly& f) {
    if (!f.is_monic()) throw error(errc::not_monic, "companion matrix needs a monic polynomial");
    const std::size_t n = *f.degree();
    if (n == 0) throw error(errc::invalid_input, "companion matrix needs degree >= 1");
    rational_matrix m(n);
    // theta * theta^j = theta^(j+1); theta * theta^(n-1) = -sum c_i theta^i
    for (std::size_t j = 0; j + 1 < n; ++j) m.at(j + 1, j) = 1;
    for (std::size_t i = 0; i < n; ++i) m.at(i, n - 1) = mpq_class(-f.coeff(i));
    return m;
}

rational_matrix rational_matrix::operator*(const rational_matrix& rhs) const {
    if (n_ != rhs.n_) throw std::logic_error("rational_matrix: size mismatch");
    rational_matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const mpq_class& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                out.at(i, j) += x * rhs.at(k, j);
            }
        }
    }
    return out;
}

rational_matrix& rational_matrix::operator+=(const rational_matrix& rhs) {
    if (n_ != rhs.n_) throw std::logic_error("rational_matrix: size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

rational_matrix& rational_matrix::scale(const mpq_class& s) {
    for (auto& x : a_) x *= s;
    return *this;
}

mpq_class rational_matrix::trace() const {
    mpq_class t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

std::vector<mpq_class> charpoly(const rational_matrix& a) {
    const std::size_t n = a.size();
    std::vector<mpq_class> c(n + 1);
    c[n] = 1;
    // M_k = A*M_{k-1} + c_{n-k+1}*I, c_{n-k} = -tr(A*M_k)/k
    rational_matrix m = rational_matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
        }
        m = a * m;
        c[n - k] = -m.trace() / mpq_class(static_cast<unsigned long>(k));
    }
    return c;
}

namespace {

// Next scalar-class representative in lexicographic order (a_0 major), i.e.
// vectors whose first nonzero coordinate is 1. Returns false when exhausted.
bool next_representative(std::vector<std::uint64_t>& a, std::uint64_t p) {
    const std::size_t n = a.size();
    for (;;) {
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (a[i] + 1 < p) {
                ++a[i];
                for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
                break;
            }
            if (i == 0) return false;
        }
        std::size_t first = 0;
        while (first < n && a[first] == 0) ++first;
        if (first < n && a[first] == 1) return true;
    }
}

// integer matrices mod p for the nilpotency prefilter
using word_matrix = std::vector<std::uint64_t>;

word_matrix mat_mul_mod(const word_matrix& x, const word_matrix& y, std::size_t n,
                        std::uint64_t p) {
    word_matrix out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t v = x[i * n + k];
            if (v == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                out[i * n + j] =
                    (out[i * n + j] + static_cast<unsigned __int128>(v) * y[k * n + j]) % p;
            }
        }
    }
    return out;
}

bool is_nilpotent_mod_p(word_matrix a, std::size_t n, std::uint64_t p) {
    // A^n = 0 iff the charpoly of A is x^n mod p
    std::size_t e = 1;
    while (e < n) {
        a = mat_mul_mod(a, a, n, p);
        e *= 2;
    }
    for (std::uint64_t v : a)
        if (v != 0) return false;
    return true;
}

}  // namespace

oracle_result index_divisible_by_p(const int_poly& f, std::uint64_t p,
                                   std::uint64_t enumeration_cap) {
    check_prime(p);
    if (!f.is_monic()) throw error(errc::not_monic, "oracle needs a monic polynomial");
    const std::size_t n = *f.degree();
    if (n == 0) throw error(errc::invalid_input, "oracle needs degree >= 1");

    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), n);
    if (total > enumeration_cap) {
        std::ostringstream msg;
        msg << "p^deg = " << total.get_str() << " exceeds the enumeration cap "
            << enumeration_cap;
        throw error(errc::cap_exceeded, msg.str());
    }

    // powers of the companion matrix, exact and reduced mod p
    std::vector<rational_matrix> powers;
    powers.push_back(rational_matrix::identity(n));
    rational_matrix comp = rational_matrix::companion(f);
    for (std::size_t i = 1; i < n; ++i) powers.push_back(powers.back() * comp);

    std::vector<word_matrix> powers_mod(n, word_matrix(n * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const mpq_class& q = powers[i].at(r, c);
                // entries are integers here
                powers_mod[i][r * n + c] =
                    mpz_fdiv_ui(q.get_num().get_mpz_t(), static_cast<unsigned long>(p));
            }
        }
    }

    oracle_result res;
    std::vector<std::uint64_t> a(n, 0);
    const mpq_class inv_p(1, static_cast<unsigned long>(p));
    while (next_representative(a, p)) {
        ++res.classes_scanned;

        // integrality of charpoly(alpha) forces A = p*alpha nilpotent mod p;
        // that cheap necessary condition screens out almost every class
        word_matrix acc(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n * n; ++j) {
                acc[j] = (acc[j] + static_cast<unsigned __int128>(a[i]) * powers_mod[i][j]) % p;
            }
        }
        if (!is_nilpotent_mod_p(std::move(acc), n, p)) continue;

        rational_matrix alpha(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            rational_matrix term = powers[i];
            term.scale(mpq_class(static_cast<unsigned long>(a[i])));
            alpha += term;
        }
        alpha.scale(inv_p);
        std::vector<mpq_class> cp = charpoly(alpha);
        bool integral = true;
        for (const auto& c : cp) {
            if (c.get_den() != 1) {
                integral = false;
                break;
            }
        }
        if (integral) {
            res.divides = true;
            res.certificate = a;
            for (const auto& c : cp) res.witness_charpoly.push_back(c.get_num());
            return res;
        }
    }
    return res;
}

}  // namespace monocert
