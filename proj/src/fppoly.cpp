#include "monocert/fppoly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace monocert {

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p) s -= p;
    return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; a != 0 mod p, p prime
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw std::logic_error("invmod: argument not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

void require_same_modulus(const mod_poly& a, const mod_poly& b) {
    if (a.modulus() != b.modulus()) {
        std::ostringstream msg;
        msg << "modulus mismatch: " << a.modulus() << " vs " << b.modulus();
        throw error(errc::modulus_mismatch, msg.str());
    }
}

}  // namespace

void mod_poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mod_poly::mod_poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p) {
    coeffs_ = std::move(coeffs);
    for (auto& c : coeffs_) c %= p_;
    normalize();
}

mod_poly mod_poly::constant(std::uint64_t p, std::uint64_t c) {
    return mod_poly(p, std::vector<std::uint64_t>{c});
}

mod_poly mod_poly::variable(std::uint64_t p) { return monomial(p, 1, 1); }

mod_poly mod_poly::monomial(std::uint64_t p, std::uint64_t c, std::size_t k) {
    std::vector<std::uint64_t> v(k + 1, 0);
    v[k] = c;
    return mod_poly(p, std::move(v));
}

std::uint64_t mod_poly::leading_coeff() const {
    if (coeffs_.empty())
        throw error(errc::zero_polynomial, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

mod_poly mod_poly::operator-() const {
    mod_poly r = *this;
    for (auto& c : r.coeffs_)
        if (c != 0) c = p_ - c;
    return r;
}

mod_poly operator+(const mod_poly& a, const mod_poly& b) {
    require_same_modulus(a, b);
    mod_poly r(a.p_);
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        r.coeffs_[i] = addmod(r.coeffs_[i], b.coeffs_[i], a.p_);
    r.normalize();
    return r;
}

mod_poly operator-(const mod_poly& a, const mod_poly& b) {
    require_same_modulus(a, b);
    mod_poly r(a.p_);
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        r.coeffs_[i] = submod(r.coeffs_[i], b.coeffs_[i], a.p_);
    r.normalize();
    return r;
}

mod_poly operator*(const mod_poly& a, const mod_poly& b) {
    require_same_modulus(a, b);
    if (a.is_zero() || b.is_zero()) return mod_poly(a.p_);
    const std::uint64_t p = a.p_;
    mod_poly r(p);
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    // accumulate in 128 bits; p < 2^31 keeps every partial sum in range
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) {
        unsigned __int128 acc = 0;
        const std::size_t lo = k >= b.coeffs_.size() ? k - b.coeffs_.size() + 1 : 0;
        const std::size_t hi = std::min(k, a.coeffs_.size() - 1);
        for (std::size_t i = lo; i <= hi; ++i) {
            acc += static_cast<unsigned __int128>(a.coeffs_[i]) * b.coeffs_[k - i];
        }
        r.coeffs_[k] = static_cast<std::uint64_t>(acc % p);
    }
    r.normalize();
    return r;
}

mod_poly mod_poly::scalar_mul(std::uint64_t c) const {
    c %= p_;
    if (c == 0) return mod_poly(p_);
    mod_poly r = *this;
    for (auto& x : r.coeffs_) x = mulmod(x, c, p_);
    r.normalize();
    return r;
}

mod_poly mod_poly::make_monic() const {
    std::uint64_t lc = leading_coeff();
    if (lc == 1) return *this;
    return scalar_mul(invmod(lc, p_));
}

mod_poly mod_poly::derivative() const {
    if (coeffs_.size() <= 1) return mod_poly(p_);
    mod_poly r(p_);
    r.coeffs_.resize(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        r.coeffs_[k - 1] = mulmod(coeffs_[k], k % p_, p_);
    r.normalize();
    return r;
}

std::uint64_t mod_poly::eval(std::uint64_t x) const {
    x %= p_;
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p_), coeffs_[i], p_);
    return acc;
}

std::string mod_poly::to_string() const {
    std::ostringstream out;
    out << lift(*this).to_string() << " (mod " << p_ << ")";
    return out.str();
}

mod_divmod_result divmod(const mod_poly& f, const mod_poly& d) {
    require_same_modulus(f, d);
    if (d.is_zero()) throw error(errc::zero_polynomial, "divmod: zero divisor");
    const std::uint64_t p = f.modulus();
    const std::size_t m = *d.degree();
    if (f.is_zero() || *f.degree() < m) return {mod_poly(p), f};

    const std::uint64_t inv_lc = invmod(d.leading_coeff(), p);
    std::vector<std::uint64_t> rem = f.coeffs();
    const std::size_t n = rem.size() - 1;
    std::vector<std::uint64_t> quo(n - m + 1, 0);
    for (std::size_t k = n;; --k) {
        if (rem[k] != 0) {
            std::uint64_t c = mulmod(rem[k], inv_lc, p);
            quo[k - m] = c;
            rem[k] = 0;
            for (std::size_t j = 0; j < m; ++j) {
                rem[k - m + j] = submod(rem[k - m + j], mulmod(c, d.coeffs()[j], p), p);
            }
        }
        if (k == m) break;
    }
    rem.resize(m);
    return {mod_poly(p, std::move(quo)), mod_poly(p, std::move(rem))};
}

mod_poly gcd(const mod_poly& a, const mod_poly& b) {
    require_same_modulus(a, b);
    mod_poly x = a, y = b;
    while (!y.is_zero()) {
        mod_poly r = divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.make_monic();
}

mod_poly powmod(const mod_poly& b, const mpz_class& e, const mod_poly& m) {
    require_same_modulus(b, m);
    if (m.is_zero()) throw error(errc::zero_polynomial, "powmod: zero modulus");
    if (e < 0) throw error(errc::invalid_input, "powmod: negative exponent");
    const std::uint64_t p = b.modulus();
    if (*m.degree() == 0) return mod_poly(p);  // everything is 0 mod a unit
    mod_poly acc = mod_poly::constant(p, 1);
    if (e == 0) return acc;
    mod_poly base = divmod(b, m).remainder;
    const mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = bits; i-- > 0;) {
        acc = divmod(acc * acc, m).remainder;
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = divmod(acc * base, m).remainder;
    }
    return acc;
}

namespace {

// f = u(t^p) -> u(t); valid over the prime field, where c^p = c.
mod_poly pth_root(const mod_poly& f) {
    const std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> out((f.coeffs().size() + p - 1) / p, 0);
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        if (k % p == 0) {
            out[k / p] = f.coeffs()[k];
        } else if (f.coeffs()[k] != 0) {
            throw std::logic_error("pth_root: polynomial is not a p-th power");
        }
    }
    return mod_poly(p, std::move(out));
}

mod_poly random_nonconstant(std::uint64_t p, std::size_t deg_bound, std::mt19937_64& rng) {
    // uniform polynomial of degree in [1, deg_bound]
    std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
    for (;;) {
        std::vector<std::uint64_t> c(deg_bound + 1);
        for (auto& x : c) x = coef(rng);
        mod_poly u(p, std::move(c));
        if (!u.is_zero() && *u.degree() >= 1) return u;
    }
}

// g monic squarefree, every irreducible factor of degree d, deg g > d.
void equal_degree_split(const mod_poly& g, std::size_t d, std::mt19937_64& rng,
                        std::vector<mod_poly>& out) {
    const std::uint64_t p = g.modulus();
    if (*g.degree() == d) {
        out.push_back(g);
        return;
    }
    if (d == 1 && p <= 257) {
        // deterministic: all roots lie in F_p, scan for them
        mod_poly rest = g;
        for (std::uint64_t c = 0; c < p && !(*rest.degree() == 0); ++c) {
            if (rest.eval(c) == 0) {
                mod_poly lin(p, {p - c == p ? 0 : p - c, 1});  // t - c
                out.push_back(lin);
                rest = divmod(rest, lin).quotient;
            }
        }
        return;
    }
    mod_poly splitter(p);
    for (;;) {
        mod_poly u = random_nonconstant(p, *g.degree() - 1, rng);
        mod_poly h = gcd(u, g);
        if (!h.is_one() && *h.degree() < *g.degree()) {
            splitter = h;
            break;
        }
        if (p == 2) {
            // trace map: u + u^2 + u^4 + ... + u^(2^(d-1)) mod g
            mod_poly cur = divmod(u, g).remainder;
            mod_poly tr = cur;
            for (std::size_t i = 1; i < d; ++i) {
                cur = divmod(cur * cur, g).remainder;
                tr = tr + cur;
            }
            h = gcd(tr, g);
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), p, d);
            e = (e - 1) / 2;
            mod_poly w = powmod(u, e, g);
            h = gcd(w - mod_poly::constant(p, 1), g);
        }
        if (!h.is_zero() && !h.is_one() && *h.degree() < *g.degree()) {
            splitter = h;
            break;
        }
    }
    equal_degree_split(splitter, d, rng, out);
    equal_degree_split(divmod(g, splitter).quotient, d, rng, out);
}

// g monic squarefree: list of (product of irreducibles of degree d, d).
std::vector<std::pair<mod_poly, std::size_t>> distinct_degree_split(const mod_poly& g) {
    const std::uint64_t p = g.modulus();
    std::vector<std::pair<mod_poly, std::size_t>> out;
    mod_poly rest = g;
    mod_poly h = divmod(mod_poly::variable(p), rest).remainder;  // t^(p^0) = t
    std::size_t d = 0;
    while (!(*rest.degree() == 0) && *rest.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, mpz_class(static_cast<unsigned long>(p)), rest);
        mod_poly block = gcd(h - mod_poly::variable(p), rest);
        if (!block.is_one()) {
            out.emplace_back(block, d);
            rest = divmod(rest, block).quotient;
            if (*rest.degree() > 0) h = divmod(h, rest).remainder;
        }
    }
    if (*rest.degree() > 0) out.emplace_back(rest, *rest.degree());
    return out;
}

}  // namespace

std::vector<std::pair<mod_poly, unsigned>> squarefree_decomposition(const mod_poly& f) {
    if (f.is_zero())
        throw error(errc::zero_polynomial, "squarefree_decomposition of zero polynomial");
    const std::uint64_t p = f.modulus();
    std::vector<std::pair<mod_poly, unsigned>> out;
    mod_poly cur = f.make_monic();
    unsigned e = 1;
    while (*cur.degree() > 0) {
        mod_poly der = cur.derivative();
        if (der.is_zero()) {
            cur = pth_root(cur);
            e *= static_cast<unsigned>(p);
            continue;
        }
        mod_poly t = gcd(cur, der);
        mod_poly w = divmod(cur, t).quotient;  // distinct factors with mult not divisible by p
        unsigned j = 1;
        while (*w.degree() > 0) {
            mod_poly y = gcd(w, t);
            mod_poly z = divmod(w, y).quotient;  // factors of exact multiplicity j
            if (*z.degree() > 0) out.emplace_back(z, e * j);
            w = std::move(y);
            t = divmod(t, w).quotient;
            ++j;
        }
        cur = std::move(t);  // remaining part: all multiplicities divisible by p
    }
    return out;
}

mod_poly squarefree_part(const mod_poly& f) {
    if (f.is_zero()) throw error(errc::zero_polynomial, "squarefree_part of zero polynomial");
    if (*f.degree() == 0) return mod_poly::constant(f.modulus(), 1);
    mod_poly rad = mod_poly::constant(f.modulus(), 1);
    for (const auto& [g, mult] : squarefree_decomposition(f)) {
        (void)mult;
        rad = rad * g;
    }
    return rad;
}

bool is_irreducible(const mod_poly& f) {
    if (f.is_zero()) throw error(errc::zero_polynomial, "is_irreducible of zero polynomial");
    const std::size_t n = *f.degree();
    if (n == 0) return false;
    if (n == 1) return true;
    const std::uint64_t p = f.modulus();
    const mod_poly fm = f.make_monic();
    const mod_poly t = mod_poly::variable(p);

    // prime divisors of n
    std::vector<std::size_t> qs;
    std::size_t m = n;
    for (std::size_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            qs.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) qs.push_back(m);

    // Rabin: t^(p^n) = t mod f and gcd(t^(p^(n/q)) - t, f) = 1 for prime q | n
    mod_poly h = divmod(t, fm).remainder;
    const mpz_class pe(static_cast<unsigned long>(p));
    for (std::size_t k = 1; k <= n; ++k) {
        h = powmod(h, pe, fm);
        for (std::size_t q : qs) {
            if (k == n / q) {
                if (!gcd(h - t, fm).is_one()) return false;
            }
        }
    }
    return h == divmod(t, fm).remainder;
}

mod_poly mod_factorization::reconstruct() const {
    mod_poly acc = mod_poly::constant(p, unit);
    for (const auto& fac : factors) {
        mod_poly pw = mod_poly::constant(p, 1);
        for (unsigned i = 0; i < fac.multiplicity; ++i) pw = pw * fac.phi;
        acc = acc * pw;
    }
    return acc;
}

bool canonical_less(const mod_poly& a, const mod_poly& b) {
    const std::size_t da = a.is_zero() ? 0 : *a.degree() + 1;
    const std::size_t db = b.is_zero() ? 0 : *b.degree() + 1;
    if (da != db) return da < db;
    for (std::size_t i = 0; i < da; ++i) {
        if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
    }
    return false;
}

mod_factorization factor(const mod_poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw error(errc::zero_polynomial, "factor of zero polynomial");
    mod_factorization res;
    res.p = f.modulus();
    res.unit = f.leading_coeff();
    if (*f.degree() == 0) return res;

    std::mt19937_64 rng(seed);
    const mod_poly fm = f.make_monic();
    for (const auto& [part, mult] : squarefree_decomposition(fm)) {
        for (const auto& [block, d] : distinct_degree_split(part)) {
            std::vector<mod_poly> irred;
            equal_degree_split(block, d, rng, irred);
            for (auto& phi : irred) res.factors.push_back({std::move(phi), mult});
        }
    }
    std::sort(res.factors.begin(), res.factors.end(),
              [](const mod_factor& a, const mod_factor& b) {
                  return canonical_less(a.phi, b.phi);
              });

    // sanity: the factorization must reconstruct the input exactly
    if (res.reconstruct() != f) throw std::logic_error("factor: reconstruction mismatch");
    return res;
}

void check_prime(std::uint64_t p) {
    if (p >= (1ULL << 31))
        throw error(errc::invalid_input, "modulus too large (must be < 2^31)");
    if (p < 2) throw error(errc::not_prime, std::to_string(p) + " is not prime");
    for (std::uint64_t d : {2ULL, 3ULL}) {
        if (p == d) return;
        if (p % d == 0) throw error(errc::not_prime, std::to_string(p) + " is not prime");
    }
    for (std::uint64_t d = 5; d * d <= p; d += 6) {
        if (p % d == 0 || p % (d + 2) == 0)
            throw error(errc::not_prime, std::to_string(p) + " is not prime");
    }
}

mod_poly reduce(const int_poly& f, std::uint64_t p) {
    check_prime(p);
    std::vector<std::uint64_t> out(f.coeffs().size());
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        out[k] = mpz_fdiv_ui(f.coeffs()[k].get_mpz_t(), static_cast<unsigned long>(p));
    }
    return mod_poly(p, std::move(out));
}

int_poly lift(const mod_poly& f) {
    std::vector<mpz_class> out(f.coeffs().size());
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        out[k] = static_cast<unsigned long>(f.coeffs()[k]);
    }
    return int_poly::from_coeffs(std::move(out));
}

}  // namespace monocert
