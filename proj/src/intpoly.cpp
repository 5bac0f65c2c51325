#include "monocert/intpoly.hpp"

#include <sstream>
#include <utility>

namespace monocert {

namespace {
const mpz_class kZero = 0;
}

void int_poly::assign_constant(mpz_class c) {
    coeffs_.clear();
    if (c != 0) coeffs_.push_back(std::move(c));
}

void int_poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int_poly int_poly::from_coeffs(std::vector<mpz_class> coeffs) {
    int_poly f;
    f.coeffs_ = std::move(coeffs);
    f.normalize();
    return f;
}

int_poly int_poly::variable() { return monomial(1, 1); }

int_poly int_poly::monomial(mpz_class coeff, std::size_t k) {
    int_poly f;
    if (coeff != 0) {
        f.coeffs_.assign(k + 1, 0);
        f.coeffs_[k] = std::move(coeff);
    }
    return f;
}

const mpz_class& int_poly::coeff(std::size_t k) const {
    if (k >= coeffs_.size()) return kZero;
    return coeffs_[k];
}

const mpz_class& int_poly::leading_coeff() const {
    if (coeffs_.empty()) throw error(errc::zero_polynomial, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

int_poly int_poly::operator-() const {
    int_poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

int_poly operator+(const int_poly& a, const int_poly& b) {
    int_poly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    r.normalize();
    return r;
}

int_poly operator-(const int_poly& a, const int_poly& b) {
    int_poly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    r.normalize();
    return r;
}

int_poly operator*(const int_poly& a, const int_poly& b) {
    if (a.is_zero() || b.is_zero()) return int_poly();
    int_poly r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                       b.coeffs_[j].get_mpz_t());
        }
    }
    r.normalize();
    return r;
}

int_poly operator*(const int_poly& a, const mpz_class& s) {
    if (s == 0) return int_poly();
    int_poly r = a;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

int_poly int_poly::derivative() const {
    if (coeffs_.size() <= 1) return int_poly();
    int_poly r;
    r.coeffs_.resize(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) r.coeffs_[k - 1] = coeffs_[k] * mpz_class(k);
    r.normalize();
    return r;
}

mpz_class int_poly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc *= x;
        acc += coeffs_[i];
    }
    return acc;
}

divmod_result monic_divmod(const int_poly& f, const int_poly& d) {
    if (!d.is_monic())
        throw error(errc::non_monic_divisor, "monic_divmod: divisor is not monic");
    const std::size_t m = *d.degree();
    if (f.is_zero() || *f.degree() < m) return {int_poly(), f};

    std::vector<mpz_class> rem = f.coeffs();
    const std::size_t n = rem.size() - 1;
    std::vector<mpz_class> quo(n - m + 1, 0);
    for (std::size_t k = n;; --k) {
        mpz_class c = rem[k];
        if (c != 0) {
            quo[k - m] = c;
            // rem -= c * d * t^(k-m); the leading term cancels by construction
            rem[k] = 0;
            for (std::size_t j = 0; j < m; ++j) {
                mpz_submul(rem[k - m + j].get_mpz_t(), c.get_mpz_t(), d.coeffs()[j].get_mpz_t());
            }
        }
        if (k == m) break;
    }
    rem.resize(m);
    return {int_poly::from_coeffs(std::move(quo)), int_poly::from_coeffs(std::move(rem))};
}

int_poly compose(const int_poly& f, const int_poly& g) {
    int_poly acc;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        acc = acc * g + int_poly(f.coeffs()[i]);
    }
    return acc;
}

int_poly shift(const int_poly& f, const mpz_class& a) {
    if (a == 0 || f.is_zero()) return f;
    // Horner in (t + a): acc <- acc*(t+a) + c_k.
    std::vector<mpz_class> acc;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        acc.insert(acc.begin(), 0);
        for (std::size_t j = 0; j + 1 < acc.size(); ++j) {
            mpz_addmul(acc[j].get_mpz_t(), a.get_mpz_t(), acc[j + 1].get_mpz_t());
        }
        acc[0] += f.coeffs()[i];
    }
    return int_poly::from_coeffs(std::move(acc));
}

int_poly pow(const int_poly& f, unsigned long e) {
    int_poly acc(1L);
    int_poly base = f;
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

int_poly exact_div_scalar(const int_poly& f, const mpz_class& m) {
    if (m == 0) throw error(errc::invalid_input, "exact_div_scalar: zero divisor");
    std::vector<mpz_class> out(f.coeffs().size());
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        if (!mpz_divisible_p(f.coeffs()[k].get_mpz_t(), m.get_mpz_t())) {
            std::ostringstream msg;
            msg << "exact_div_scalar: coefficient at index " << k << " not divisible by "
                << m.get_str();
            throw inexact_division_error(k, msg.str());
        }
        mpz_divexact(out[k].get_mpz_t(), f.coeffs()[k].get_mpz_t(), m.get_mpz_t());
    }
    return int_poly::from_coeffs(std::move(out));
}

namespace {

mpz_class content_of(const int_poly& f) {
    mpz_class g = 0;
    for (const auto& c : f.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;  // 0 only for the zero polynomial
}

// Pseudo-remainder: lc(d)^(deg f - deg d + 1) * f = q*d + R with deg R < deg d.
int_poly pseudo_rem(const int_poly& f, const int_poly& d) {
    const mpz_class& lc = d.leading_coeff();
    const std::size_t m = *d.degree();
    long e = static_cast<long>(*f.degree()) - static_cast<long>(m) + 1;
    int_poly r = f;
    while (!r.is_zero() && *r.degree() >= m) {
        const std::size_t k = *r.degree();
        int_poly t = int_poly::monomial(r.leading_coeff(), k - m) * d;
        r = r * lc - t;
        --e;
    }
    // pad remaining lc powers so the scaling is exactly lc^(delta+1)
    while (e-- > 0) r = r * lc;
    return r;
}

}  // namespace

mpz_class resultant(const int_poly& f, const int_poly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    std::size_t df = *f.degree(), dg = *g.degree();
    if (df == 0 && dg == 0) return 1;
    if (df == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f.coeffs()[0].get_mpz_t(), dg);
        return r;
    }
    if (dg == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g.coeffs()[0].get_mpz_t(), df);
        return r;
    }

    int_poly a = f, b = g;
    int sign = 1;
    if (df < dg) {
        std::swap(a, b);
        if ((df & 1) && (dg & 1)) sign = -sign;
    }

    // Strip contents up front: res(ca, db) = c^deg(b) d^deg(a) res(a, b).
    mpz_class ca = content_of(a), cb = content_of(b);
    a = exact_div_scalar(a, ca);
    b = exact_div_scalar(b, cb);
    mpz_class scale, tmp;
    mpz_pow_ui(scale.get_mpz_t(), ca.get_mpz_t(), *b.degree());
    mpz_pow_ui(tmp.get_mpz_t(), cb.get_mpz_t(), *a.degree());
    scale *= tmp;

    mpz_class gg = 1, hh = 1;
    for (;;) {
        const std::size_t da = *a.degree(), db = *b.degree();
        const std::size_t delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        int_poly r = pseudo_rem(a, b);
        a = b;
        if (r.is_zero()) {
            // positive-degree common factor
            return 0;
        }
        mpz_class denom;
        mpz_pow_ui(denom.get_mpz_t(), hh.get_mpz_t(), delta);
        denom *= gg;
        b = exact_div_scalar(r, denom);
        gg = a.leading_coeff();
        if (delta > 0) {
            // h <- g^delta / h^(delta-1)
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), gg.get_mpz_t(), delta);
            mpz_pow_ui(den.get_mpz_t(), hh.get_mpz_t(), delta - 1);
            mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (*b.degree() == 0) break;
    }
    // res = sign * scale * lc(b)^deg(a) / h^(deg(a)-1)
    const std::size_t da = *a.degree();
    mpz_class num, den, res;
    mpz_pow_ui(num.get_mpz_t(), b.coeffs()[0].get_mpz_t(), da);
    mpz_pow_ui(den.get_mpz_t(), hh.get_mpz_t(), da - 1);
    mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    res *= scale;
    if (sign < 0) res = -res;
    return res;
}

mpz_class discriminant(const int_poly& f) {
    if (f.is_zero()) throw error(errc::zero_polynomial, "discriminant of zero polynomial");
    if (!f.is_monic())
        throw error(errc::not_monic, "discriminant: polynomial must be monic");
    const std::size_t n = *f.degree();
    if (n == 0) return 1;
    mpz_class r = resultant(f, f.derivative());
    if (((n * (n - 1)) / 2) % 2 == 1) r = -r;
    return r;
}

std::string int_poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const mpz_class& c = coeffs_[i];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (i == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << "*";
            out << "t";
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

}  // namespace monocert
