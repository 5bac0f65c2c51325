#include "monocert/criteria.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace monocert {

namespace {

void require_monic(const int_poly& f, const char* what) {
    if (!f.is_monic()) {
        std::ostringstream msg;
        msg << what << " must be monic";
        throw error(errc::not_monic, msg.str());
    }
}

void require_squarefree_over_z(const int_poly& f) {
    if (!squarefree_over_z(f))
        throw error(errc::not_squarefree_over_z,
                    "polynomial has a repeated factor over Z (discriminant is 0)");
}

bool divides(const mod_poly& d, const mod_poly& a) {
    return divmod(a, d).remainder.is_zero();
}

}  // namespace

bool squarefree_over_z(const int_poly& f) {
    require_monic(f, "polynomial");
    if (*f.degree() <= 1) return true;
    // gcd(f, f') = 1 mod q for any single prime q certifies squarefreeness
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        mod_poly fq = reduce(f, q);
        if (gcd(fq, fq.derivative()).is_one()) return true;
    }
    return resultant(f, f.derivative()) != 0;
}

std::pair<int_poly, int_poly> canonical_decomposition(const int_poly& f, std::uint64_t p,
                                                      const int_poly& mu) {
    check_prime(p);
    require_monic(f, "f");
    require_monic(mu, "mu");
    mod_poly mu_bar = reduce(mu, p);
    if (mu_bar.is_zero() || *mu_bar.degree() == 0 || !is_irreducible(mu_bar))
        throw error(errc::mu_not_irreducible, "mu is not irreducible mod p");

    auto [h, r] = monic_divmod(f, mu);
    if (!reduce(r, p).is_zero())
        throw error(errc::mu_does_not_divide,
                    "mu does not divide f mod p, so the remainder is not divisible by p");
    return {h, exact_div_scalar(r, mpz_class(static_cast<unsigned long>(p)))};
}

bool ideal_square_membership(const int_poly& f, std::uint64_t p, const int_poly& mu) {
    auto [h, g] = canonical_decomposition(f, p, mu);
    mod_poly mu_bar = reduce(mu, p);
    return divides(mu_bar, reduce(h, p)) && divides(mu_bar, reduce(g, p));
}

local_report dvr_local_test(const int_poly& f, std::uint64_t p, const int_poly& mu) {
    auto [h, g] = canonical_decomposition(f, p, mu);
    mod_poly mu_bar = reduce(mu, p);
    mod_poly h_bar = reduce(h, p);
    mod_poly g_bar = reduce(g, p);

    local_report rep;
    rep.f = f;
    rep.p = p;
    rep.mu = mu;
    rep.h = h;
    rep.g = g;
    rep.in_m_squared = divides(mu_bar, h_bar) && divides(mu_bar, g_bar);
    rep.gcd_triple = gcd(gcd(mu_bar, g_bar), h_bar);
    rep.dvr = !rep.in_m_squared;

    // All formulations must agree before the report leaves this function.
    bool via_gcd = rep.gcd_triple.is_one();
    bool via_pairs = gcd(mu_bar, h_bar).is_one() || gcd(mu_bar, g_bar).is_one();
    if (via_gcd != rep.dvr || via_pairs != rep.dvr)
        throw std::logic_error("dvr_local_test: criteria disagree");
    return rep;
}

namespace {

dedekind_report dedekind_core(const int_poly& f, std::uint64_t p, mod_factorization fac,
                              std::vector<int_poly> lifts) {
    dedekind_report rep;
    rep.f = f;
    rep.p = p;
    rep.factorization = std::move(fac);
    rep.lifts = std::move(lifts);

    int_poly prod(1L);
    for (std::size_t i = 0; i < rep.lifts.size(); ++i) {
        prod = prod * pow(rep.lifts[i], rep.factorization.factors[i].multiplicity);
    }
    rep.g = exact_div_scalar(f - prod, mpz_class(static_cast<unsigned long>(p)));
    mod_poly g_bar = reduce(rep.g, p);
    for (std::size_t i = 0; i < rep.factorization.factors.size(); ++i) {
        const auto& fac_i = rep.factorization.factors[i];
        if (fac_i.multiplicity >= 2 && divides(fac_i.phi, g_bar)) rep.offending.push_back(i);
    }
    rep.p_maximal = rep.offending.empty();
    return rep;
}

}  // namespace

dedekind_report dedekind_p_maximal(const int_poly& f, std::uint64_t p, std::uint64_t seed) {
    check_prime(p);
    require_monic(f, "f");
    require_squarefree_over_z(f);
    mod_factorization fac = factor(reduce(f, p), seed);
    std::vector<int_poly> lifts;
    lifts.reserve(fac.factors.size());
    for (const auto& fc : fac.factors) lifts.push_back(lift(fc.phi));
    return dedekind_core(f, p, std::move(fac), std::move(lifts));
}

dedekind_report dedekind_with_lifts(const int_poly& f, std::uint64_t p,
                                    std::vector<int_poly> lifts, std::uint64_t seed) {
    check_prime(p);
    require_monic(f, "f");
    require_squarefree_over_z(f);
    mod_factorization fac = factor(reduce(f, p), seed);
    if (lifts.size() != fac.factors.size())
        throw error(errc::invalid_input, "dedekind_with_lifts: wrong number of lifts");
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        if (reduce(lifts[i], p) != fac.factors[i].phi)
            throw error(errc::invalid_input,
                        "dedekind_with_lifts: lift does not reduce to the canonical factor");
    }
    return dedekind_core(f, p, std::move(fac), std::move(lifts));
}

std::pair<bool, std::vector<local_report>> p_maximal_local(const int_poly& f, std::uint64_t p,
                                                           std::uint64_t seed) {
    check_prime(p);
    require_monic(f, "f");
    require_squarefree_over_z(f);
    mod_factorization fac = factor(reduce(f, p), seed);
    std::vector<local_report> reports;
    reports.reserve(fac.factors.size());
    bool all_dvr = true;
    for (const auto& fc : fac.factors) {
        reports.push_back(dvr_local_test(f, p, lift(fc.phi)));
        all_dvr = all_dvr && reports.back().dvr;
    }
    return {all_dvr, std::move(reports)};
}

std::vector<mod_poly> maximal_ideals_above(const int_poly& f, std::uint64_t p,
                                           std::uint64_t seed) {
    check_prime(p);
    require_monic(f, "f");
    require_squarefree_over_z(f);
    mod_factorization fac = factor(reduce(f, p), seed);
    std::vector<mod_poly> ideals;
    ideals.reserve(fac.factors.size());
    for (const auto& fc : fac.factors) ideals.push_back(fc.phi);
    return ideals;
}

namespace {

std::size_t locate_factor(const mod_factorization& fac, const mod_poly& phi) {
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        if (fac.factors[i].phi == phi) return i;
    }
    throw std::logic_error("locate_factor: factor not in canonical factorization");
}

witness_triple make_triple(std::uint64_t p, const mod_poly& phi, std::size_t index) {
    witness_triple w;
    w.p = p;
    w.phi = phi;
    w.dedekind_index = index;
    w.uchida_generator = lift(phi);
    return w;
}

}  // namespace

witness_triple convert_witness(const int_poly& f, const witness_input& input,
                               std::uint64_t seed) {
    if (const auto* ded = std::get_if<dedekind_witness>(&input)) {
        dedekind_report rep = dedekind_p_maximal(f, ded->p, seed);
        if (ded->index >= rep.factorization.factors.size())
            throw error(errc::invalid_input, "witness index out of range");
        if (std::find(rep.offending.begin(), rep.offending.end(), ded->index) ==
            rep.offending.end()) {
            std::ostringstream verdict;
            verdict << "factor index " << ded->index << " is not offending at p=" << ded->p
                    << " (e=" << rep.factorization.factors[ded->index].multiplicity << ")";
            throw not_a_witness_error(verdict.str(), "not a witness: " + verdict.str());
        }
        return make_triple(ded->p, rep.factorization.factors[ded->index].phi, ded->index);
    }

    if (const auto* uch = std::get_if<uchida_witness>(&input)) {
        check_prime(uch->p);
        require_monic(uch->generator, "F");
        mod_poly f_bar = reduce(uch->generator, uch->p);
        if (f_bar.is_zero() || *f_bar.degree() == 0 || !is_irreducible(f_bar))
            throw error(errc::mu_not_irreducible,
                        "F is not irreducible mod p, so (p, F(t)) is not maximal");
        bool member;
        try {
            member = ideal_square_membership(f, uch->p, uch->generator);
        } catch (const error& e) {
            if (e.code() == errc::mu_does_not_divide) {
                std::string verdict = "F does not divide f mod p, so f lies outside (p, F(t))^2";
                throw not_a_witness_error(verdict, "not a witness: " + verdict);
            }
            throw;
        }
        if (!member) {
            std::string verdict = "f is not in (p, F(t))^2: the local test at F passes";
            throw not_a_witness_error(verdict, "not a witness: " + verdict);
        }
        mod_factorization fac = factor(reduce(f, uch->p), seed);
        std::size_t index = locate_factor(fac, f_bar);
        return make_triple(uch->p, f_bar, index);
    }

    const auto& lue = std::get<lueneburg_witness>(input);
    check_prime(lue.p);
    if (lue.phi.modulus() != lue.p)
        throw error(errc::modulus_mismatch, "phi is given over a different prime");
    if (lue.phi.is_zero()) throw error(errc::zero_polynomial, "phi is zero");
    local_report rep;
    try {
        rep = dvr_local_test(f, lue.p, lift(lue.phi.make_monic()));
    } catch (const error& e) {
        if (e.code() == errc::mu_does_not_divide) {
            std::string verdict = "phi does not divide f mod p: (p, phi(theta)) is not above f";
            throw not_a_witness_error(verdict, "not a witness: " + verdict);
        }
        throw;
    }
    if (rep.dvr) {
        std::string verdict = "the localization at (p, phi(theta)) is a discrete valuation ring";
        throw not_a_witness_error(verdict, "not a witness: " + verdict);
    }
    mod_factorization fac = factor(reduce(f, lue.p), seed);
    std::size_t index = locate_factor(fac, lue.phi.make_monic());
    return make_triple(lue.p, lue.phi.make_monic(), index);
}

bool maximality_report::all_checked_maximal() const {
    return std::all_of(checked.begin(), checked.end(),
                       [](const prime_check& c) { return c.p_maximal; });
}

namespace {

unsigned divide_out(mpz_class& n, std::uint64_t q) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(q))) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(q));
        ++e;
    }
    return e;
}

prime_check run_prime_check(const int_poly& f, std::uint64_t p, unsigned disc_val,
                            std::uint64_t seed) {
    prime_check chk;
    chk.p = p;
    chk.disc_valuation = disc_val;
    auto [ok, reports] = p_maximal_local(f, p, seed);
    chk.p_maximal = ok;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!reports[i].dvr) {
            witness_triple w;
            w.p = p;
            w.phi = reduce(reports[i].mu, p);
            w.dedekind_index = i;
            w.uchida_generator = reports[i].mu;
            chk.witnesses.push_back(std::move(w));
        }
    }
    return chk;
}

}  // namespace

maximality_report maximal_order_check(const int_poly& f, const maximal_order_options& options) {
    require_monic(f, "f");
    maximality_report rep;
    rep.f = f;
    rep.disc = discriminant(f);
    if (rep.disc == 0)
        throw error(errc::not_squarefree_over_z,
                    "polynomial has a repeated factor over Z (discriminant is 0)");

    if (options.primes) {
        rep.auto_mode = false;
        rep.unresolved = 1;
        for (std::uint64_t p : *options.primes) {
            check_prime(p);
            mpz_class d = rep.disc;
            unsigned v = divide_out(d, p);
            rep.checked.push_back(run_prime_check(f, p, v, options.factor_seed));
        }
        return rep;
    }

    rep.auto_mode = true;
    mpz_class rest = abs(rep.disc);
    std::vector<std::pair<std::uint64_t, unsigned>> found;
    auto take = [&](std::uint64_t q) {
        unsigned e = divide_out(rest, q);
        if (e > 0) found.emplace_back(q, e);
    };
    take(2);
    take(3);
    for (std::uint64_t q = 5; q <= options.trial_bound && rest > 1; q += 6) {
        if (q * q > rest) break;
        take(q);
        take(q + 2);
    }
    if (rest > 1) {
        // cofactor smaller than bound^2 is prime; otherwise try GMP's proof
        // for small cases and a perfect-square peel before giving up
        mpz_class bound_sq;
        mpz_ui_pow_ui(bound_sq.get_mpz_t(), options.trial_bound, 2);
        bool rest_prime = rest < bound_sq ||
                          mpz_probab_prime_p(rest.get_mpz_t(), 40) == 2;
        if (rest_prime) {
            if (mpz_fits_ulong_p(rest.get_mpz_t()) && rest.get_ui() < (1ULL << 31)) {
                found.emplace_back(rest.get_ui(), 1);
            }
            // a prime cofactor occurs to the first power: no check needed
            rest = 1;
        } else if (mpz_perfect_square_p(rest.get_mpz_t())) {
            mpz_class root = sqrt(rest);
            if (mpz_probab_prime_p(root.get_mpz_t(), 40) == 2 &&
                mpz_fits_ulong_p(root.get_mpz_t()) && root.get_ui() < (1ULL << 31)) {
                found.emplace_back(root.get_ui(), 2);
                rest = 1;
            }
        }
    }
    rep.unresolved = rest;
    std::sort(found.begin(), found.end());
    for (const auto& [q, e] : found) {
        if (e >= 2) rep.checked.push_back(run_prime_check(f, q, e, options.factor_seed));
    }
    return rep;
}

}  // namespace monocert
