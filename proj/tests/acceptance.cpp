// Acceptance suite: end-to-end certification of the library against its
// contract. Each criterion prints one [PASS]/[FAIL] line; the process exits
// nonzero if any fails. Budgets are asserted where the contract names one.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "monocert/criteria.hpp"
#include "monocert/oracle.hpp"
#include "monocert/parse.hpp"
#include "monocert/tower.hpp"
#include "support/cyclotomic.hpp"
#include "support/generators.hpp"

using namespace monocert;
using namespace monocert::testsupport;

namespace {

int_poly P(const char* s) { return parse_poly(s); }

struct criterion_outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

class harness {
  public:
    void criterion(int num, const std::string& label,
                   const std::function<void(criterion_outcome&)>& body,
                   double budget_seconds = 0.0) {
        criterion_outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(out);
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget_seconds > 0 && secs >= budget_seconds) {
            out.ok = false;
            out.detail << "; runtime " << secs << "s exceeds budget " << budget_seconds << "s";
        }
        std::cout << (out.ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << label;
        if (!out.detail.str().empty()) std::cout << " — " << out.detail.str();
        std::cout << " (" << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
        if (!out.ok) ++failures_;
    }

    int exit_code() const { return failures_ == 0 ? 0 : 1; }

  private:
    int failures_ = 0;
};

// Corpus shared by criteria 1 and 2: monic, squarefree over Z, degree 2..8,
// coefficients bounded by 50. Plain random polynomials plus g^2 + p*h
// instances (still within the bounds) so that repeated factors mod p occur
// often enough to exercise both verdicts.
std::vector<int_poly> build_equivalence_corpus(std::size_t at_least) {
    std::mt19937_64 rng(20240601);
    std::vector<int_poly> corpus;
    auto coeff_bounded = [](const int_poly& f, long bound) {
        for (const auto& c : f.coeffs())
            if (abs(c) > bound) return false;
        return true;
    };
    while (corpus.size() < at_least) {
        std::size_t deg = 2 + rng() % 7;
        int_poly f = random_monic(rng, deg, 50);
        if (squarefree_over_z(f)) corpus.push_back(f);
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        for (int i = 0; i < 20; ++i) {
            int_poly g = random_monic(rng, 1 + rng() % 2, 3);
            int_poly h = random_poly(rng, *g.degree() * 2 - 1, 3);
            int_poly f = g * g + int_poly(mpz_class(static_cast<unsigned long>(p))) * h;
            if (!f.is_monic() || *f.degree() < 2) continue;
            if (!coeff_bounded(f, 50)) continue;
            if (squarefree_over_z(f)) corpus.push_back(f);
        }
    }
    return corpus;
}

const std::vector<std::uint64_t> small_primes_13 = {2, 3, 5, 7, 11, 13};

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) out.push_back(p);
    }
    return out;
}

bool p2_divides_disc(const int_poly& f, std::uint64_t p) {
    mpz_class disc = discriminant(f);
    mpz_class p2 = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    return mpz_divisible_p(disc.get_mpz_t(), p2.get_mpz_t());
}

const std::vector<mpz_class> tower_nus = {2, 3, 6, 7, 10, 11};

}  // namespace

int main() {
    harness h;
    std::vector<int_poly> corpus = build_equivalence_corpus(500);

    h.criterion(
        1,
        "ideal-square membership, gcd triple, and DVR verdicts are mutually consistent",
        [&](criterion_outcome& out) {
            std::size_t checks = 0, discrepancies = 0;
            for (const int_poly& f : corpus) {
                for (std::uint64_t p : small_primes_13) {
                    if (!p2_divides_disc(f, p)) continue;
                    for (const auto& fc : factor(reduce(f, p)).factors) {
                        int_poly mu = lift(fc.phi);
                        local_report rep = dvr_local_test(f, p, mu);
                        bool member = ideal_square_membership(f, p, mu);
                        bool gcd_one = rep.gcd_triple.is_one();
                        if (rep.dvr != !member || rep.dvr != gcd_one) ++discrepancies;
                        ++checks;
                    }
                }
            }
            out.detail << corpus.size() << " polynomials, " << checks << " local checks, "
                       << discrepancies << " discrepancies";
            out.require(discrepancies == 0, "inconsistent criteria");
            out.require(checks > 0, "corpus exercised no local check");
        },
        30.0);

    h.criterion(
        2, "factorization-form and local-form p-maximality verdicts coincide",
        [&](criterion_outcome& out) {
            std::size_t checks = 0, discrepancies = 0;
            for (const int_poly& f : corpus) {
                for (std::uint64_t p : small_primes_13) {
                    if (!p2_divides_disc(f, p)) continue;
                    if (dedekind_p_maximal(f, p).p_maximal != p_maximal_local(f, p).first)
                        ++discrepancies;
                    ++checks;
                }
            }
            out.detail << checks << " (f, p) pairs, " << discrepancies << " discrepancies";
            out.require(discrepancies == 0, "criteria disagree");
        });

    h.criterion(
        3, "brute-force index oracle equals the negated p-maximality verdict",
        [&](criterion_outcome& out) {
            std::mt19937_64 rng(20240602);
            std::vector<int_poly> instances = {P("t^2-5"),          P("t^2+1"), P("t^2+4"),
                                               P("t^3-t^2-2*t-8"),  P("t^4-t^2+1"),
                                               P("t^2-17"),         P("t^3-t-1")};
            while (instances.size() < 200) {
                std::size_t deg = 2 + rng() % 5;
                instances.push_back(random_monic_irreducible(rng, deg, 20));
            }
            std::size_t checks = 0, discrepancies = 0;
            for (const int_poly& f : instances) {
                for (std::uint64_t p : {2, 3, 5}) {
                    mpz_class cap;
                    mpz_ui_pow_ui(cap.get_mpz_t(), p, *f.degree());
                    if (cap > 1'000'000) continue;
                    bool divides = index_divisible_by_p(f, p, 1'000'000).divides;
                    bool maximal = dedekind_p_maximal(f, p).p_maximal;
                    if (divides != !maximal) ++discrepancies;
                    ++checks;
                }
            }
            out.detail << instances.size() << " polynomials, " << checks << " oracle runs, "
                       << discrepancies << " discrepancies";
            out.require(discrepancies == 0, "oracle and criterion disagree");
        },
        300.0);

    h.criterion(4, "classical instances behave exactly as known", [&](criterion_outcome& out) {
        out.require(dedekind_p_maximal(P("t^2+1"), 2).p_maximal, "t^2+1 must be 2-maximal");
        out.require(!index_divisible_by_p(P("t^2+1"), 2).divides, "oracle on t^2+1");

        dedekind_report golden = dedekind_p_maximal(P("t^2-5"), 2);
        out.require(!golden.p_maximal, "t^2-5 must fail at 2");
        witness_triple w = convert_witness(P("t^2-5"), dedekind_witness{2, 0});
        out.require(w.phi == reduce(P("t+1"), 2), "witness core must be t+1");
        out.require(w.uchida_generator == P("t+1"), "Uchida generator must be t+1");

        dedekind_report cubic = dedekind_p_maximal(P("t^3-t^2-2*t-8"), 2);
        out.require(!cubic.p_maximal, "the cubic must fail at 2");
        oracle_result oc = index_divisible_by_p(P("t^3-t^2-2*t-8"), 2);
        out.require(oc.divides, "oracle must confirm the cubic");
        out.detail << "3 instances, witness core " << lift(w.phi).to_string();
    });

    h.criterion(5, "cyclotomic and real-cyclotomic generators give maximal orders",
                [&](criterion_outcome& out) {
                    std::size_t failures = 0, checked_primes = 0;
                    for (unsigned n = 1; n <= 24; ++n) {
                        for (const int_poly& f : {cyclotomic(n), real_cyclotomic_minpoly(n)}) {
                            maximality_report rep = maximal_order_check(f);
                            checked_primes += rep.checked.size();
                            if (!rep.certified_maximal()) ++failures;
                            for (const auto& chk : rep.checked) {
                                if (!chk.p_maximal) ++failures;
                            }
                        }
                        // the real-subfield polynomial really is Phi_n read in
                        // the variable t + 1/t
                        if (n >= 3) {
                            int_poly psi = real_cyclotomic_minpoly(n);
                            std::size_t m = *psi.degree();
                            int_poly lhs;
                            int_poly tsq1 = P("t^2+1");
                            for (std::size_t k = 0; k <= m; ++k) {
                                lhs = lhs +
                                      int_poly::monomial(psi.coeff(k), m - k) * pow(tsq1, k);
                            }
                            if (lhs != cyclotomic(n)) ++failures;
                        }
                    }
                    out.detail << "48 generators, " << checked_primes << " candidate primes, "
                               << failures << " failures";
                    out.require(failures == 0, "a cyclotomic order failed certification");
                });

    h.criterion(6, "tower structure: P_2 closed form, Eisenstein reports, disc recursion",
                [&](criterion_outcome& out) {
                    std::size_t failures = 0;
                    for (const mpz_class& nu : tower_nus) {
                        tower tw(nu);
                        int_poly p2_expected =
                            int_poly::from_coeffs({nu * nu - nu, 0, -2 * nu, 0, 1});
                        if (tw.minpoly(2) != p2_expected) ++failures;
                        for (unsigned n = 1; n <= 8; ++n) {
                            if (!tw.eisenstein(n).all_ok()) ++failures;
                        }
                        for (unsigned n = 1; n <= 3; ++n) {
                            if (tw.disc_value(n) != discriminant(tw.minpoly(n))) ++failures;
                        }
                    }
                    out.detail << tower_nus.size() << " towers, levels up to 8, " << failures
                               << " failures";
                    out.require(failures == 0, "tower structure check failed");
                });

    h.criterion(
        7, "dynamical lemma suite holds for every applicable prime up to 50, depth 8",
        [&](criterion_outcome& out) {
            std::size_t suites = 0, failures = 0;
            for (const mpz_class& nu : tower_nus) {
                tower tw(nu);
                for (std::uint64_t p : primes_up_to(50)) {
                    if (!tw.n_of_p(p)) continue;
                    lemma_report rep = tw.lemma_suite(p, 8);
                    ++suites;
                    if (!rep.all_ok()) ++failures;
                }
            }
            out.detail << suites << " (nu, p) suites, " << failures << " failures";
            out.require(failures == 0, "a lemma check failed");
            out.require(suites > 0, "no suite ran");
        },
        120.0);

    h.criterion(
        8, "per-prime tower certification (v = 1 everywhere-DVR; v >= 2 fails at n(p))",
        [&](criterion_outcome& out) {
            std::size_t reports = 0, violations = 0, v1 = 0, v2 = 0;
            for (const mpz_class& nu : tower_nus) {
                tower tw(nu);
                for (std::uint64_t p : primes_up_to(100)) {
                    auto np = tw.n_of_p(p);
                    if (!np || *np > 6) continue;
                    tower_prime_report rep = tw.certify_prime(p, 6);
                    ++reports;
                    if (!rep.ok()) ++violations;
                    if (!rep.pivot_ideal_checked) ++violations;  // (p, x_{n(p)}) must be exercised
                    if (rep.v_p_c.exactly_one()) ++v1;
                    if (rep.v_p_c.at_least_two()) ++v2;
                }
            }
            out.detail << reports << " (nu, p) reports (" << v1 << " with v=1, " << v2
                       << " with v>=2), " << violations << " violations";
            out.require(violations == 0, "certification violated");
            out.require(v1 > 0, "no v=1 instance in range");
            // the v>=2 direction is exercised either by a real instance or by
            // the synthetic (p, x_{n(p)}) check, which ran in every report
        });

    h.criterion(9, "gcd triple is invariant across decomposition shifts (1000 tuples)",
                [&](criterion_outcome& out) {
                    std::mt19937_64 rng(20240603);
                    std::size_t done = 0, failures = 0;
                    while (done < 1000) {
                        int_poly f = random_monic_squarefree(rng, 2 + rng() % 6, 30);
                        std::uint64_t p = small_primes_13[rng() % small_primes_13.size()];
                        mod_factorization fac = factor(reduce(f, p));
                        if (fac.factors.empty()) continue;
                        int_poly mu = lift(fac.factors[rng() % fac.factors.size()].phi);
                        auto [hh, gg] = canonical_decomposition(f, p, mu);
                        int_poly delta = random_poly(rng, 5, 12);
                        int_poly pz(mpz_class(static_cast<unsigned long>(p)));
                        int_poly h2 = hh + pz * delta;
                        int_poly g2 = gg - mu * delta;
                        if (mu * h2 + pz * g2 != f) {
                            ++failures;
                            ++done;
                            continue;
                        }
                        mod_poly mu_bar = reduce(mu, p);
                        mod_poly t1 = gcd(gcd(mu_bar, reduce(gg, p)), reduce(hh, p));
                        mod_poly t2 = gcd(gcd(mu_bar, reduce(g2, p)), reduce(h2, p));
                        if (t1 != t2) ++failures;
                        ++done;
                    }
                    out.detail << done << " tuples, " << failures << " failures";
                    out.require(failures == 0, "gcd triple changed under a shift");
                });

    return h.exit_code();
}
