#include "monocert/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "monocert/criteria.hpp"
#include "monocert/errors.hpp"
#include "monocert/fppoly.hpp"
#include "monocert/intpoly.hpp"
#include "monocert/oracle.hpp"
#include "monocert/parse.hpp"
#include "monocert/tower.hpp"

namespace monocert::cli {

namespace {

using nlohmann::json;

constexpr const char* schema_version = "1";

const char* errc_name(errc c) {
    switch (c) {
        case errc::non_monic_divisor: return "non-monic-divisor";
        case errc::inexact_division: return "inexact-division";
        case errc::zero_polynomial: return "zero-polynomial";
        case errc::not_prime: return "not-prime";
        case errc::modulus_mismatch: return "modulus-mismatch";
        case errc::mu_not_irreducible: return "mu-not-irreducible";
        case errc::mu_does_not_divide: return "mu-does-not-divide";
        case errc::not_squarefree_over_z: return "not-squarefree-over-z";
        case errc::not_a_witness: return "not-a-witness";
        case errc::invalid_nu: return "invalid-nu";
        case errc::depth_cap_exceeded: return "depth-cap-exceeded";
        case errc::cap_exceeded: return "cap-exceeded";
        case errc::not_monic: return "not-monic";
        case errc::unfactored_support: return "unfactored-support";
        case errc::parse_error: return "parse-error";
        case errc::invalid_input: return "invalid-input";
    }
    return "unknown";
}

std::string jz(const mpz_class& z) { return z.get_str(); }
std::string jpoly(const int_poly& f) { return f.to_string(); }
std::string jmod(const mod_poly& f) { return lift(f).to_string(); }

json witness_json(const witness_triple& w) {
    json j;
    j["p"] = w.p;
    j["phi"] = jmod(w.phi);
    j["dedekind_index"] = w.dedekind_index;
    j["uchida_ideal"] = "(" + std::to_string(w.p) + ", " + jpoly(w.uchida_generator) + ")";
    j["lueneburg_ideal"] =
        "(" + std::to_string(w.p) + ", [" + jpoly(w.uchida_generator) + "](theta))";
    return j;
}

void print_witness(std::ostream& out, const witness_triple& w) {
    out << "  witness core phi = " << jmod(w.phi) << " (factor index " << w.dedekind_index
        << ")\n"
        << "    Dedekind: (p, i) = (" << w.p << ", " << w.dedekind_index << ")\n"
        << "    Uchida ideal of Z[t]:      (" << w.p << ", " << jpoly(w.uchida_generator)
        << ")\n"
        << "    Lueneburg ideal of Z[theta]: (" << w.p << ", ["
        << jpoly(w.uchida_generator) << "](theta))\n";
}

std::string valuation_str(const valuation& v) { return v.to_string(); }

// Common per-invocation state shared by the handlers.
struct session {
    bool json_mode = false;
    std::uint64_t seed = default_factor_seed;
    unsigned depth_cap = 12;
    unsigned scalar_cap = 20;
    unsigned val_cap = 8;
    std::uint64_t enum_cap = 1'000'000;
    std::uint64_t trial_bound = 1'000'000;

    std::string command;
    json inputs = json::object();
    json result = json::object();
    std::vector<std::string> warnings;
    std::ostringstream text;
    int exit_code = 0;

    tower_options towopt() const {
        tower_options o;
        o.poly_depth_cap = depth_cap;
        o.scalar_cap = scalar_cap;
        o.val_cap = val_cap;
        o.trial_bound = trial_bound;
        o.factor_seed = seed;
        return o;
    }

    void emit(std::ostream& out) const {
        if (json_mode) {
            json env;
            env["schema_version"] = schema_version;
            env["command"] = command;
            env["inputs"] = inputs;
            env["result"] = result;
            env["warnings"] = warnings;
            out << env.dump(2) << "\n";
        } else {
            out << text.str();
            for (const auto& w : warnings) out << "warning: " << w << "\n";
        }
    }

    void emit_error(std::ostream& err, const error& e) {
        if (json_mode) {
            json env;
            env["schema_version"] = schema_version;
            env["command"] = command;
            env["inputs"] = inputs;
            env["result"] = nullptr;
            json detail;
            detail["code"] = errc_name(e.code());
            detail["message"] = e.what();
            if (const auto* pe = dynamic_cast<const parse_error*>(&e)) {
                detail["column"] = pe->column();
                detail["expected"] = pe->expected();
            }
            if (const auto* ie = dynamic_cast<const inexact_division_error*>(&e)) {
                detail["coefficient_index"] = ie->coefficient_index();
            }
            if (const auto* nw = dynamic_cast<const not_a_witness_error*>(&e)) {
                detail["verdict"] = nw->verdict();
            }
            env["error"] = detail;
            env["warnings"] = warnings;
            err << env.dump(2) << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
    }
};

int_poly parse_poly_arg(session& s, const std::string& key, const std::string& text) {
    s.inputs[key] = text;
    int_poly f = parse_poly(text);
    s.inputs[key + "_canonical"] = jpoly(f);
    return f;
}

void run_factor_modp(session& s, const std::string& poly, std::uint64_t p) {
    s.command = "factor-modp";
    int_poly f = parse_poly_arg(s, "poly", poly);
    s.inputs["prime"] = p;
    mod_factorization fac = factor(reduce(f, p), s.seed);
    s.result["unit"] = fac.unit;
    json arr = json::array();
    s.text << jpoly(f) << " mod " << p << " factors as:\n  unit " << fac.unit << "\n";
    for (const auto& fc : fac.factors) {
        arr.push_back({{"phi", jmod(fc.phi)}, {"multiplicity", fc.multiplicity}});
        s.text << "  (" << jmod(fc.phi) << ")^" << fc.multiplicity << "\n";
    }
    s.result["factors"] = arr;
    s.exit_code = 0;
}

void run_dedekind(session& s, const std::string& poly, std::uint64_t p) {
    s.command = "dedekind";
    int_poly f = parse_poly_arg(s, "poly", poly);
    s.inputs["prime"] = p;
    dedekind_report rep = dedekind_p_maximal(f, p, s.seed);
    json factors = json::array();
    for (std::size_t i = 0; i < rep.factorization.factors.size(); ++i) {
        const auto& fc = rep.factorization.factors[i];
        factors.push_back({{"index", i},
                           {"phi", jmod(fc.phi)},
                           {"multiplicity", fc.multiplicity},
                           {"lift", jpoly(rep.lifts[i])}});
    }
    s.result["factorization"] = factors;
    s.result["g"] = jpoly(rep.g);
    s.result["offending"] = rep.offending;
    s.result["p_maximal"] = rep.p_maximal;

    s.text << "Dedekind criterion for f = " << jpoly(f) << " at p = " << p << "\n";
    for (std::size_t i = 0; i < rep.factorization.factors.size(); ++i) {
        const auto& fc = rep.factorization.factors[i];
        s.text << "  phi_" << i << " = " << jmod(fc.phi) << ", e = " << fc.multiplicity << "\n";
    }
    s.text << "  g = " << jpoly(rep.g) << "\n";
    json witnesses = json::array();
    if (rep.p_maximal) {
        s.text << "verdict: Z[theta] is " << p << "-maximal\n";
        s.exit_code = 0;
    } else {
        s.text << "verdict: Z[theta] is NOT " << p << "-maximal\n";
        for (std::size_t i : rep.offending) {
            witness_triple w;
            w.p = p;
            w.phi = rep.factorization.factors[i].phi;
            w.dedekind_index = i;
            w.uchida_generator = rep.lifts[i];
            witnesses.push_back(witness_json(w));
            print_witness(s.text, w);
        }
        s.exit_code = 1;
    }
    s.result["witnesses"] = witnesses;
}

void run_local(session& s, const std::string& poly, std::uint64_t p, const std::string& mu) {
    s.command = "local";
    int_poly f = parse_poly_arg(s, "poly", poly);
    int_poly mu_poly = parse_poly_arg(s, "mu", mu);
    s.inputs["prime"] = p;
    local_report rep = dvr_local_test(f, p, mu_poly);
    s.result["h"] = jpoly(rep.h);
    s.result["g"] = jpoly(rep.g);
    s.result["gcd_triple"] = jmod(rep.gcd_triple);
    s.result["in_m_squared"] = rep.in_m_squared;
    s.result["dvr"] = rep.dvr;
    s.text << "local test for f = " << jpoly(f) << " at P = (" << p << ", ["
           << jpoly(rep.mu) << "](theta))\n"
           << "  f = mu*h + p*g with h = " << jpoly(rep.h) << ", g = " << jpoly(rep.g) << "\n"
           << "  gcd(mu, g, h) mod p = " << jmod(rep.gcd_triple) << "\n"
           << "  f " << (rep.in_m_squared ? "lies in" : "avoids") << " (p, mu(t))^2\n"
           << "verdict: Z[theta]_P is " << (rep.dvr ? "" : "NOT ")
           << "a discrete valuation ring\n";
    s.exit_code = rep.dvr ? 0 : 1;
}

void run_maximal(session& s, const std::string& poly,
                 const std::optional<std::vector<std::uint64_t>>& primes) {
    s.command = "maximal";
    int_poly f = parse_poly_arg(s, "poly", poly);
    maximal_order_options opt;
    opt.primes = primes;
    opt.trial_bound = s.trial_bound;
    opt.factor_seed = s.seed;
    if (primes) {
        s.inputs["primes"] = *primes;
    } else {
        s.inputs["mode"] = "auto";
        s.inputs["trial_bound"] = s.trial_bound;
    }
    maximality_report rep = maximal_order_check(f, opt);
    s.result["disc"] = jz(rep.disc);
    s.result["unresolved"] = jz(rep.unresolved);
    json checked = json::array();
    s.text << "maximality check for f = " << jpoly(f) << "\n  disc = " << jz(rep.disc) << "\n";
    for (const auto& chk : rep.checked) {
        json witnesses = json::array();
        for (const auto& w : chk.witnesses) witnesses.push_back(witness_json(w));
        checked.push_back({{"p", chk.p},
                           {"disc_valuation", chk.disc_valuation},
                           {"p_maximal", chk.p_maximal},
                           {"witnesses", witnesses}});
        s.text << "  p = " << chk.p << " (v_p(disc) = " << chk.disc_valuation << "): "
               << (chk.p_maximal ? "maximal" : "NOT maximal") << "\n";
        for (const auto& w : chk.witnesses) print_witness(s.text, w);
    }
    s.result["checked"] = checked;
    s.result["certified_maximal"] = rep.certified_maximal();

    if (!rep.all_checked_maximal()) {
        s.text << "verdict: Z[theta] is NOT the maximal order\n";
        s.exit_code = 1;
    } else if (rep.auto_mode && rep.unresolved != 1) {
        s.warnings.push_back("discriminant cofactor " + jz(rep.unresolved) +
                             " unfactored within the trial bound; maximality not certified");
        s.text << "verdict: all checked primes pass, but certification is incomplete\n";
        s.exit_code = 3;
    } else {
        s.text << (rep.auto_mode
                       ? "verdict: Z[theta] is the maximal order\n"
                       : "verdict: Z[theta] is p-maximal at every listed prime\n");
        s.exit_code = 0;
    }
}

void run_witness_convert(session& s, const std::string& poly, std::uint64_t p,
                         const std::optional<std::size_t>& ded_index,
                         const std::string& uchida_text, const std::string& lueneburg_text) {
    s.command = "witness-convert";
    int_poly f = parse_poly_arg(s, "poly", poly);
    s.inputs["prime"] = p;
    witness_input input;
    if (ded_index) {
        s.inputs["dedekind_index"] = *ded_index;
        input = dedekind_witness{p, *ded_index};
    } else if (!uchida_text.empty()) {
        int_poly gen = parse_poly_arg(s, "uchida", uchida_text);
        input = uchida_witness{p, gen};
    } else {
        int_poly phi_lift = parse_poly_arg(s, "lueneburg", lueneburg_text);
        input = lueneburg_witness{p, reduce(phi_lift, p)};
    }
    witness_triple w = convert_witness(f, input, s.seed);
    s.result["witness"] = witness_json(w);
    s.text << "valid witness for f = " << jpoly(f) << "; completed triple:\n";
    print_witness(s.text, w);
    // a completed witness certifies failure at p, which is the negative verdict
    s.exit_code = 1;
}

void run_tower_show(session& s, const std::string& nu_text, unsigned max_level) {
    s.command = "tower-show";
    s.inputs["nu"] = nu_text;
    s.inputs["max_level"] = max_level;
    tower tw(mpz_class(nu_text), s.towopt());
    for (const auto& note : tw.notes()) s.warnings.push_back(note);
    json levels = json::array();
    s.text << "tower for nu = " << nu_text << "\n";
    for (unsigned n = 1; n <= max_level; ++n) {
        json lvl;
        lvl["n"] = n;
        lvl["P"] = jpoly(tw.minpoly(n));
        lvl["C"] = jz(tw.c_term(n));
        lvl["D"] = jz(tw.d_coeff(n));
        levels.push_back(lvl);
        s.text << "  P_" << n << " = " << jpoly(tw.minpoly(n)) << "\n"
               << "    C_" << n << " = " << jz(tw.c_term(n)) << ", D_" << n << " = "
               << jz(tw.d_coeff(n)) << "\n";
    }
    s.result["levels"] = levels;
    s.exit_code = 0;
}

void run_tower_check(session& s, const std::string& nu_text, std::uint64_t p,
                     unsigned max_level) {
    s.command = "tower-check";
    s.inputs["nu"] = nu_text;
    s.inputs["prime"] = p;
    s.inputs["max_level"] = max_level;
    tower tw(mpz_class(nu_text), s.towopt());
    tower_prime_report rep = tw.certify_prime(p, max_level);
    for (const auto& note : rep.notes) s.warnings.push_back(note);

    if (rep.n_p) {
        s.result["n_p"] = *rep.n_p;
        s.result["v_p_C"] = valuation_str(rep.v_p_c);
        s.text << "n(" << p << ") = " << *rep.n_p << ", v_" << p << "(C_" << *rep.n_p
               << ") = " << valuation_str(rep.v_p_c) << "\n";
    } else {
        s.result["n_p"] = nullptr;
        s.text << "p = " << p << " divides no C_n\n";
    }
    json levels = json::array();
    for (const auto& lv : rep.levels) {
        json ideals = json::array();
        for (const auto& [phi, dvr] : lv.ideal_dvr)
            ideals.push_back({{"phi", jmod(phi)}, {"dvr", dvr}});
        levels.push_back({{"level", lv.level}, {"all_dvr", lv.all_dvr}, {"ideals", ideals}});
        s.text << "  level " << lv.level << ": "
               << (lv.all_dvr ? "every localization is a DVR" : "some localization FAILS")
               << "\n";
        for (const auto& [phi, dvr] : lv.ideal_dvr) {
            s.text << "    (" << p << ", [" << jmod(phi) << "](x_" << lv.level
                   << ")): " << (dvr ? "DVR" : "not a DVR") << "\n";
        }
    }
    s.result["levels"] = levels;
    s.result["valuation_is_one"] = rep.valuation_is_one;
    s.result["dvr_everywhere_ok"] = rep.dvr_everywhere_ok;
    s.result["pivot_failure_ok"] = rep.pivot_failure_ok;
    s.result["pivot_ideal_checked"] = rep.pivot_ideal_checked;
    s.result["pivot_ideal_ok"] = rep.pivot_ideal_ok;
    s.result["ok"] = rep.ok();
    s.text << (rep.ok() ? "all certified statements hold\n"
                        : "VIOLATION: see the per-level report\n");
    s.exit_code = rep.ok() ? 0 : 1;
}

void run_tower_lemmas(session& s, const std::string& nu_text, std::uint64_t p, unsigned depth,
                      bool exact_supports) {
    s.command = "tower-lemmas";
    s.inputs["nu"] = nu_text;
    s.inputs["prime"] = p;
    s.inputs["depth"] = depth;
    tower tw(mpz_class(nu_text), s.towopt());
    lemma_report rep = tw.lemma_suite(p, depth, exact_supports);
    for (const auto& note : rep.notes) s.warnings.push_back(note);
    s.result["n_p"] = rep.n_p;
    s.text << "lemma suite for nu = " << nu_text << ", p = " << p << " (n(p) = " << rep.n_p
           << "), depth " << depth << "\n";

    json supports = json::array();
    for (const auto& chk : rep.supports) {
        supports.push_back({{"n", chk.n},
                            {"d_support", chk.d_support},
                            {"c_union", chk.c_union},
                            {"truncated_equal", chk.truncated_equal},
                            {"complete", chk.complete},
                            {"identity_ok", chk.identity_ok},
                            {"ok", chk.ok}});
        s.text << "  support s(D_" << chk.n + 1 << ") vs union s(C_k), k <= " << chk.n << ": "
               << (chk.ok ? "equal" : "MISMATCH") << "\n";
    }
    s.result["supports"] = supports;
    auto emit_checks = [&](const char* key, const std::vector<index_check>& v,
                           const char* label) {
        json arr = json::array();
        for (const auto& c : v) {
            arr.push_back({{"index", c.index}, {"ok", c.ok}});
            s.text << "  " << label << " at " << c.index << ": " << (c.ok ? "ok" : "FAIL")
                   << "\n";
        }
        s.result[key] = arr;
    };
    emit_checks("periodicity", rep.periodicity, "C-bar periodicity");
    emit_checks("divisibility", rep.divisibility, "P-bar divisibility");
    emit_checks("separability", rep.separability, "separability");
    json cop = json::array();
    for (const auto& c : rep.coprimality) {
        cop.push_back({{"k", c.k}, {"l", c.l}, {"ok", c.ok}});
        if (!c.ok) s.text << "  coprimality FAIL at (" << c.k << ", " << c.l << ")\n";
    }
    s.result["coprimality"] = cop;
    s.result["all_ok"] = rep.all_ok();
    s.text << (rep.all_ok() ? "all lemma checks hold\n" : "LEMMA CHECK FAILED\n");
    s.exit_code = rep.all_ok() ? 0 : 1;
}

void run_tower_rigidity(session& s, const std::string& nu_text, std::uint64_t p,
                        unsigned steps) {
    s.command = "tower-rigidity";
    s.inputs["nu"] = nu_text;
    s.inputs["prime"] = p;
    s.inputs["steps"] = steps;
    tower tw(mpz_class(nu_text), s.towopt());
    for (const auto& note : tw.notes()) s.warnings.push_back(note);
    auto probe = tw.rigidity_probe(p, steps);
    json arr = json::array();
    s.text << "v_" << p << "(C_n) along multiples of n(p):\n";
    for (const auto& [level, v] : probe) {
        arr.push_back({{"level", level}, {"valuation", valuation_str(v)}});
        s.text << "  v_" << p << "(C_" << level << ") = " << valuation_str(v) << "\n";
    }
    s.result["probe"] = arr;
    s.exit_code = 0;
}

void run_tower_disc(session& s, const std::string& nu_text, unsigned level,
                    std::optional<std::uint64_t> prime) {
    s.command = "tower-disc";
    s.inputs["nu"] = nu_text;
    s.inputs["level"] = level;
    tower tw(mpz_class(nu_text), s.towopt());
    for (const auto& note : tw.notes()) s.warnings.push_back(note);
    factored_disc fd = tw.disc_factored(level);
    s.result["exp2"] = fd.exp2;
    s.result["nu_exponent"] = fd.nu_exponent;
    json cexp = json::array();
    for (unsigned k = 1; k <= level; ++k)
        cexp.push_back({{"k", k}, {"exponent", fd.c_exponents[k - 1]}});
    s.result["c_exponents"] = cexp;
    s.result["sign"] = fd.sign;
    s.text << "disc(x_" << level << ") = " << (fd.sign < 0 ? "-" : "") << "2^" << fd.exp2;
    for (unsigned k = 1; k <= level; ++k)
        s.text << " * |C_" << k << "|^" << fd.c_exponents[k - 1];
    s.text << "\n";
    if (level <= 8) {
        mpz_class value = tw.disc_value(level);
        s.result["value"] = jz(value);
        s.text << "  = " << jz(value) << "\n";
    }
    if (prime) {
        s.inputs["prime"] = *prime;
        valuation v = tw.disc_valuation(level, *prime);
        s.result["valuation"] = valuation_str(v);
        s.text << "  v_" << *prime << " = " << valuation_str(v) << "\n";
    }
    s.exit_code = 0;
}

void run_oracle(session& s, const std::string& poly, std::uint64_t p) {
    s.command = "oracle";
    int_poly f = parse_poly_arg(s, "poly", poly);
    s.inputs["prime"] = p;
    s.inputs["enum_cap"] = s.enum_cap;
    oracle_result res = index_divisible_by_p(f, p, s.enum_cap);
    s.result["divides_index"] = res.divides;
    s.result["classes_scanned"] = res.classes_scanned;
    s.text << "brute-force index oracle for f = " << jpoly(f) << ", p = " << p << "\n"
           << "  scanned " << res.classes_scanned << " scalar classes\n";
    if (res.divides) {
        s.result["certificate"] = res.certificate;
        json cp = json::array();
        for (const auto& c : res.witness_charpoly) cp.push_back(jz(c));
        s.result["witness_charpoly"] = cp;
        s.text << "verdict: " << p << " DIVIDES the index [O_K : Z[theta]]\n  certificate a = (";
        for (std::size_t i = 0; i < res.certificate.size(); ++i) {
            if (i) s.text << ", ";
            s.text << res.certificate[i];
        }
        s.text << "): alpha = (sum a_i theta^i)/" << p << " is an algebraic integer\n";
        s.exit_code = 1;
    } else {
        s.text << "verdict: " << p << " does not divide the index\n";
        s.exit_code = 0;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    session s;

    CLI::App app{"certify p-maximality of Z[theta] three equivalent ways, translate witnesses, "
                 "and analyze towers of nested square roots"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow a subcommand
    app.add_flag("--json", s.json_mode, "emit a machine-readable JSON envelope");
    app.add_option("--seed", s.seed, "PRNG seed for equal-degree splitting");
    app.add_option("--depth-cap", s.depth_cap, "max tower level for full polynomials");
    app.add_option("--val-cap", s.val_cap, "valuations computed mod p^cap");
    app.add_option("--enum-cap", s.enum_cap, "oracle enumeration cap on p^deg");
    app.add_option("--trial-bound", s.trial_bound, "trial-division bound for factoring");

    std::string poly, mu, nu_text, uchida_text, lueneburg_text, primes_text;
    std::uint64_t p = 0;
    unsigned max_level = 3, depth = 6, steps = 3, level = 1;
    bool exact_supports = false;
    std::optional<std::size_t> ded_index;
    std::size_t ded_index_raw = 0;

    auto* c_factor = app.add_subcommand("factor-modp", "factor a polynomial over F_p");
    c_factor->add_option("--poly", poly)->required();
    c_factor->add_option("--prime", p)->required();

    auto* c_ded = app.add_subcommand("dedekind", "Dedekind p-maximality criterion");
    c_ded->add_option("--poly", poly)->required();
    c_ded->add_option("--prime", p)->required();

    auto* c_local = app.add_subcommand("local", "local DVR test at the ideal (p, mu(theta))");
    c_local->add_option("--poly", poly)->required();
    c_local->add_option("--prime", p)->required();
    c_local->add_option("--mu", mu)->required();

    auto* c_max = app.add_subcommand("maximal", "check maximality at all candidate primes");
    c_max->add_option("--poly", poly)->required();
    c_max->add_option("--primes", primes_text, "comma-separated primes (default: auto)");

    auto* c_wit = app.add_subcommand("witness", "witness utilities");
    auto* c_conv = c_wit->add_subcommand("convert", "complete a witness to the full triple");
    c_conv->add_option("--poly", poly)->required();
    c_conv->add_option("--prime", p)->required();
    auto* opt_ded = c_conv->add_option("--dedekind-index", ded_index_raw,
                                       "offending factor index");
    auto* opt_uch = c_conv->add_option("--uchida", uchida_text, "monic generator F of (p, F(t))");
    auto* opt_lue = c_conv->add_option("--lueneburg", lueneburg_text,
                                       "polynomial reducing to the factor phi");
    opt_ded->excludes(opt_uch)->excludes(opt_lue);
    opt_uch->excludes(opt_lue);

    auto* c_tower = app.add_subcommand("tower", "nested square-root towers");
    auto* c_show = c_tower->add_subcommand("show", "print P_n, C_n, D_n");
    c_show->add_option("--nu", nu_text)->required();
    c_show->add_option("--max-level", max_level);
    auto* c_check = c_tower->add_subcommand("check", "per-prime certification across levels");
    c_check->add_option("--nu", nu_text)->required();
    c_check->add_option("--prime", p)->required();
    c_check->add_option("--max-level", max_level);
    auto* c_lem = c_tower->add_subcommand("lemmas", "dynamical lemmas mod p up to a depth");
    c_lem->add_option("--nu", nu_text)->required();
    c_lem->add_option("--prime", p)->required();
    c_lem->add_option("--depth", depth);
    c_lem->add_flag("--exact-supports", exact_supports,
                    "require fully factored supports (may raise unfactored-support)");
    auto* c_rig = c_tower->add_subcommand("rigidity", "valuations along multiples of n(p)");
    c_rig->add_option("--nu", nu_text)->required();
    c_rig->add_option("--prime", p)->required();
    c_rig->add_option("--steps", steps);
    auto* c_disc = c_tower->add_subcommand("disc", "factored discriminant of x_n");
    c_disc->add_option("--nu", nu_text)->required();
    c_disc->add_option("--level", level)->required();
    auto* opt_disc_prime = c_disc->add_option("--prime", p, "also report v_p");

    auto* c_oracle = app.add_subcommand("oracle", "brute-force index divisibility oracle");
    c_oracle->add_option("--poly", poly)->required();
    c_oracle->add_option("--prime", p)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_factor) run_factor_modp(s, poly, p);
        else if (*c_ded) run_dedekind(s, poly, p);
        else if (*c_local) run_local(s, poly, p, mu);
        else if (*c_max) {
            std::optional<std::vector<std::uint64_t>> primes;
            if (!primes_text.empty()) {
                std::vector<std::uint64_t> ps;
                std::stringstream ss(primes_text);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    try {
                        ps.push_back(std::stoull(item));
                    } catch (const std::exception&) {
                        throw error(errc::invalid_input, "bad prime list entry '" + item + "'");
                    }
                }
                primes = std::move(ps);
            }
            run_maximal(s, poly, primes);
        } else if (*c_conv) {
            if (opt_ded->count()) ded_index = ded_index_raw;
            if (!ded_index && uchida_text.empty() && lueneburg_text.empty())
                throw error(errc::invalid_input,
                            "one of --dedekind-index, --uchida, --lueneburg is required");
            run_witness_convert(s, poly, p, ded_index, uchida_text, lueneburg_text);
        } else if (*c_show) run_tower_show(s, nu_text, max_level);
        else if (*c_check) run_tower_check(s, nu_text, p, max_level);
        else if (*c_lem) run_tower_lemmas(s, nu_text, p, depth, exact_supports);
        else if (*c_rig) run_tower_rigidity(s, nu_text, p, steps);
        else if (*c_disc) {
            std::optional<std::uint64_t> dp;
            if (opt_disc_prime->count()) dp = p;
            run_tower_disc(s, nu_text, level, dp);
        } else if (*c_oracle) run_oracle(s, poly, p);
        else {
            err << "usage error: no subcommand given\n";
            return 2;
        }
    } catch (const error& e) {
        s.emit_error(err, e);
        return e.is_cap() ? 3 : 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    s.emit(out);
    return s.exit_code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace monocert::cli
