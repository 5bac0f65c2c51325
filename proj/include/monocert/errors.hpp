#ifndef MONOCERT_ERRORS_HPP
#define MONOCERT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace monocert {

// Stable error codes; the CLI maps these onto its exit-status table
// (input/usage errors vs. resource-cap errors).
enum class errc {
    non_monic_divisor,
    inexact_division,
    zero_polynomial,
    not_prime,
    modulus_mismatch,
    mu_not_irreducible,
    mu_does_not_divide,
    not_squarefree_over_z,
    not_a_witness,
    invalid_nu,
    depth_cap_exceeded,
    cap_exceeded,
    not_monic,
    unfactored_support,
    parse_error,
    invalid_input,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const noexcept { return code_; }

    // True for errors caused by a configured resource cap rather than bad input.
    bool is_cap() const noexcept {
        return code_ == errc::depth_cap_exceeded || code_ == errc::cap_exceeded ||
               code_ == errc::unfactored_support;
    }

  private:
    errc code_;
};

class inexact_division_error : public error {
  public:
    inexact_division_error(std::size_t index, const std::string& msg)
        : error(errc::inexact_division, msg), index_(index) {}
    std::size_t coefficient_index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

class parse_error : public error {
  public:
    parse_error(std::size_t column, std::string expected, const std::string& msg)
        : error(errc::parse_error, msg), column_(column), expected_(std::move(expected)) {}
    std::size_t column() const noexcept { return column_; }  // 1-based
    const std::string& expected() const noexcept { return expected_; }

  private:
    std::size_t column_;
    std::string expected_;
};

// Raised when an alleged witness turns out to certify nothing; carries the
// verdict that actually holds at the claimed spot.
class not_a_witness_error : public error {
  public:
    not_a_witness_error(std::string verdict, const std::string& msg)
        : error(errc::not_a_witness, msg), verdict_(std::move(verdict)) {}
    const std::string& verdict() const noexcept { return verdict_; }

  private:
    std::string verdict_;
};

}  // namespace monocert

#endif
