#ifndef MONOCERT_TESTS_CYCLOTOMIC_HPP
#define MONOCERT_TESTS_CYCLOTOMIC_HPP

#include "monocert/intpoly.hpp"

namespace monocert::testsupport {

// The n-th cyclotomic polynomial, by exact division of t^n - 1.
int_poly cyclotomic(unsigned n);

// Minimal polynomial of 2*cos(2*pi/n), i.e. of a primitive zeta + 1/zeta.
int_poly real_cyclotomic_minpoly(unsigned n);

}  // namespace monocert::testsupport

#endif
