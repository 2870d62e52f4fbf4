#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace toriclift {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

IntVector make_vector(std::initializer_list<long> values);
IntVector zero_vector(std::size_t n);
IntVector unit_vector(std::size_t n, std::size_t i);

Integer dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& k, const IntVector& v);

/// gcd of the entries; zero for the zero vector.
Integer content(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_nonnegative(const IntVector& v);
bool is_primitive(const IntVector& v);
IntVector primitive_part(const IntVector& v);

/// Floor division and the matching nonnegative remainder (divisor > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

/// Clears denominators of a rational vector and divides by the content.
IntVector integral_direction(const std::vector<Rational>& v);

/// "(1,0,-2)"
std::string to_string(const IntVector& v);

}  // namespace toriclift
