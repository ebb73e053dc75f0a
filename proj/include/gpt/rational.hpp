#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpt {

using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Raised when a state, effect, measurement or input file fails validation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an enumeration would exceed its configured size limit.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

class TheoryMismatch : public ValidationError {
 public:
  explicit TheoryMismatch(const std::string& what) : ValidationError(what) {}
};

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// log2 of a positive big integer, accurate to ~1e-15 relative even when the
/// value is far outside double range.
double log2_big(const BigInt& z);

/// log2 of a positive rational.
double log2_rat(const Rat& r);

/// "num/den", or just "num" when the denominator is 1.
std::string rat_string(const Rat& r);

/// Parses "a/b", an integer, or a finite decimal ("0.25") into an exact rational.
Rat parse_rat(const std::string& text);

}  // namespace gpt
