#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lambdak {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (excluded point, parity, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (file schema, argument syntax).
class InputError : public Error {
 public:
  using Error::Error;
};

Integer binomial(long n, long k);
Integer factorial(long n);
Integer ipow(const Integer& base, unsigned long exp);
Rational rpow(const Rational& base, long exp);

/// Parses "p", "p/q" or "-p/q" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace lambdak
