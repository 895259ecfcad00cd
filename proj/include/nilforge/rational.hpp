#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nilforge {

// Exact rational scalar. GMP keeps every mpq_class result in lowest terms
// with a positive denominator; values built from raw parts go through
// make_rational, which canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

/// Dense coordinate vector over the rationals.
using Vec = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& v);
Rational dot(const Vec& a, const Vec& b);

}  // namespace nilforge
