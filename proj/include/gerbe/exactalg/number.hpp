#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gerbe {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p", "-p" or "p/q" into a canonical rational; throws std::invalid_argument.
Rat parse_rational(std::string_view text);
Int parse_integer(std::string_view text);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);

Int floor_of(const Rat& x);
// Representative of x modulo 1 in [0, 1).
Rat frac_of(const Rat& x);
// Representative of x modulo m in [0, m).
Int mod_of(const Int& x, const Int& m);

// num/den in lowest terms (mpq_class's two-argument constructor does not canonicalize).
Rat make_rat(const Int& num, const Int& den);

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

Int lcm_of(const Int& a, const Int& b);

}  // namespace gerbe
