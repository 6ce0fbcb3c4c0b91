#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lsh {

using Q = mpq_class;
using Z = mpz_class;

// Parses "p", "-p", "p/q" with q > 0; canonicalizes. Throws InputError otherwise.
Q parse_rational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Q& q);

inline int sign_of_parity(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace lsh
