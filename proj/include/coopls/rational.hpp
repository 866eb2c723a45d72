#pragma once

#include <gmpxx.h>

#include <string>

namespace coopls {

/// Exact rational scalar. Every cost, game value and allocation in this
/// library is a Rat; floating point never enters a characteristic-function
/// or allocation computation (it only appears in simulation summaries).
using Rat = mpq_class;

/// Parses "a" or "a/b" with optional sign, base 10. Throws Error(BadInput)
/// on anything else, including a zero denominator. The result is always in
/// lowest terms with a positive denominator.
Rat rat_from_string(const std::string& text);

/// Lowest-terms rendering: "a" when the denominator is 1, else "a/b".
std::string rat_to_string(const Rat& value);

/// Convenience constructor that canonicalizes immediately.
inline Rat rat(long numerator, long denominator = 1) {
  Rat value(numerator, denominator);
  value.canonicalize();
  return value;
}

}  // namespace coopls
