#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dynlab {

// All scalar quantities (distances, epsilon, delta, eta) are exact rationals.
// Verdicts flip at exact thresholds under the strict inequalities used
// throughout, so no floating point appears anywhere in the library.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q" or plain integer form. Returns nullopt on malformed input,
/// including zero or negative denominators.
std::optional<Rat> parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers render without the "/q" part.
std::string rat_to_string(const Rat& value);

}  // namespace dynlab
