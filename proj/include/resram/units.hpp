#pragma once

#include <string>
#include <string_view>

namespace resram {

enum class Unit { none, ohm, henry, farad, volt, second, hertz };

std::string_view symbol(Unit unit);

/// Parses "0.621nH", "10.10 pF", "1e-9", "200MHz", "900mV". A bare number is taken in
/// SI base units. Throws std::invalid_argument on malformed text or a unit other than
/// `expected`.
double parse_quantity(std::string_view text, Unit expected);

/// Shortest decimal that parses back to exactly `value`.
std::string format_exact(double value);

/// Fixed 6-significant-digit rendering used by every data artifact.
std::string format_sig6(double value);

}  // namespace resram
