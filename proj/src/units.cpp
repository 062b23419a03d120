#include "resram/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace resram {

std::string_view symbol(Unit unit) {
  switch (unit) {
    case Unit::none: return "";
    case Unit::ohm: return "ohm";
    case Unit::henry: return "H";
    case Unit::farad: return "F";
    case Unit::volt: return "V";
    case Unit::second: return "s";
    case Unit::hertz: return "Hz";
  }
  return "";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

constexpr std::array<std::pair<std::string_view, Unit>, 8> kUnitSymbols{{
    {"ohm", Unit::ohm},
    {"Ohm", Unit::ohm},
    {"\xCE\xA9", Unit::ohm},  // U+03A9
    {"Hz", Unit::hertz},
    {"H", Unit::henry},
    {"F", Unit::farad},
    {"V", Unit::volt},
    {"s", Unit::second},
}};

constexpr std::array<std::pair<std::string_view, int>, 11> kPrefixes{{
    {"f", -15},
    {"p", -12},
    {"n", -9},
    {"u", -6},
    {"\xC2\xB5", -6},  // micro sign
    {"m", -3},
    {"k", 3},
    {"K", 3},
    {"M", 6},
    {"G", 9},
    {"T", 12},
}};

}  // namespace

double parse_quantity(std::string_view text, Unit expected) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty value");
  const char* first = s.data();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == first) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  if (!std::isfinite(value)) throw std::invalid_argument("value must be finite");

  std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
  if (suffix.empty()) return value;

  Unit found = Unit::none;
  for (const auto& [sym, unit] : kUnitSymbols) {
    if (suffix.size() >= sym.size() && suffix.substr(suffix.size() - sym.size()) == sym) {
      found = unit;
      suffix.remove_suffix(sym.size());
      break;
    }
  }
  if (found != Unit::none && found != expected) {
    throw std::invalid_argument("unit mismatch: expected " +
                                (expected == Unit::none ? std::string("a plain number") : std::string(symbol(expected))) +
                                ", got " + std::string(symbol(found)));
  }
  if (found == Unit::none && expected == Unit::none)
    throw std::invalid_argument("unexpected suffix '" + std::string(suffix) + "' on a dimensionless value");

  if (suffix.empty()) return value;
  for (const auto& [pre, exponent] : kPrefixes) {
    if (suffix != pre) continue;
    // Re-parse "<mantissa>e<exponent>" so "0.621n" is the double nearest 0.621e-9.
    const std::string mantissa(first, ptr);
    if (mantissa.find_first_of("eE") == std::string::npos) {
      const std::string scaled = mantissa + "e" + std::to_string(exponent);
      double exact = 0.0;
      std::from_chars(scaled.data(), scaled.data() + scaled.size(), exact);
      return exact;
    }
    return value * std::pow(10.0, exponent);
  }
  throw std::invalid_argument("unknown unit suffix '" + std::string(suffix) + "'");
}

std::string format_exact(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_exact failed");
  return std::string(buf.data(), ptr);
}

std::string format_sig6(double value) {
  if (value == 0.0) return "0";  // avoids "-0"
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", value);
  return buf.data();
}

}  // namespace resram
