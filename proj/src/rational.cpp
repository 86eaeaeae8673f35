#include "condwalk/rational.hpp"

#include <charconv>

namespace condwalk {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("Rational: cannot parse integer '" +
                                std::string(text) + "'");
  return value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)),
                  parse_int(text.substr(slash + 1)));
}

}  // namespace condwalk
