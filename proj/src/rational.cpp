#include "wkit/rational.hpp"

#include <cctype>

#include "wkit/error.hpp"

namespace wkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw LoadError("malformed rational '" + std::string(text) + "'");

  std::string canonical(text);
  if (!canonical.empty() && canonical.front() == '+') canonical.erase(0, 1);
  Rational value;
  if (value.set_str(canonical, 10) != 0) throw LoadError("malformed rational '" + std::string(text) + "'");
  if (value.get_den() == 0) throw LoadError("zero denominator in '" + std::string(text) + "'");
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  if (is_integer(value)) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace wkit
