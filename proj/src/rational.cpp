#include "coopls/rational.hpp"

#include <cctype>

#include "coopls/errors.hpp"

namespace coopls {

namespace {

bool is_plain_integer(const std::string& text) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

std::string strip_spaces(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  const std::string s = strip_spaces(text);
  const std::size_t slash = s.find('/');
  std::string num_part = s.substr(0, slash);
  std::string den_part = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!is_plain_integer(num_part) || !is_plain_integer(den_part)) {
    fail(Errc::BadInput, "not a rational literal: '" + text + "'");
  }
  mpz_class num(num_part, 10);
  mpz_class den(den_part, 10);
  if (den == 0) {
    fail(Errc::BadInput, "zero denominator in rational literal: '" + text + "'");
  }
  Rat value(num, den);
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rat& value) { return value.get_str(); }

}  // namespace coopls
