#include "sqcert/rational.hpp"

#include <cctype>

namespace sqcert {

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool valid_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  if (!valid_integer_text(num)) return std::nullopt;
  BigInt n(num, 10);
  BigInt d(1);
  if (slash != std::string::npos) {
    const std::string den = text.substr(slash + 1);
    if (!valid_integer_text(den) || den[0] == '-') return std::nullopt;
    d = BigInt(den, 10);
    if (d == 0) return std::nullopt;
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t max_bit_length(const Rational& q) {
  return std::max(bit_length(q.get_num()), bit_length(q.get_den()));
}

}  // namespace sqcert
