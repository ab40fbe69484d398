#include "tcspan/rational.hpp"

namespace tcspan {

std::string to_decimal(const Rational& q, unsigned digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class num = q.get_num();
  const bool negative = num < 0;
  if (negative) num = -num;
  mpz_class scaled = num * scale / q.get_den();
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  if (digits == 0) s.pop_back();
  return negative ? "-" + s : s;
}

long double to_long_double(const Rational& q) {
  mpf_class f(q, 128);
  // mpf -> long double keeps only double precision through GMP's API, so
  // split into a double head and a double tail.
  const double head = f.get_d();
  mpf_class rest = f - mpf_class(head, 128);
  return static_cast<long double>(head) + static_cast<long double>(rest.get_d());
}

}  // namespace tcspan
