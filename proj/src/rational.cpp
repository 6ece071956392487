#include "dncode/rational.hpp"

#include <algorithm>

namespace dncode {

std::string Rational::to_string() const {
  std::int64_t den = den_;
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  const int places = std::max(twos, fives);
  // Scale to an integer number of 10^-places units.
  __int128 scaled = num_;
  for (int i = 0; i < places; ++i) scaled *= 10;
  scaled /= den_;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  } while (scaled != 0);
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

}  // namespace dncode
