// Walks through F_9 = F_3[x]/(x^2+1): its squares, and the square count of W_D
// for every nonempty D subset of {0,1,2}.

#include <cstdio>
#include <iostream>

#include "sqfield/sqfield.hpp"

int main() {
  using namespace sqfield;
  const Field f = make_field(3, 2);
  const QuadraticCharacter chi(f);
  std::cout << "F_9 with modulus " << f.modulus_string() << "\nsquares:";
  for (std::uint64_t k = 1; k < f.q(); ++k)
    if (chi.at_rank(k) == 1) std::cout << ' ' << f.to_string(f.from_rank(k));
  std::cout << "\n\nD        |W|  |W∩Q|  sum  deviation\n";
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<std::uint32_t> digits;
    for (std::uint32_t d = 0; d < 3; ++d)
      if (mask >> d & 1) digits.push_back(d);
    const DigitBox box = DigitBox::uniform(2, DigitSet(3, digits));
    const SquareCountReport rep = count_squares(chi, box);
    std::printf("%-8s %3llu  %5llu  %3lld  %s\n", box.to_string().c_str(), static_cast<unsigned long long>(rep.size_W),
                static_cast<unsigned long long>(rep.count_Q), static_cast<long long>(rep.char_sum),
                to_string(rep.deviation).c_str());
  }
}
