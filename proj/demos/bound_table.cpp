// Compares the exact deviation | |W∩Q| - |W|/2 | with the explicit bounds for
// D = {0..t-1} in F_{p^2}.  Usage: demo_bound_table [p]  (default 29)

#include <cstdlib>
#include <cstdio>
#include <iostream>

#include "sqfield/sqfield.hpp"

int main(int argc, char** argv) {
  using namespace sqfield;
  const std::uint32_t p = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 29;
  const std::uint32_t r = 2;
  const QuadraticCharacter chi(make_field(p, r));
  std::printf("%4s %10s %12s %12s %12s\n", "t", "deviation", "thm1", "thm2 best", "thmA");
  for (std::uint32_t t = 2; t < p; ++t) {
    const SquareCountReport rep = count_squares(chi, DigitBox::uniform(r, DigitSet::range(p, 0, t)));
    const std::string thm1 = thm1_hypothesis(p, r) ? thm1_rhs(p, r, t).upper_string(6) : "-";
    const Thm2Choice best = thm2_best(p, r, t);
    std::printf("%4u %10s %12s %12s %12s\n", t, to_string(rep.deviation).c_str(), thm1.c_str(),
                best.rhs.upper_string(6).c_str(), thmA_rhs(p, r, t).upper_string(6).c_str());
  }
}
