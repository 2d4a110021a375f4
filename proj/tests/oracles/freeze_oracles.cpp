// Prints the reference values that are frozen into the unit tests.
// Build with `cmake --build build --target freeze_oracles`.

#include <cstdio>
#include <iostream>
#include <iomanip>

#include "oracle.hpp"

using namespace oracle;

static void show(const char* what, const BigFloat& v) {
  std::cout << std::left << std::setw(44) << what << std::setprecision(25) << v << "\n";
}

int main() {
  // normalize [1,2,3] as exact rationals
  for (int c : {1, 2, 3}) {
    Rational r(c, 6);
    std::cout << "normalize[1,2,3] entry " << r << " = " << std::setprecision(17)
              << static_cast<double>(r) << "\n";
  }

  show("entropy [0.75,0.25]", entropy_bits({0.75, 0.25}));
  show("entropy uniform6", entropy_bits(std::vector<double>(6, 1.0 / 6)));
  show("kl [.5,.5]||[.25,.75]", kl_bits({0.5, 0.5}, {0.25, 0.75}));
  show("kl [.25,.75]||[.5,.5]", kl_bits({0.25, 0.75}, {0.5, 0.5}));
  show("cross [.5,.5],[.25,.75]",
       entropy_bits({0.5, 0.5}) + kl_bits({0.5, 0.5}, {0.25, 0.75}));
  show("mi [[.1,.2],[.3,.4]]", mutual_information_bits({0.1, 0.2, 0.3, 0.4}, 2, 2));

  show("log2 10!", log2_big(factorial(10)));
  BigFloat ln100 = boost::multiprecision::log(BigFloat(factorial(100)));
  BigFloat st100 = 100 * boost::multiprecision::log(BigFloat(100)) - 100;
  show("ln 100!", ln100);
  show("stirling ln 100!", st100);
  show("rel err 100", (ln100 - st100) / ln100);

  show("log2 coef [2,2]", log2_big(multinomial({2, 2})));
  show("log2 coef [1,1,1]", log2_big(multinomial({1, 1, 1})));
  show("log2 L [2,1] q=[.5,.5]", log2_rational(Rational(3, 8)));
  show("avg neg [2,1]", -log2_rational(Rational(3, 8)) / 3);

  BigFloat c1000 = log2_big(multinomial({500, 500}));
  show("avg neg [500,500] exact", (1000 - c1000) / 1000);

  show("residual [2,2]", (4 - log2_big(multinomial({2, 2}))) / 4);
  show("per-symbol coef [2,2]", log2_big(multinomial({2, 2})) / 4);
}
