// Build a few stable polynomials, certify them, and look at their zeros.

#include <iostream>

#include "hurwitz/asymptotics.hpp"
#include "hurwitz/constructors.hpp"
#include "hurwitz/optsearch.hpp"
#include "hurwitz/stability.hpp"

int main() {
  using namespace hurwitz;

  const auto b7 = parse_int_polynomial("[1 2 5 7 7 6 2 1]");
  const auto report = spectral_abscissa(b7);
  std::cout << format(b7) << ": " << to_string(is_hurwitz_exact(b7).verdict) << ", abscissa "
            << *report.abscissa << '\n';

  // doubling keeps stability and squares up the degree
  const auto c20 = double_transform(double_transform(int_poly({1, 1, 4, 3, 2, 1})));
  std::cout << "c_20 = " << format(c20) << '\n';
  std::cout << "  stable: " << std::boolalpha << is_stable(c20) << ", sigma " << coeff_stats(c20).sigma << '\n';

  const auto prof = symbol_profile(c20);
  std::cout << "  tau = " << prof.tau << '\n';

  const auto res = search_c_optimal(4, 5);
  std::cout << "p_max(4) = " << *res.optimum << " with " << res.witnesses.size() << " witnesses\n";
  for (const auto& w : res.witnesses) std::cout << "  " << format(w.poly) << '\n';
  return 0;
}
