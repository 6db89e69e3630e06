// Prints the closed-form fourth moments as delta tensors and checks one of
// them against a Monte Carlo estimate.
#include <iostream>

#include "algperm/algperm.hpp"

int main() {
  using namespace algperm;
  const int d = 2;
  std::cout << "E[s (x) s*], gaussian:\n" << cupcap_closed_form(d).to_string() << '\n';
  std::cout << "fourth moment, gaussian:\n" << gaussian_fourth_moment_closed_form(d).to_string() << '\n';
  std::cout << "fourth moment, haar:\n" << haar_fourth_moment_closed_form(d).to_string() << '\n';

  RngStream stream(11);
  const TensorEstimate est = tensor_moment(Measure::kHaar, d, 2, 2, 50000, stream);
  std::cout << "haar Monte Carlo, worst deviation: "
            << max_standard_errors(est, haar_fourth_moment_closed_form(d).to_dense(d)) << " standard errors\n";
}
