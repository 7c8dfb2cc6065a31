#pragma once

#include <string>

#include "designlab/set_descriptor.hpp"

namespace designlab {

struct OtocReport {
  int t = 1;
  int n = 0;
  double direct_value = 0.0;
  double via_fp_value = 0.0;
  std::string basis = "pauli";  // unnormalized Pauli strings
};

// 2^{-4nt} sum over 2t-tuples of Pauli strings of
// |E_U Tr[O_{2t} U O_{2t-1} U^dag ... O_2 U O_1 U^dag rho]|^2 with rho = I/2^n.
// Feasible for n <= 2, t <= 2 or n <= 1, t <= 3.
double otoc_direct(const SetDescriptor& u, int t);

// F_t / 2^{2(t+1)n}
double otoc_via_fp(const SetDescriptor& u, int t);

// Both values; throws VerificationError if they differ by more than tol.
OtocReport otoc_report(const SetDescriptor& u, int t, double tol = 1e-9);

}  // namespace designlab
