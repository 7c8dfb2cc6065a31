#include "designlab/otoc.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/parallel.hpp"

namespace designlab {

namespace {

std::vector<DenseOperator> pauli_strings(int n) {
  DenseOperator p[4];
  for (auto& m : p) m = DenseOperator::Zero(2, 2);
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, cplx(0, -1), cplx(0, 1), 0;
  p[3] << 1, 0, 0, -1;
  std::vector<DenseOperator> out{DenseOperator::Identity(1, 1)};
  for (int q = 0; q < n; ++q) {
    std::vector<DenseOperator> next;
    for (const auto& a : out)
      for (const auto& b : p) next.push_back(kron(a, b));
    out = std::move(next);
  }
  return out;
}

}  // namespace

double otoc_direct(const SetDescriptor& u, int t) {
  if (u.kind != SetKind::Unitary) throw DomainError("otoc: ensemble must be a unitary set");
  u.validate();
  if (t < 1) throw DomainError("otoc: t must be at least 1");
  const int n = u.n_qubits;
  require_size((n <= 2 && t <= 2) || (n <= 1 && t <= 3), "otoc direct sum n <= 2, t <= 2 or n <= 1, t <= 3",
               "n = " + std::to_string(n) + ", t = " + std::to_string(t));
  require_size(u.cardinality <= kMaxGramCardinality, "otoc ensemble K <= 2^14",
               "K = " + std::to_string(u.cardinality));

  const auto paulis = pauli_strings(n);
  const std::size_t np = paulis.size();
  const std::size_t k = u.cardinality;
  const double d = std::ldexp(1.0, n);

  // conj[j][p] = U_j P U_j^dag
  std::vector<std::vector<DenseOperator>> conj(k);
  parallel_for(k, [&](std::size_t j) {
    const DenseOperator uj = circuit_unitary(u.resolve(j + 1));
    conj[j].reserve(np);
    for (const auto& p : paulis) conj[j].push_back(uj * p * uj.adjoint());
  });

  // Tuple index: O_1 is the most significant base-4^n digit.
  const std::size_t len = 2 * static_cast<std::size_t>(t);
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < len; ++i) tuples *= np;
  const std::size_t outer = np * np;
  const std::size_t inner = tuples / outer;
  std::vector<double> partial(outer, 0.0);
  parallel_for(outer, [&](std::size_t head) {
    std::vector<std::size_t> ops(len);
    std::vector<double> terms(inner);
    for (std::size_t tail = 0; tail < inner; ++tail) {
      std::size_t code = head * inner + tail;
      for (std::size_t i = len; i-- > 0;) {
        ops[i] = code % np;
        code /= np;
      }
      cplx mean = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        DenseOperator prod = DenseOperator::Identity(paulis[0].rows(), paulis[0].cols());
        for (std::size_t i = len; i > 0; i -= 2) prod = prod * paulis[ops[i - 1]] * conj[j][ops[i - 2]];
        mean += prod.trace() / d;
      }
      mean /= static_cast<double>(k);
      terms[tail] = std::norm(mean);
    }
    partial[head] = tree_sum(terms);
  });
  return std::ldexp(tree_sum(partial), -4 * n * t);
}

double otoc_via_fp(const SetDescriptor& u, int t) {
  if (u.kind != SetKind::Unitary) throw DomainError("otoc: ensemble must be a unitary set");
  return std::ldexp(unitary_frame_potential(u, t), -2 * (t + 1) * u.n_qubits);
}

OtocReport otoc_report(const SetDescriptor& u, int t, double tol) {
  OtocReport r;
  r.t = t;
  r.n = u.n_qubits;
  r.direct_value = otoc_direct(u, t);
  r.via_fp_value = otoc_via_fp(u, t);
  if (std::abs(r.direct_value - r.via_fp_value) > tol)
    throw VerificationError("otoc: direct sum " + std::to_string(r.direct_value) + " differs from F_t identity " +
                            std::to_string(r.via_fp_value));
  return r;
}

}  // namespace designlab
