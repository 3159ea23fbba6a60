#pragma once

#include <cstddef>
#include <vector>

#include "canonical.hpp"

namespace canonsym {

/// A finite monomial ansatz for candidate integrals: all monomials in
/// (x, p) of total degree <= degree, optionally multiplied by powers of t up
/// to the same bound. The enumeration order is deterministic (graded, then
/// lexicographic by exponents).
struct AnsatzSpace {
  int degree = 0;
  bool include_t = false;
  std::vector<ExprPtr> basis;
};

AnsatzSpace enumerate_basis(const PhaseSpace& space, int degree, bool include_t,
                            std::size_t max_basis = 5000);

struct IntegralBasis {
  std::vector<IntegralCandidate> generators; // integer-scaled RREF representatives
  int dimension = 0;
};

/// Exact rational nullspace of the linear map c -> residual coefficients of
/// W = sum c_a m_a under the first-integral condition. Every generator is
/// re-verified to give a ProvedZero verdict.
IntegralBasis discover_integrals(const HamiltonianSystem& sys, const AnsatzSpace& ansatz,
                                 const ProbeConfig& cfg = {});

} // namespace canonsym
