#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fields.hpp"

namespace canonsym {

/// Builds the contact field of a characteristic function:
/// xi_i = dW/dp_i, pi_i = -dW/dx_i. Applying the result to any e equals the
/// bracket {e, W}.
ContactField field_from_integral(const IntegralCandidate& w, const PhaseSpace& space);

struct AddendResult {
  IntegralCandidate candidate; // W minus an antiderivative of the residual
  ExprPtr residual;            // the t-only residual that was removed
  ExprPtr addend;              // G(t) with W_new = W - G
};

/// Fixes the additive function of t so the first-integral residual vanishes
/// exactly. Requires the residual to pass the gate of being x,p-free.
AddendResult normalize_addend(const IntegralCandidate& w, const HamiltonianSystem& sys);

struct ReconstructionResult {
  IntegralCandidate candidate;
  bool homogeneous_path = false; // W = sum p_i xi_i (point-transformation case)
  bool addend_normalized = false;
  ExprPtr removed_addend; // set when addend normalization succeeded
};

/// Recovers a characteristic function from raw increments: verifies the
/// mixed-partial exactness conditions, reconstructs W (homogeneous fast path
/// or a line integral from the base point), then attempts addend
/// normalization against the system. The base point lists the 2n values
/// (x..., p...); it defaults to the origin.
ReconstructionResult integral_from_field(const ContactField& f, const HamiltonianSystem& sys,
                                         const std::optional<std::vector<double>>& base_point = std::nullopt,
                                         const ProbeConfig& cfg = {});

struct LevyCerrutiReport {
  bool is_linear_homogeneous = false;
  std::vector<ExprPtr> point_field;      // xi_i = dW/dp_i when linear-homogeneous
  ZeroVerdict t_admits;                  // degree-2 condition {W, T} = 0
  ZeroVerdict u_admits;                  // degree-0 condition (xi-derivative of U)
  std::map<int, ExprPtr> degree_residuals; // split of the first-integral residual
  ExprPtr kinetic;                       // T
  ExprPtr potential;                     // U with H = T - U
};

/// The point-transformation case: H = T - U with T quadratic homogeneous in
/// the momenta and U momentum-free; for W linear homogeneous in p the
/// first-integral condition splits by momentum degree into the Killing
/// condition on T and invariance of U.
LevyCerrutiReport levy_cerruti_split(const IntegralCandidate& w, const HamiltonianSystem& sys,
                                     const ProbeConfig& cfg = {});

} // namespace canonsym
