#pragma once

#include <optional>
#include <string>
#include <vector>

#include "canonical.hpp"

namespace canonsym {

/// A vertical (time-invariant) infinitesimal transformation with increments
/// xi_i of x_i and pi_i of p_i, all jet-free expressions over (t, x, p).
/// The characteristic function is optional metadata: fields that do not come
/// from one (non-contact fields) are representable.
class ContactField {
public:
  ContactField(PhaseSpace space, std::vector<ExprPtr> xi, std::vector<ExprPtr> pi,
               std::optional<ExprPtr> characteristic = std::nullopt);

  const PhaseSpace& space() const { return space_; }
  const std::vector<ExprPtr>& xi() const { return xi_; }
  const std::vector<ExprPtr>& pi() const { return pi_; }
  const std::optional<ExprPtr>& characteristic() const { return characteristic_; }

private:
  PhaseSpace space_;
  std::vector<ExprPtr> xi_, pi_;
  std::optional<ExprPtr> characteristic_;
};

/// First prolongation: the increments of xdot_i and pdot_i are the total
/// derivatives of the base increments, linear in the jet variables.
struct ProlongedField {
  ContactField base;
  std::vector<ExprPtr> dxi_dt, dpi_dt;
};

/// Directional derivative of e along (xi, pi), normalized.
ExprPtr apply_field(const ContactField& f, const ExprPtr& e);

ProlongedField prolong(const ContactField& f);

struct EquationVerdict {
  std::string equation; // "E1_i" / "E2_i", 1-based
  ExprPtr residual;     // on-shell residual
  ZeroVerdict verdict;
};

struct InvarianceReport {
  std::vector<EquationVerdict> equations; // 2n entries
  bool passed = false;                    // conjunction
};

/// Applies the prolonged field to each equation of the canonical system and
/// reduces on shell: residual_1i = d(xi_i)/dt - v(dH/dp_i),
/// residual_2i = d(pi_i)/dt + v(dH/dx_i).
InvarianceReport invariance_check(const ContactField& f, const HamiltonianSystem& sys,
                                  const ProbeConfig& cfg = {});

} // namespace canonsym
