#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symcore.hpp"

namespace canonsym {

/// Canonical coordinates for n degrees of freedom: x1..xn, p1..pn, the time
/// t, and first-order jet variables xdot1..xdotn, pdot1..pdotn (declared as
/// ordinary variables). All 4n+1 names are pairwise distinct.
///
/// Variable ids are dense: x_i -> i, p_i -> n+i, t -> 2n,
/// xdot_i -> 2n+1+i, pdot_i -> 3n+1+i (i zero-based).
class PhaseSpace {
public:
  explicit PhaseSpace(int n);

  int n() const { return n_; }
  int var_count() const { return 4 * n_ + 1; }

  int x_id(int i) const { return check(i), i; }
  int p_id(int i) const { return check(i), n_ + i; }
  int t_id() const { return 2 * n_; }
  int xdot_id(int i) const { return check(i), 2 * n_ + 1 + i; }
  int pdot_id(int i) const { return check(i), 3 * n_ + 1 + i; }

  ExprPtr x(int i) const { return nodes_[x_id(i)]; }
  ExprPtr p(int i) const { return nodes_[p_id(i)]; }
  ExprPtr t() const { return nodes_[t_id()]; }
  ExprPtr xdot(int i) const { return nodes_[xdot_id(i)]; }
  ExprPtr pdot(int i) const { return nodes_[pdot_id(i)]; }
  ExprPtr var(int id) const { return nodes_.at(id); }

  bool is_coordinate(int id) const { return id >= 0 && id < n_; }
  bool is_momentum(int id) const { return id >= n_ && id < 2 * n_; }
  bool is_time(int id) const { return id == 2 * n_; }
  bool is_jet(int id) const { return id > 2 * n_ && id < var_count(); }

  const std::string& name(int id) const { return names_.at(id); }
  std::optional<int> lookup(std::string_view name) const;

private:
  void check(int i) const;

  int n_;
  std::vector<std::string> names_;
  std::vector<ExprPtr> nodes_;
};

/// Raises JetVariablePresent if e mentions any jet variable of the space.
void require_jet_free(const ExprPtr& e, const PhaseSpace& space, const char* what);

} // namespace canonsym
