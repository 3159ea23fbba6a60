#include "phase_space.hpp"

namespace canonsym {

PhaseSpace::PhaseSpace(int n) : n_(n) {
  if (n < 1) raise(Errc::BadArgument, "phase space needs n >= 1");
  names_.resize(static_cast<std::size_t>(var_count()));
  for (int i = 0; i < n_; ++i) {
    names_[static_cast<std::size_t>(i)] = "x" + std::to_string(i + 1);
    names_[static_cast<std::size_t>(n_ + i)] = "p" + std::to_string(i + 1);
    names_[static_cast<std::size_t>(2 * n_ + 1 + i)] = "xdot" + std::to_string(i + 1);
    names_[static_cast<std::size_t>(3 * n_ + 1 + i)] = "pdot" + std::to_string(i + 1);
  }
  names_[static_cast<std::size_t>(2 * n_)] = "t";
  nodes_.reserve(names_.size());
  for (std::size_t id = 0; id < names_.size(); ++id)
    nodes_.push_back(Expr::variable(static_cast<int>(id), names_[id]));
}

void PhaseSpace::check(int i) const {
  if (i < 0 || i >= n_) raise(Errc::BadArgument, "coordinate index out of range");
}

std::optional<int> PhaseSpace::lookup(std::string_view name) const {
  for (std::size_t id = 0; id < names_.size(); ++id)
    if (names_[id] == name) return static_cast<int>(id);
  return std::nullopt;
}

void require_jet_free(const ExprPtr& e, const PhaseSpace& space, const char* what) {
  std::map<int, std::string> vars;
  collect_variables(e, vars);
  for (const auto& [id, name] : vars)
    if (space.is_jet(id))
      raise(Errc::JetVariablePresent,
            std::string(what) + " must not mention jet variable " + name);
}

} // namespace canonsym
