#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace canonsym {

class PhaseSpace;

enum class NodeKind { Constant, Variable, Sum, Product, Quotient, Negate, Power, Function };
enum class FuncKind { Sin, Cos, Exp, Log, Sqrt };

const char* func_name(FuncKind f);
std::optional<FuncKind> func_from_name(std::string_view name);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over declared variables and the kernel
/// functions sin, cos, exp, log, sqrt. Constants are exact rationals; no
/// floating point is ever stored in a tree.
class Expr {
public:
  static ExprPtr constant(Rational value);
  static ExprPtr integer(long long value);
  static ExprPtr variable(int id, std::string name);
  static ExprPtr sum(std::vector<ExprPtr> terms);       // >= 2 terms
  static ExprPtr product(std::vector<ExprPtr> factors); // >= 2 factors
  static ExprPtr quotient(ExprPtr num, ExprPtr den);
  static ExprPtr negate(ExprPtr inner);
  static ExprPtr power(ExprPtr base, long long exponent);
  static ExprPtr function(FuncKind f, ExprPtr arg);

  NodeKind kind() const { return kind_; }
  const Rational& value() const { return value_; }
  int var_id() const { return var_id_; }
  const std::string& var_name() const { return var_name_; }
  const std::vector<ExprPtr>& children() const { return children_; }
  long long exponent() const { return exponent_; }
  FuncKind func() const { return func_; }

private:
  explicit Expr(NodeKind k) : kind_(k) {}

  NodeKind kind_;
  Rational value_;
  int var_id_ = -1;
  std::string var_name_;
  std::vector<ExprPtr> children_;
  long long exponent_ = 0;
  FuncKind func_ = FuncKind::Sin;
};

/// Total order on trees; 0 iff structurally equal.
int compare(const ExprPtr& a, const ExprPtr& b);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Collects every variable occurring in e (including inside kernel
/// arguments), keyed by id.
void collect_variables(const ExprPtr& e, std::map<int, std::string>& out);
bool contains_variable(const ExprPtr& e, int var_id);

bool is_zero_constant(const ExprPtr& e);
bool is_constant(const ExprPtr& e, Rational* value = nullptr);

// ---------------------------------------------------------------------------
// zero testing

enum class ZeroStatus { ProvedZero, NumericallyZero, Nonzero };
const char* zero_status_name(ZeroStatus s);

struct ProbeConfig {
  std::uint64_t seed = 1;
  int probes = 32;
  double tolerance = 1e-9;
};

struct ZeroVerdict {
  ZeroStatus status = ZeroStatus::ProvedZero;
  int probes = 0;
  double tolerance = 0.0;
  std::map<std::string, double> witness; // populated for Nonzero
  double witness_value = 0.0;

  bool passed() const { return status != ZeroStatus::Nonzero; }
};

// ---------------------------------------------------------------------------
// operations

/// Expanded normal form: the polynomial/rational fragment is brought to a
/// unique fraction of expanded polynomials over exact rationals, with
/// transcendental subterms treated as opaque kernels (normalized inside).
ExprPtr normalize(const ExprPtr& e);

/// Exact partial derivative with respect to the variable id; normalized.
ExprPtr differentiate(const ExprPtr& e, int var_id);

/// Simultaneous substitution, then normalization.
ExprPtr substitute(const ExprPtr& e, const std::map<int, ExprPtr>& bindings);

/// ProvedZero iff normalize(e) is the zero constant; otherwise probes at
/// random rational points (singular draws are retried).
ZeroVerdict is_zero(const ExprPtr& e, const ProbeConfig& cfg = {});

/// Splits e into homogeneous-in-momenta components, degree -> component.
std::map<int, ExprPtr> split_by_p_degree(const ExprPtr& e, const PhaseSpace& space);

/// Floating evaluation; rationals converted at the leaves.
double eval_numeric(const ExprPtr& e, const std::map<int, double>& point);

/// Fast path: values indexed by variable id; entries for unused ids ignored.
double eval_numeric_ids(const ExprPtr& e, const std::vector<double>& values_by_id);

} // namespace canonsym
