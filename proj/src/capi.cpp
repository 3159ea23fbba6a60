#include <canonsym/canonsym.h>

#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "discovery.hpp"
#include "exparse.hpp"
#include "numverify.hpp"
#include "runner.hpp"

using namespace canonsym;

struct csym_space {
  std::shared_ptr<const PhaseSpace> space;
};
struct csym_expr {
  std::shared_ptr<const PhaseSpace> space;
  ExprPtr e;
};
struct csym_system {
  std::shared_ptr<const HamiltonianSystem> sys;
};
struct csym_field {
  std::shared_ptr<const ContactField> field;
};
struct csym_problem {
  ProblemFile problem;
};
struct csym_report {
  RunReport report;
};

namespace {

thread_local std::string g_last_error;

csym_status status_of(Errc c) {
  switch (c) {
    case Errc::UnexpectedToken: return CSYM_E_UNEXPECTED_TOKEN;
    case Errc::UnexpectedEnd: return CSYM_E_UNEXPECTED_END;
    case Errc::UnknownIdentifier: return CSYM_E_UNKNOWN_IDENTIFIER;
    case Errc::ArityMismatch: return CSYM_E_ARITY_MISMATCH;
    case Errc::DivisionByZeroConstant: return CSYM_E_DIVISION_BY_ZERO;
    case Errc::NotPolynomialInMomenta: return CSYM_E_NOT_POLYNOMIAL_IN_MOMENTA;
    case Errc::JetVariablePresent: return CSYM_E_JET_VARIABLE_PRESENT;
    case Errc::DomainError: return CSYM_E_DOMAIN;
    case Errc::ProbeDomainExhausted: return CSYM_E_PROBE_DOMAIN_EXHAUSTED;
    case Errc::NotContactField: return CSYM_E_NOT_CONTACT_FIELD;
    case Errc::BasePointSingular: return CSYM_E_BASE_POINT_SINGULAR;
    case Errc::NonIntegrableAlongPath: return CSYM_E_NON_INTEGRABLE_ALONG_PATH;
    case Errc::NotInvariant: return CSYM_E_NOT_INVARIANT;
    case Errc::NoClosedFormAntiderivative: return CSYM_E_NO_CLOSED_FORM_ANTIDERIVATIVE;
    case Errc::HNotKineticMinusPotential: return CSYM_E_H_NOT_KINETIC_MINUS_POTENTIAL;
    case Errc::WNotLinearHomogeneous: return CSYM_E_W_NOT_LINEAR_HOMOGENEOUS;
    case Errc::HNotPolynomial: return CSYM_E_H_NOT_POLYNOMIAL;
    case Errc::DegreeTooLarge: return CSYM_E_DEGREE_TOO_LARGE;
    case Errc::NotSeparable: return CSYM_E_NOT_SEPARABLE;
    case Errc::NewtonDivergence: return CSYM_E_NEWTON_DIVERGENCE;
    case Errc::SchemaError: return CSYM_E_SCHEMA;
    case Errc::IoError: return CSYM_E_IO;
    case Errc::BadArgument: return CSYM_E_BAD_ARGUMENT;
    case Errc::Internal: return CSYM_E_INTERNAL;
  }
  return CSYM_E_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
csym_status guarded(Fn&& fn) {
  try {
    fn();
    return CSYM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CSYM_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CSYM_E_INTERNAL;
  }
}

csym_status require(bool cond, const char* message) {
  if (cond) return CSYM_OK;
  g_last_error = message;
  return CSYM_E_BAD_ARGUMENT;
}

IntegralCandidate candidate_from(const csym_system* sys, const char* w) {
  return IntegralCandidate{parse(w, sys->sys->space()), false};
}

RunOptions options_from(const csym_run_options* opts) {
  RunOptions out;
  if (opts) {
    if (opts->seed >= 0) out.seed = static_cast<std::uint64_t>(opts->seed);
    if (opts->tolerance > 0) out.tolerance = opts->tolerance;
    if (opts->csv_dir) out.csv_dir = opts->csv_dir;
  }
  return out;
}

} // namespace

extern "C" {

const char* csym_version(void) { return CSYM_VERSION; }

const char* csym_last_error(void) { return g_last_error.c_str(); }

const char* csym_status_name(csym_status s) {
  switch (s) {
    case CSYM_OK: return "OK";
    case CSYM_E_UNEXPECTED_TOKEN: return "UnexpectedToken";
    case CSYM_E_UNEXPECTED_END: return "UnexpectedEnd";
    case CSYM_E_UNKNOWN_IDENTIFIER: return "UnknownIdentifier";
    case CSYM_E_ARITY_MISMATCH: return "ArityMismatch";
    case CSYM_E_DIVISION_BY_ZERO: return "DivisionByZeroConstant";
    case CSYM_E_NOT_POLYNOMIAL_IN_MOMENTA: return "NotPolynomialInMomenta";
    case CSYM_E_JET_VARIABLE_PRESENT: return "JetVariablePresent";
    case CSYM_E_DOMAIN: return "DomainError";
    case CSYM_E_PROBE_DOMAIN_EXHAUSTED: return "ProbeDomainExhausted";
    case CSYM_E_NOT_CONTACT_FIELD: return "NotContactField";
    case CSYM_E_BASE_POINT_SINGULAR: return "BasePointSingular";
    case CSYM_E_NON_INTEGRABLE_ALONG_PATH: return "NonIntegrableAlongPath";
    case CSYM_E_NOT_INVARIANT: return "NotInvariant";
    case CSYM_E_NO_CLOSED_FORM_ANTIDERIVATIVE: return "NoClosedFormAntiderivative";
    case CSYM_E_H_NOT_KINETIC_MINUS_POTENTIAL: return "HNotKineticMinusPotential";
    case CSYM_E_W_NOT_LINEAR_HOMOGENEOUS: return "WNotLinearHomogeneous";
    case CSYM_E_H_NOT_POLYNOMIAL: return "HNotPolynomial";
    case CSYM_E_DEGREE_TOO_LARGE: return "DegreeTooLarge";
    case CSYM_E_NOT_SEPARABLE: return "NotSeparable";
    case CSYM_E_NEWTON_DIVERGENCE: return "NewtonDivergence";
    case CSYM_E_SCHEMA: return "SchemaError";
    case CSYM_E_IO: return "IoError";
    case CSYM_E_BAD_ARGUMENT: return "BadArgument";
    case CSYM_E_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void csym_string_free(char* s) { std::free(s); }

csym_status csym_space_create(int n, csym_space** out) {
  if (auto rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] { *out = new csym_space{std::make_shared<PhaseSpace>(n)}; });
}

void csym_space_free(csym_space* s) { delete s; }

int csym_space_dim(const csym_space* s) { return s ? s->space->n() : 0; }

csym_status csym_parse(const csym_space* s, const char* text, csym_expr** out) {
  if (auto rc = require(s && text && out, "space, text and out must not be null")) return rc;
  return guarded([&] { *out = new csym_expr{s->space, parse(text, *s->space)}; });
}

csym_status csym_expr_render(const csym_expr* e, char** out) {
  if (auto rc = require(e && out, "expr and out must not be null")) return rc;
  return guarded([&] { *out = dup_string(render(e->e)); });
}

csym_status csym_expr_normalize(const csym_expr* e, csym_expr** out) {
  if (auto rc = require(e && out, "expr and out must not be null")) return rc;
  return guarded([&] { *out = new csym_expr{e->space, normalize(e->e)}; });
}

csym_status csym_differentiate(const csym_expr* e, const char* variable, csym_expr** out) {
  if (auto rc = require(e && variable && out, "expr, variable and out must not be null"))
    return rc;
  return guarded([&] {
    auto id = e->space->lookup(variable);
    if (!id) raise(Errc::UnknownIdentifier, std::string("unknown variable '") + variable + "'");
    *out = new csym_expr{e->space, differentiate(e->e, *id)};
  });
}

csym_status csym_poisson_bracket(const csym_expr* f, const csym_expr* g, csym_expr** out) {
  if (auto rc = require(f && g && out, "arguments must not be null")) return rc;
  if (auto rc = require(f->space->n() == g->space->n(), "mismatched phase spaces")) return rc;
  return guarded([&] { *out = new csym_expr{f->space, poisson_bracket(f->e, g->e, *f->space)}; });
}

csym_status csym_expr_eval(const csym_expr* e, const char* const* names, const double* values,
                           int count, double* out) {
  if (auto rc = require(e && out && (count == 0 || (names && values)), "bad arguments"))
    return rc;
  return guarded([&] {
    std::map<int, double> point;
    for (int i = 0; i < count; ++i) {
      auto id = e->space->lookup(names[i]);
      if (!id)
        raise(Errc::UnknownIdentifier, std::string("unknown variable '") + names[i] + "'");
      point[*id] = values[i];
    }
    *out = eval_numeric(e->e, point);
  });
}

csym_status csym_expr_is_zero(const csym_expr* e, uint64_t seed, int* verdict) {
  if (auto rc = require(e && verdict, "expr and verdict must not be null")) return rc;
  return guarded([&] {
    ProbeConfig cfg;
    cfg.seed = seed;
    *verdict = static_cast<int>(is_zero(e->e, cfg).status);
  });
}

void csym_expr_free(csym_expr* e) { delete e; }

csym_status csym_system_create(const csym_space* s, const char* hamiltonian, csym_system** out) {
  if (auto rc = require(s && hamiltonian && out, "arguments must not be null")) return rc;
  return guarded([&] {
    *out = new csym_system{
        std::make_shared<HamiltonianSystem>(*s->space, parse(hamiltonian, *s->space))};
  });
}

void csym_system_free(csym_system* s) { delete s; }

csym_status csym_first_integral_test(const csym_system* sys, const char* w, uint64_t seed,
                                     int* verdict, char** residual) {
  if (auto rc = require(sys && w && verdict, "arguments must not be null")) return rc;
  return guarded([&] {
    ProbeConfig cfg;
    cfg.seed = seed;
    FirstIntegralResult res = first_integral_test(candidate_from(sys, w), *sys->sys, cfg);
    *verdict = static_cast<int>(res.verdict.status);
    if (residual) *residual = dup_string(render(res.residual));
  });
}

csym_status csym_field_create(const csym_space* s, const char* const* xi, const char* const* pi,
                              csym_field** out) {
  if (auto rc = require(s && xi && pi && out, "arguments must not be null")) return rc;
  return guarded([&] {
    std::vector<ExprPtr> xs, ps;
    for (int i = 0; i < s->space->n(); ++i) {
      xs.push_back(parse(xi[i], *s->space));
      ps.push_back(parse(pi[i], *s->space));
    }
    *out = new csym_field{
        std::make_shared<ContactField>(*s->space, std::move(xs), std::move(ps))};
  });
}

csym_status csym_field_from_integral(const csym_space* s, const char* w, csym_field** out) {
  if (auto rc = require(s && w && out, "arguments must not be null")) return rc;
  return guarded([&] {
    *out = new csym_field{std::make_shared<ContactField>(
        field_from_integral(IntegralCandidate{parse(w, *s->space), false}, *s->space))};
  });
}

csym_status csym_field_component(const csym_field* f, int which, int index, char** out) {
  if (auto rc = require(f && out, "field and out must not be null")) return rc;
  if (auto rc = require(which == 0 || which == 1, "which must be 0 (xi) or 1 (pi)")) return rc;
  if (auto rc = require(index >= 0 && index < f->field->space().n(), "index out of range"))
    return rc;
  return guarded([&] {
    const auto& comps = which == 0 ? f->field->xi() : f->field->pi();
    *out = dup_string(render(comps[static_cast<std::size_t>(index)]));
  });
}

csym_status csym_integral_from_field(const csym_system* sys, const csym_field* f,
                                     const double* base_point, char** w_out,
                                     int* addend_normalized) {
  if (auto rc = require(sys && f && w_out, "arguments must not be null")) return rc;
  return guarded([&] {
    std::optional<std::vector<double>> base;
    if (base_point) {
      base.emplace(base_point,
                   base_point + 2 * static_cast<std::size_t>(sys->sys->space().n()));
    }
    ReconstructionResult res = integral_from_field(*f->field, *sys->sys, base);
    *w_out = dup_string(render(res.candidate.w));
    if (addend_normalized) *addend_normalized = res.addend_normalized ? 1 : 0;
  });
}

csym_status csym_invariance_check(const csym_system* sys, const csym_field* f, uint64_t seed,
                                  int* passed) {
  if (auto rc = require(sys && f && passed, "arguments must not be null")) return rc;
  return guarded([&] {
    ProbeConfig cfg;
    cfg.seed = seed;
    *passed = invariance_check(*f->field, *sys->sys, cfg).passed ? 1 : 0;
  });
}

void csym_field_free(csym_field* f) { delete f; }

csym_status csym_discover(const csym_system* sys, int degree, int include_t, uint64_t seed,
                          char** generators_json) {
  if (auto rc = require(sys && generators_json, "arguments must not be null")) return rc;
  return guarded([&] {
    ProbeConfig cfg;
    cfg.seed = seed;
    AnsatzSpace ansatz = enumerate_basis(sys->sys->space(), degree, include_t != 0);
    IntegralBasis basis = discover_integrals(*sys->sys, ansatz, cfg);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& g : basis.generators) arr.push_back(render(g.w));
    *generators_json = dup_string(arr.dump());
  });
}

csym_status csym_problem_parse(const char* json_text, const char* label, csym_problem** out) {
  if (auto rc = require(json_text && out, "json_text and out must not be null")) return rc;
  return guarded([&] {
    *out = new csym_problem{parse_problem_text(json_text, label ? label : "problem")};
  });
}

csym_status csym_problem_load(const char* path, csym_problem** out) {
  if (auto rc = require(path && out, "path and out must not be null")) return rc;
  return guarded([&] { *out = new csym_problem{load_problem_file(path)}; });
}

void csym_problem_free(csym_problem* p) { delete p; }

int csym_gallery_count(void) {
  return static_cast<int>(gallery().size());
}

const char* csym_gallery_name(int index) {
  const auto& g = gallery();
  if (index < 0 || index >= static_cast<int>(g.size())) return nullptr;
  return g[static_cast<std::size_t>(index)].name.c_str();
}

csym_status csym_gallery_problem(int index, csym_problem** out) {
  if (auto rc = require(out != nullptr, "out must not be null")) return rc;
  const auto& g = gallery();
  if (auto rc = require(index >= 0 && index < static_cast<int>(g.size()), "index out of range"))
    return rc;
  return guarded([&] { *out = new csym_problem{g[static_cast<std::size_t>(index)].problem}; });
}

csym_status csym_run(const csym_problem* p, const char* command, const csym_run_options* opts,
                     csym_report** out) {
  if (auto rc = require(p && command && out, "arguments must not be null")) return rc;
  return guarded([&] {
    *out = new csym_report{run_command(p->problem, command, options_from(opts))};
  });
}

csym_status csym_run_gallery(const char* command, const csym_run_options* opts,
                             csym_report** out) {
  if (auto rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] {
    std::optional<std::string> cmd;
    if (command) cmd = command;
    *out = new csym_report{run_gallery(cmd, options_from(opts))};
  });
}

int csym_report_passed(const csym_report* r) { return r && r->report.passed ? 1 : 0; }

int csym_report_exit_code(const csym_report* r) { return r ? r->report.exit_code : 2; }

csym_status csym_report_text(const csym_report* r, char** out) {
  if (auto rc = require(r && out, "report and out must not be null")) return rc;
  return guarded([&] { *out = dup_string(r->report.human); });
}

csym_status csym_report_json(const csym_report* r, char** out) {
  if (auto rc = require(r && out, "report and out must not be null")) return rc;
  return guarded([&] { *out = dup_string(r->report.json); });
}

void csym_report_free(csym_report* r) { delete r; }

} // extern "C"
