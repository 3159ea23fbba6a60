#include "runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <canonsym/canonsym.h>

#include "discovery.hpp"
#include "exparse.hpp"
#include "numverify.hpp"

namespace canonsym {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kDefaultDriftTol = 1e-6;
constexpr double kDefaultCommuteTol = 1e-6;

struct Context {
  const ProblemFile& problem;
  PhaseSpace space;
  HamiltonianSystem sys;
  ProbeConfig cfg;
  double drift_tol;
  double commute_tol;
  std::string csv_dir;
};

Context make_context(const ProblemFile& p, const RunOptions& opts) {
  PhaseSpace space(p.n);
  HamiltonianSystem sys(space, parse(p.hamiltonian, space));
  ProbeConfig cfg;
  cfg.seed = opts.seed.value_or(p.seed);
  if (opts.tolerance) cfg.tolerance = *opts.tolerance;
  return Context{p,
                 std::move(space),
                 std::move(sys),
                 cfg,
                 opts.tolerance.value_or(kDefaultDriftTol),
                 opts.tolerance.value_or(kDefaultCommuteTol),
                 opts.csv_dir};
}

ordered_json verdict_json(const ZeroVerdict& v) {
  ordered_json j;
  j["status"] = zero_status_name(v.status);
  if (v.status == ZeroStatus::NumericallyZero) {
    j["probes"] = v.probes;
    j["tolerance"] = v.tolerance;
  }
  if (v.status == ZeroStatus::Nonzero) {
    j["witness"] = ordered_json(v.witness);
    j["witness_value"] = v.witness_value;
  }
  return j;
}

std::string verdict_line(const ZeroVerdict& v) {
  std::string s = zero_status_name(v.status);
  if (v.status == ZeroStatus::Nonzero && !v.witness.empty()) {
    s += " (witness value ";
    s += std::to_string(v.witness_value);
    s += ")";
  }
  return s;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

IntegralCandidate parse_candidate(const Context& ctx, const std::string& text) {
  return IntegralCandidate{parse(text, ctx.space), false};
}

ContactField parse_field(const Context& ctx, const ProblemFile::FieldSpec& spec) {
  std::vector<ExprPtr> xi, pi;
  for (const auto& s : spec.xi) xi.push_back(parse(s, ctx.space));
  for (const auto& s : spec.pi) pi.push_back(parse(s, ctx.space));
  return ContactField(ctx.space, std::move(xi), std::move(pi));
}

void require_section(bool present, const char* command, const char* section) {
  if (!present)
    raise(Errc::SchemaError,
          std::string("command '") + command + "' needs a '" + section + "' section");
}

struct CommandOutput {
  ordered_json results = ordered_json::array();
  std::vector<std::string> lines;
  bool passed = true;
};

void fail_entry(CommandOutput& out, const std::string& name, const Error& e) {
  ordered_json r;
  r["name"] = name;
  r["error"] = errc_name(e.code());
  r["message"] = e.what();
  out.results.push_back(std::move(r));
  out.lines.push_back("[FAIL] " + name + ": " + errc_name(e.code()) + " — " + e.what());
  out.passed = false;
}

// --- verify -------------------------------------------------------------

CommandOutput cmd_verify(const Context& ctx) {
  require_section(!ctx.problem.candidates.empty(), "verify", "candidates");
  CommandOutput out;
  for (const auto& c : ctx.problem.candidates) {
    IntegralCandidate cand = parse_candidate(ctx, c.expression);
    FirstIntegralResult res = first_integral_test(cand, ctx.sys, ctx.cfg);
    ordered_json r;
    r["name"] = c.name;
    r["verdict"] = verdict_json(res.verdict);
    r["residual"] = render(res.residual);
    bool ok = res.verdict.passed();
    r["normalized"] = res.verdict.status == ZeroStatus::ProvedZero;
    if (!ok) {
      // the residual may be a pure function of t; then the candidate is
      // correct up to an additive addend, which we fix and report
      try {
        AddendResult fixed = normalize_addend(cand, ctx.sys);
        r["corrected_w"] = render(fixed.candidate.w);
        r["removed_addend"] = render(fixed.addend);
        r["normalized"] = true;
        ok = true;
        out.lines.push_back("[PASS] " + c.name + ": corrected by addend, W = " +
                            render(fixed.candidate.w));
      } catch (const Error& e) {
        if (e.code() != Errc::NotInvariant && e.code() != Errc::NoClosedFormAntiderivative)
          throw;
        r["normalize_addend"] = errc_name(e.code());
        out.lines.push_back("[FAIL] " + c.name + ": " + verdict_line(res.verdict) +
                            ", residual = " + render(res.residual));
      }
    } else {
      out.lines.push_back("[PASS] " + c.name + ": " + verdict_line(res.verdict));
    }
    out.passed = out.passed && ok;
    out.results.push_back(std::move(r));
  }
  return out;
}

// --- correspond ------------------------------------------------------------

CommandOutput cmd_correspond(const Context& ctx) {
  require_section(!ctx.problem.candidates.empty(), "correspond", "candidates");
  CommandOutput out;
  for (const auto& c : ctx.problem.candidates) {
    ContactField field = field_from_integral(parse_candidate(ctx, c.expression), ctx.space);
    ordered_json r;
    r["name"] = c.name;
    ordered_json xi = ordered_json::array(), pi = ordered_json::array();
    std::string human = "[PASS] " + c.name + ": xi = (";
    for (int i = 0; i < ctx.space.n(); ++i) {
      xi.push_back(render(field.xi()[static_cast<std::size_t>(i)]));
      human += (i ? ", " : "") + render(field.xi()[static_cast<std::size_t>(i)]);
    }
    human += "), pi = (";
    for (int i = 0; i < ctx.space.n(); ++i) {
      pi.push_back(render(field.pi()[static_cast<std::size_t>(i)]));
      human += (i ? ", " : "") + render(field.pi()[static_cast<std::size_t>(i)]);
    }
    human += ")";
    r["field"] = ordered_json{{"xi", xi}, {"pi", pi}};
    out.results.push_back(std::move(r));
    out.lines.push_back(std::move(human));
  }
  return out;
}

// --- reconstruct --------------------------------------------------------------

CommandOutput cmd_reconstruct(const Context& ctx) {
  require_section(!ctx.problem.fields.empty(), "reconstruct", "fields");
  CommandOutput out;
  for (const auto& spec : ctx.problem.fields) {
    try {
      ContactField field = parse_field(ctx, spec);
      ReconstructionResult res =
          integral_from_field(field, ctx.sys, ctx.problem.base_point, ctx.cfg);
      ordered_json r;
      r["name"] = spec.name;
      r["w"] = render(res.candidate.w);
      r["path"] = res.homogeneous_path ? "homogeneous" : "line_integral";
      r["addend_normalized"] = res.addend_normalized;
      if (res.addend_normalized && res.removed_addend)
        r["removed_addend"] = render(res.removed_addend);

      // componentwise round trip against the input field
      ContactField back = field_from_integral(res.candidate, ctx.space);
      bool round_trip = true;
      for (int i = 0; i < ctx.space.n(); ++i) {
        const auto iu = static_cast<std::size_t>(i);
        round_trip =
            round_trip &&
            is_zero_constant(normalize(
                Expr::sum({back.xi()[iu], Expr::negate(field.xi()[iu])}))) &&
            is_zero_constant(normalize(Expr::sum({back.pi()[iu], Expr::negate(field.pi()[iu])})));
      }
      r["round_trip"] = round_trip ? "ok" : "mismatch";
      out.passed = out.passed && round_trip;
      out.lines.push_back(std::string(round_trip ? "[PASS] " : "[FAIL] ") + spec.name +
                          ": W = " + render(res.candidate.w) +
                          (res.homogeneous_path ? " (homogeneous)" : " (line integral)"));
      out.results.push_back(std::move(r));
    } catch (const Error& e) {
      if (e.code() == Errc::SchemaError || e.code() == Errc::BadArgument) throw;
      fail_entry(out, spec.name, e);
    }
  }
  return out;
}

// --- invariance -----------------------------------------------------------------

CommandOutput cmd_invariance(const Context& ctx) {
  require_section(!ctx.problem.fields.empty(), "invariance", "fields");
  CommandOutput out;
  for (const auto& spec : ctx.problem.fields) {
    ContactField field = parse_field(ctx, spec);
    InvarianceReport report = invariance_check(field, ctx.sys, ctx.cfg);
    ordered_json r;
    r["name"] = spec.name;
    ordered_json eqs = ordered_json::array();
    for (const auto& eq : report.equations) {
      ordered_json e;
      e["equation"] = eq.equation;
      e["verdict"] = verdict_json(eq.verdict);
      e["residual"] = render(eq.residual);
      eqs.push_back(std::move(e));
    }
    r["equations"] = std::move(eqs);
    r["passed"] = report.passed;
    out.passed = out.passed && report.passed;
    std::string human = std::string(report.passed ? "[PASS] " : "[FAIL] ") + spec.name;
    if (!report.passed) {
      for (const auto& eq : report.equations)
        if (!eq.verdict.passed())
          human += " " + eq.equation + ": residual " + render(eq.residual);
    }
    out.lines.push_back(std::move(human));
    out.results.push_back(std::move(r));
  }
  return out;
}

// --- levy-cerruti ------------------------------------------------------------------

CommandOutput cmd_levy_cerruti(const Context& ctx) {
  require_section(!ctx.problem.candidates.empty(), "levy-cerruti", "candidates");
  CommandOutput out;
  for (const auto& c : ctx.problem.candidates) {
    try {
      IntegralCandidate cand = parse_candidate(ctx, c.expression);
      LevyCerrutiReport rep = levy_cerruti_split(cand, ctx.sys, ctx.cfg);
      ordered_json r;
      r["name"] = c.name;
      r["is_linear_homogeneous"] = rep.is_linear_homogeneous;
      if (!rep.is_linear_homogeneous) {
        r["error"] = errc_name(Errc::WNotLinearHomogeneous);
        out.passed = false;
        out.lines.push_back("[FAIL] " + c.name + ": not linear homogeneous in the momenta");
        out.results.push_back(std::move(r));
        continue;
      }
      ordered_json pf = ordered_json::array();
      for (const auto& xi : rep.point_field) pf.push_back(render(xi));
      r["point_field"] = std::move(pf);
      r["kinetic"] = render(rep.kinetic);
      r["potential"] = render(rep.potential);
      r["T_admits"] = verdict_json(rep.t_admits);
      r["U_admits"] = verdict_json(rep.u_admits);
      ordered_json degs;
      bool others_ok = true;
      for (const auto& [deg, residual] : rep.degree_residuals) {
        degs[std::to_string(deg)] = render(residual);
        if (deg != 0 && deg != 2) others_ok = others_ok && is_zero(residual, ctx.cfg).passed();
      }
      r["degree_residuals"] = std::move(degs);
      bool ok = rep.t_admits.passed() && rep.u_admits.passed() && others_ok;
      r["passed"] = ok;
      out.passed = out.passed && ok;
      out.lines.push_back(std::string(ok ? "[PASS] " : "[FAIL] ") + c.name +
                          ": T " + verdict_line(rep.t_admits) + ", U " +
                          verdict_line(rep.u_admits));
      out.results.push_back(std::move(r));
    } catch (const Error& e) {
      if (e.code() == Errc::SchemaError || e.code() == Errc::BadArgument) throw;
      fail_entry(out, c.name, e);
    }
  }
  return out;
}

// --- discover -------------------------------------------------------------------

CommandOutput cmd_discover(const Context& ctx) {
  require_section(ctx.problem.ansatz.has_value(), "discover", "ansatz");
  CommandOutput out;
  try {
    AnsatzSpace ansatz =
        enumerate_basis(ctx.space, ctx.problem.ansatz->degree, ctx.problem.ansatz->include_t);
    IntegralBasis basis = discover_integrals(ctx.sys, ansatz, ctx.cfg);
    ordered_json r;
    r["name"] = "ansatz";
    r["degree"] = ctx.problem.ansatz->degree;
    r["include_t"] = ctx.problem.ansatz->include_t;
    r["basis_size"] = ansatz.basis.size();
    r["dimension"] = basis.dimension;
    ordered_json gens = ordered_json::array();
    std::string human = "[PASS] dimension " + std::to_string(basis.dimension) + ": ";
    for (std::size_t i = 0; i < basis.generators.size(); ++i) {
      gens.push_back(render(basis.generators[i].w));
      human += (i ? ", " : "") + render(basis.generators[i].w);
    }
    r["generators"] = std::move(gens);
    out.results.push_back(std::move(r));
    out.lines.push_back(std::move(human));
  } catch (const Error& e) {
    if (e.code() == Errc::SchemaError || e.code() == Errc::BadArgument) throw;
    fail_entry(out, "ansatz", e);
  }
  return out;
}

// --- simulate ---------------------------------------------------------------------

CommandOutput cmd_simulate(const Context& ctx) {
  require_section(ctx.problem.simulate.has_value(), "simulate", "simulate");
  require_section(!ctx.problem.candidates.empty(), "simulate", "candidates");
  const auto& sim = *ctx.problem.simulate;
  CommandOutput out;
  try {
    Integrator method =
        sim.method == "verlet" ? Integrator::Verlet : Integrator::ImplicitMidpoint;
    Trajectory traj = integrate_hamilton(ctx.sys, sim.initial, sim.t0, sim.t1, sim.h, method);
    const bool want_csv = !ctx.csv_dir.empty();
    for (const auto& c : ctx.problem.candidates) {
      IntegralCandidate cand = parse_candidate(ctx, c.expression);
      DriftStats stats = drift_report(cand, traj, ctx.space, want_csv);
      ordered_json r;
      r["name"] = c.name;
      r["method"] = integrator_name(method);
      r["steps"] = traj.times.size() - 1;
      r["h"] = sim.h;
      r["initial_value"] = stats.initial;
      r["max_abs_deviation"] = stats.max_abs_deviation;
      r["final_deviation"] = stats.final_deviation;
      bool ok = stats.max_abs_deviation <= ctx.drift_tol;
      r["tolerance"] = ctx.drift_tol;
      r["passed"] = ok;
      if (want_csv) {
        std::filesystem::create_directories(ctx.csv_dir);
        std::string file = ctx.csv_dir + "/" + sanitize(ctx.problem.label) + "__" +
                           sanitize(c.name) + ".csv";
        std::ofstream csv(file, std::ios::binary);
        if (!csv) raise(Errc::IoError, "cannot write " + file);
        write_drift_csv(csv, traj, stats);
        r["csv"] = file;
      }
      out.passed = out.passed && ok;
      std::ostringstream line;
      line << (ok ? "[PASS] " : "[FAIL] ") << c.name << ": max |dW| = "
           << stats.max_abs_deviation << " over " << (traj.times.size() - 1) << " steps";
      out.lines.push_back(line.str());
      out.results.push_back(std::move(r));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::SchemaError || e.code() == Errc::BadArgument) throw;
    fail_entry(out, "trajectory", e);
  }
  return out;
}

// --- commute -----------------------------------------------------------------------

CommandOutput cmd_commute(const Context& ctx) {
  require_section(ctx.problem.simulate.has_value(), "commute", "simulate");
  require_section(!ctx.problem.candidates.empty(), "commute", "candidates");
  const auto& sim = *ctx.problem.simulate;
  CommandOutput out;
  for (const auto& c : ctx.problem.candidates) {
    try {
      IntegralCandidate cand = parse_candidate(ctx, c.expression);
      CommutationReport rep = flow_commutation_check(cand, ctx.sys, sim.initial, sim.s, sim.t0,
                                                     sim.t1, sim.h, ctx.commute_tol);
      ordered_json r;
      r["name"] = c.name;
      r["s"] = sim.s;
      r["max_norm_error"] = rep.max_norm_error;
      r["tolerance"] = rep.tolerance;
      r["passed"] = rep.passed;
      out.passed = out.passed && rep.passed;
      std::ostringstream line;
      line << (rep.passed ? "[PASS] " : "[FAIL] ") << c.name
           << ": flow commutation error = " << rep.max_norm_error;
      out.lines.push_back(line.str());
      out.results.push_back(std::move(r));
    } catch (const Error& e) {
      if (e.code() == Errc::SchemaError || e.code() == Errc::BadArgument) throw;
      fail_entry(out, c.name, e);
    }
  }
  return out;
}

// --- assembly ---------------------------------------------------------------------

struct BuiltReport {
  ordered_json doc;
  std::string human;
  bool passed = false;
};

BuiltReport build_report(const ProblemFile& problem, const std::string& command,
                         const RunOptions& opts) {
  Context ctx = make_context(problem, opts);
  CommandOutput out;
  if (command == "verify")
    out = cmd_verify(ctx);
  else if (command == "correspond")
    out = cmd_correspond(ctx);
  else if (command == "reconstruct")
    out = cmd_reconstruct(ctx);
  else if (command == "invariance")
    out = cmd_invariance(ctx);
  else if (command == "levy-cerruti")
    out = cmd_levy_cerruti(ctx);
  else if (command == "discover")
    out = cmd_discover(ctx);
  else if (command == "simulate")
    out = cmd_simulate(ctx);
  else if (command == "commute")
    out = cmd_commute(ctx);
  else
    raise(Errc::BadArgument, "unknown command '" + command + "'");

  BuiltReport rep;
  rep.passed = out.passed;

  ordered_json inputs;
  inputs["problem"] = problem.label;
  inputs["n"] = problem.n;
  inputs["hamiltonian"] = render(ctx.sys.hamiltonian());

  ordered_json config;
  config["version"] = CSYM_VERSION;
  config["seed"] = ctx.cfg.seed;
  config["zero_probes"] = ctx.cfg.probes;
  config["zero_tolerance"] = ctx.cfg.tolerance;
  if (command == "simulate") config["drift_tolerance"] = ctx.drift_tol;
  if (command == "commute") config["commute_tolerance"] = ctx.commute_tol;
  if (problem.base_point) config["base_point"] = ordered_json(*problem.base_point);

  rep.doc["command"] = command;
  rep.doc["inputs"] = std::move(inputs);
  rep.doc["results"] = std::move(out.results);
  rep.doc["config"] = std::move(config);

  std::ostringstream human;
  human << command << " — " << problem.label << " (n=" << problem.n
        << ", H = " << render(ctx.sys.hamiltonian()) << ")\n";
  for (const auto& line : out.lines) human << "  " << line << "\n";
  human << "  result: " << (out.passed ? "PASS" : "FAIL") << "\n";
  rep.human = human.str();
  return rep;
}

RunReport finish(const std::string& command, BuiltReport&& rep) {
  RunReport out;
  out.command = command;
  out.passed = rep.passed;
  out.exit_code = rep.passed ? 0 : 1;
  out.human = std::move(rep.human);
  out.json = rep.doc.dump(2) + "\n";
  return out;
}

} // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify",       "correspond", "reconstruct",
                                                 "invariance",   "levy-cerruti", "discover",
                                                 "simulate",     "commute"};
  return names;
}

bool is_command(std::string_view name) {
  for (const auto& c : command_names())
    if (c == name) return true;
  return false;
}

RunReport run_command(const ProblemFile& problem, const std::string& command,
                      const RunOptions& opts) {
  return finish(command, build_report(problem, command, opts));
}

// --- gallery -----------------------------------------------------------------

namespace {

const char* kFreeParticle1d = R"json({
  "n": 1,
  "hamiltonian": "p1^2/2",
  "candidates": [
    {"name": "energy", "expression": "p1^2/2"},
    {"name": "momentum", "expression": "p1"},
    {"name": "galilean_boost", "expression": "x1 - t*p1"}
  ],
  "fields": [
    {"name": "translation", "xi": ["1"], "pi": ["0"]}
  ],
  "ansatz": {"degree": 1, "include_t": true},
  "simulate": {"initial": [0.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 0.001, "method": "verlet", "s": 0.1},
  "seed": 1
})json";

const char* kFreeParticle2d = R"json({
  "n": 2,
  "hamiltonian": "(p1^2 + p2^2)/2",
  "candidates": [
    {"name": "energy", "expression": "(p1^2 + p2^2)/2"},
    {"name": "angular_momentum", "expression": "x1*p2 - x2*p1"},
    {"name": "boost_x1", "expression": "x1 - t*p1"}
  ],
  "fields": [
    {"name": "rotation", "xi": ["-x2", "x1"], "pi": ["-p2", "p1"]}
  ],
  "ansatz": {"degree": 2, "include_t": false},
  "simulate": {"initial": [0.0, 0.0, 1.0, 0.5], "t0": 0.0, "t1": 10.0, "h": 0.001, "method": "verlet", "s": 0.1},
  "seed": 1
})json";

const char* kConstantForce = R"json({
  "n": 1,
  "hamiltonian": "p1^2/2 + x1",
  "candidates": [
    {"name": "energy", "expression": "p1^2/2 + x1"},
    {"name": "momentum_plus_t", "expression": "p1 + t"},
    {"name": "boost", "expression": "x1 - t*p1 - t^2/2"}
  ],
  "fields": [
    {"name": "translation", "xi": ["1"], "pi": ["0"]}
  ],
  "ansatz": {"degree": 2, "include_t": true},
  "simulate": {"initial": [0.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 0.001, "method": "verlet", "s": 0.1},
  "seed": 1
})json";

const char* kOscillator = R"json({
  "n": 1,
  "hamiltonian": "(p1^2 + x1^2)/2",
  "candidates": [
    {"name": "energy", "expression": "(p1^2 + x1^2)/2"}
  ],
  "fields": [
    {"name": "phase_rotation", "xi": ["p1"], "pi": ["-x1"]}
  ],
  "ansatz": {"degree": 2, "include_t": false},
  "simulate": {"initial": [1.0, 0.0], "t0": 0.0, "t1": 10.0, "h": 0.001, "method": "verlet", "s": 0.1},
  "seed": 1
})json";

const char* kCentralForce2d = R"json({
  "n": 2,
  "hamiltonian": "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2",
  "candidates": [
    {"name": "energy", "expression": "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2"},
    {"name": "angular_momentum", "expression": "x1*p2 - x2*p1"}
  ],
  "fields": [
    {"name": "rotation", "xi": ["-x2", "x1"], "pi": ["-p2", "p1"]}
  ],
  "ansatz": {"degree": 2, "include_t": false},
  "simulate": {"initial": [1.0, 0.0, 0.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 0.001, "method": "verlet", "s": 0.1},
  "seed": 1
})json";

const char* kLevyCerruti = R"json({
  "n": 2,
  "hamiltonian": "(p1^2 + p2^2)/2 - x1^2",
  "candidates": [
    {"name": "p2", "expression": "p2"}
  ],
  "fields": [
    {"name": "translation_x2", "xi": ["0", "1"], "pi": ["0", "0"]}
  ],
  "ansatz": {"degree": 1, "include_t": false},
  "simulate": {"initial": [0.0, 0.0, 1.0, 1.0], "t0": 0.0, "t1": 10.0, "h": 0.001, "method": "verlet", "s": 0.1},
  "seed": 1
})json";

} // namespace

const std::vector<GalleryEntry>& gallery() {
  static const std::vector<GalleryEntry> entries = [] {
    const std::vector<std::string> all = {"verify",     "correspond", "reconstruct", "invariance",
                                          "discover",   "simulate",   "commute"};
    std::vector<std::string> with_lc = all;
    with_lc.push_back("levy-cerruti");
    std::vector<GalleryEntry> out;
    auto add = [&out](const char* name, const char* text, std::vector<std::string> commands) {
      out.push_back(GalleryEntry{name, parse_problem_text(text, name), std::move(commands)});
    };
    add("free_particle_1d", kFreeParticle1d, all);
    add("free_particle_2d", kFreeParticle2d, all);
    add("constant_force", kConstantForce, all);
    add("oscillator", kOscillator, all);
    add("central_force_2d", kCentralForce2d, all);
    add("levy_cerruti", kLevyCerruti, with_lc);
    return out;
  }();
  return entries;
}

RunReport run_gallery(const std::optional<std::string>& command, const RunOptions& opts) {
  if (command && !is_command(*command))
    raise(Errc::BadArgument, "unknown command '" + *command + "'");

  ordered_json doc;
  doc["command"] = command ? *command : "all";
  doc["gallery"] = true;

  std::ostringstream human;
  bool passed = true;
  ordered_json runs = ordered_json::array();
  for (const auto& entry : gallery()) {
    for (const auto& cmd : entry.commands) {
      if (command && cmd != *command) continue;
      BuiltReport rep = build_report(entry.problem, cmd, opts);
      passed = passed && rep.passed;
      runs.push_back(std::move(rep.doc));
      human << rep.human;
    }
  }
  doc["runs"] = std::move(runs);

  ordered_json config;
  config["version"] = CSYM_VERSION;
  if (opts.seed) config["seed_override"] = *opts.seed;
  if (opts.tolerance) config["tolerance_override"] = *opts.tolerance;
  doc["config"] = std::move(config);

  RunReport out;
  out.command = command ? *command : "all";
  out.passed = passed;
  out.exit_code = passed ? 0 : 1;
  out.human = human.str() + "gallery result: " + (passed ? "PASS" : "FAIL") + "\n";
  out.json = doc.dump(2) + "\n";
  return out;
}

} // namespace canonsym
