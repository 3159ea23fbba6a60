#include "problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "canonical.hpp"
#include "exparse.hpp"

namespace canonsym {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& what) {
  raise(Errc::SchemaError, "problem file: " + what);
}

void expect_keys(const json& obj, const std::string& where, const std::set<std::string>& keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!keys.count(it.key())) schema_fail("unknown key '" + it.key() + "' in " + where);
}

int get_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) schema_fail("missing '" + key + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number_integer()) schema_fail("'" + key + "' in " + where + " must be an integer");
  return v.get<int>();
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) schema_fail("missing '" + key + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number()) schema_fail("'" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) schema_fail("missing '" + key + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_string()) schema_fail("'" + key + "' in " + where + " must be a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& v, const std::string& where) {
  if (!v.is_array()) schema_fail(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) schema_fail(where + " must contain numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

void check_expression(const std::string& text, const PhaseSpace& space,
                      const std::string& where) {
  try {
    parse(text, space);
  } catch (const Error& e) {
    schema_fail(where + ": " + e.what());
  }
}

} // namespace

ProblemFile parse_problem_text(const std::string& json_text, const std::string& label) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) schema_fail("not valid JSON");
  if (!doc.is_object()) schema_fail("top level must be an object");
  expect_keys(doc, "the problem",
              {"n", "hamiltonian", "candidates", "fields", "ansatz", "simulate", "base_point",
               "seed"});

  ProblemFile p;
  p.label = label;
  p.n = get_int(doc, "n", "the problem");
  if (p.n < 1) schema_fail("'n' must be >= 1");
  PhaseSpace space(p.n);

  p.hamiltonian = get_string(doc, "hamiltonian", "the problem");
  check_expression(p.hamiltonian, space, "hamiltonian");

  if (doc.contains("candidates")) {
    if (!doc.at("candidates").is_array()) schema_fail("'candidates' must be an array");
    for (const auto& c : doc.at("candidates")) {
      if (!c.is_object()) schema_fail("each candidate must be an object");
      expect_keys(c, "a candidate", {"name", "expression"});
      ProblemFile::Candidate cand;
      cand.name = get_string(c, "name", "a candidate");
      cand.expression = get_string(c, "expression", "candidate '" + cand.name + "'");
      check_expression(cand.expression, space, "candidate '" + cand.name + "'");
      p.candidates.push_back(std::move(cand));
    }
  }

  if (doc.contains("fields")) {
    if (!doc.at("fields").is_array()) schema_fail("'fields' must be an array");
    for (const auto& f : doc.at("fields")) {
      if (!f.is_object()) schema_fail("each field must be an object");
      expect_keys(f, "a field", {"name", "xi", "pi"});
      ProblemFile::FieldSpec spec;
      spec.name = get_string(f, "name", "a field");
      auto read_components = [&](const char* key, std::vector<std::string>& out) {
        if (!f.contains(key) || !f.at(key).is_array())
          schema_fail("field '" + spec.name + "' needs array '" + key + "'");
        for (const auto& comp : f.at(key)) {
          if (!comp.is_string()) schema_fail("field '" + spec.name + "' components must be strings");
          out.push_back(comp.get<std::string>());
          check_expression(out.back(), space, "field '" + spec.name + "'");
        }
        if (out.size() != static_cast<std::size_t>(p.n))
          schema_fail("field '" + spec.name + "' needs exactly n entries in '" + key + "'");
      };
      read_components("xi", spec.xi);
      read_components("pi", spec.pi);
      p.fields.push_back(std::move(spec));
    }
  }

  if (doc.contains("ansatz")) {
    const json& a = doc.at("ansatz");
    if (!a.is_object()) schema_fail("'ansatz' must be an object");
    expect_keys(a, "ansatz", {"degree", "include_t"});
    ProblemFile::Ansatz ansatz;
    ansatz.degree = get_int(a, "degree", "ansatz");
    if (ansatz.degree < 0) schema_fail("ansatz degree must be >= 0");
    if (a.contains("include_t")) {
      if (!a.at("include_t").is_boolean()) schema_fail("'include_t' must be a boolean");
      ansatz.include_t = a.at("include_t").get<bool>();
    }
    p.ansatz = ansatz;
  }

  if (doc.contains("simulate")) {
    const json& s = doc.at("simulate");
    if (!s.is_object()) schema_fail("'simulate' must be an object");
    expect_keys(s, "simulate", {"initial", "t0", "t1", "h", "method", "s"});
    ProblemFile::Simulate sim;
    if (!s.contains("initial")) schema_fail("missing 'initial' in simulate");
    sim.initial = get_number_list(s.at("initial"), "'initial'");
    if (sim.initial.size() != static_cast<std::size_t>(2 * p.n))
      schema_fail("'initial' must list 2n values");
    sim.t0 = get_number(s, "t0", "simulate");
    sim.t1 = get_number(s, "t1", "simulate");
    sim.h = get_number(s, "h", "simulate");
    if (!(sim.h > 0)) schema_fail("'h' must be positive");
    if (!(sim.t1 > sim.t0)) schema_fail("'t1' must exceed 't0'");
    sim.method = get_string(s, "method", "simulate");
    if (sim.method != "verlet" && sim.method != "implicit_midpoint")
      schema_fail("'method' must be \"verlet\" or \"implicit_midpoint\"");
    if (s.contains("s")) sim.s = get_number(s, "s", "simulate");
    p.simulate = sim;
  }

  if (doc.contains("base_point")) {
    p.base_point = get_number_list(doc.at("base_point"), "'base_point'");
    if (p.base_point->size() != static_cast<std::size_t>(2 * p.n))
      schema_fail("'base_point' must list 2n values");
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      schema_fail("'seed' must be a non-negative integer");
    p.seed = s.get<std::uint64_t>();
  }

  return p;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path);
}

} // namespace canonsym
