#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace canonsym {

/// Parsed problem file. Expression fields stay as source strings; they are
/// validated against the declared dimension on load.
struct ProblemFile {
  std::string label;

  int n = 0;
  std::string hamiltonian;

  struct Candidate {
    std::string name;
    std::string expression;
  };
  std::vector<Candidate> candidates;

  struct FieldSpec {
    std::string name;
    std::vector<std::string> xi, pi;
  };
  std::vector<FieldSpec> fields;

  struct Ansatz {
    int degree = 0;
    bool include_t = false;
  };
  std::optional<Ansatz> ansatz;

  struct Simulate {
    std::vector<double> initial;
    double t0 = 0.0;
    double t1 = 10.0;
    double h = 1e-3;
    std::string method = "verlet";
    double s = 0.1; // symmetry-flow parameter for the commute command
  };
  std::optional<Simulate> simulate;

  std::optional<std::vector<double>> base_point;
  std::uint64_t seed = 1;
};

/// Strict schema validation: unknown keys, wrong types, inconsistent lengths
/// and unparsable expressions all raise SchemaError (with the offending
/// context in the message).
ProblemFile parse_problem_text(const std::string& json_text, const std::string& label);
ProblemFile load_problem_file(const std::string& path);

} // namespace canonsym
