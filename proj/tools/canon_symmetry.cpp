// canon-symmetry: first integrals and infinitesimal symmetries of canonical
// Hamiltonian systems. Thin front end over the canonsym C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <canonsym/canonsym.h>

namespace {

struct ReportDeleter {
  void operator()(csym_report* r) const { csym_report_free(r); }
};
struct ProblemDeleter {
  void operator()(csym_problem* p) const { csym_problem_free(p); }
};

int fail_input(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

int emit(csym_report* raw, const std::string& json_path) {
  std::unique_ptr<csym_report, ReportDeleter> report(raw);
  char* text = nullptr;
  if (csym_report_text(report.get(), &text) == CSYM_OK) {
    std::cout << text;
    csym_string_free(text);
  }
  if (!json_path.empty()) {
    char* json = nullptr;
    if (csym_report_json(report.get(), &json) != CSYM_OK)
      return fail_input(csym_last_error());
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      csym_string_free(json);
      return fail_input("cannot write " + json_path);
    }
    out << json;
    csym_string_free(json);
  }
  return csym_report_exit_code(report.get());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"first integrals and infinitesimal symmetries of canonical systems"};
  app.set_version_flag("--version", std::string(csym_version()));

  std::string command, problem_path, json_path, csv_dir;
  std::int64_t seed = -1;
  double tolerance = 0.0;
  bool use_gallery = false;

  app.add_option("command", command,
                 "verify | correspond | reconstruct | invariance | levy-cerruti | discover | "
                 "simulate | commute (optional with --gallery)");
  app.add_option("problem", problem_path, "problem file (JSON)");
  app.add_option("--json", json_path, "write the machine-readable report here");
  app.add_option("--csv", csv_dir, "write per-candidate drift series into this directory");
  app.add_option("--seed", seed, "override the problem file's probe seed");
  app.add_option("--tol", tolerance, "override the command's tolerance");
  app.add_flag("--gallery", use_gallery, "run against the shipped example set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
    app.exit(e);
    return 2;
  }

  csym_run_options opts{};
  opts.seed = seed;
  opts.tolerance = tolerance;
  opts.csv_dir = csv_dir.empty() ? nullptr : csv_dir.c_str();

  if (use_gallery) {
    if (!problem_path.empty()) return fail_input("--gallery takes no problem file");
    csym_report* report = nullptr;
    csym_status rc =
        csym_run_gallery(command.empty() ? nullptr : command.c_str(), &opts, &report);
    if (rc != CSYM_OK) return fail_input(csym_last_error());
    return emit(report, json_path);
  }

  if (command.empty()) return fail_input("a command is required (or pass --gallery)");
  if (problem_path.empty()) return fail_input("a problem file is required (or pass --gallery)");

  csym_problem* problem_raw = nullptr;
  if (csym_problem_load(problem_path.c_str(), &problem_raw) != CSYM_OK)
    return fail_input(csym_last_error());
  std::unique_ptr<csym_problem, ProblemDeleter> problem(problem_raw);

  csym_report* report = nullptr;
  csym_status rc = csym_run(problem.get(), command.c_str(), &opts, &report);
  if (rc != CSYM_OK) return fail_input(csym_last_error());
  return emit(report, json_path);
}
