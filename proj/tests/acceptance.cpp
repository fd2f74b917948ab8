// Acceptance runner: one PASS/FAIL line per criterion. Criteria 1-9 are read
// from the verification suites at their default sizes and seed; criterion 10
// runs `ckspace verify` twice and compares the output bytes.
//
// usage: acceptance PATH_TO_CKSPACE

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckspace/verify.hpp"

using namespace ckspace;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Worst value over the named checks (all checks when `names` is empty).
Outcome from_checks(const SuiteReport& r, const std::vector<std::string>& names) {
  Outcome o{true, ""};
  std::size_t counted = 0;
  std::vector<std::string> failed;
  for (const auto& c : r.checks) {
    bool wanted = names.empty();
    for (const auto& n : names) wanted = wanted || c.name == n;
    if (!wanted) continue;
    ++counted;
    if (!c.pass()) {
      o.pass = false;
      failed.push_back(c.name + (c.space.empty() ? "" : "/" + c.space) + (c.context.empty() ? "" : " [" + c.context + "]") +
                       " = " + fmt(c.value));
    }
  }
  if (counted == 0) return {false, "no checks found"};
  std::ostringstream os;
  os << counted << " checks";
  const std::vector<std::string> show = names.empty() ? std::vector<std::string>{""} : names;
  for (const auto& n : show) {
    os << (n.empty() ? ", worst " : ", " + n + " worst ") << fmt(r.worst(n));
  }
  for (std::size_t i = 0; i < failed.size() && i < 5; ++i) os << "\n    failed: " << failed[i];
  if (failed.size() > 5) os << "\n    ... " << failed.size() - 5 << " more";
  o.detail = os.str();
  return o;
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism(const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() / ("ckspace_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path a = dir / "verify_a.json";
  const fs::path b = dir / "verify_b.json";
  const std::string base = cli + " verify --suite all --seed 20261019 --out ";
  const int ca = run(base + a.string() + " 2>/dev/null");
  const int cb = run(base + b.string() + " 2>/dev/null");
  const std::string ta = slurp(a);
  const std::string tb = slurp(b);
  fs::remove_all(dir);
  if (ca < 0 || ca > 1 || cb < 0 || cb > 1) return {false, "verify exited with " + std::to_string(ca) + ", " + std::to_string(cb)};
  if (ta.empty()) return {false, "verify wrote no output"};
  if (!nlohmann::json::accept(ta)) return {false, "verify output is not JSON"};
  const bool same = ta == tb && ca == cb;
  return {same, std::to_string(ta.size()) + " bytes, " + (same ? "identical" : "different") +
                    " (exit " + std::to_string(ca) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance PATH_TO_CKSPACE\n";
    return 2;
  }
  const std::string cli = argv[1];
  const VerifyOptions opt;

  const SuiteReport brackets = run_suite(Suite::Brackets, opt);
  const SuiteReport casimir = run_suite(Suite::Casimir, opt);

  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> eval;
  };
  const std::vector<Criterion> criteria = {
      {1, "bracket relations < 1e-9", [&] { return from_checks(brackets, {"bracket_residual"}); }},
      {2, "Casimir commutes with the generators < 1e-9",
       [&] { return from_checks(casimir, {"casimir_commutator"}); }},
      {3, "closed-form Casimir vs composed Casimir < 1e-10", [&] { return from_checks(casimir, {"dual_path"}); }},
      {4, "energy and Casimir drift < 1e-6 over t in [0, 10]",
       [&] { return from_checks(run_suite(Suite::Conservation, opt), {"energy_drift", "casimir_drift"}); }},
      {5, "closed-form trajectories, conic residual, fiber constancy",
       [&] { return from_checks(run_suite(Suite::Oracle, opt), {}); }},
      {6, "base/fiber split vs hand-coded Hamiltonians < 1e-12",
       [&] { return from_checks(run_suite(Suite::Split, opt), {}); }},
      {7, "H_super gcos(k1, r) = H_integrable < 1e-13",
       [&] { return from_checks(run_suite(Suite::Superintegrable, opt), {}); }},
      {8, "chart round trip, sphere curvature, Galilei metric",
       [&] {
         return from_checks(run_suite(Suite::Geometry, opt),
                            {"chart_round_trip", "curvature_closed_form", "galilei_metric"});
       }},
      {9, "kappa continuity < 1e-5", [&] { return from_checks(run_suite(Suite::Continuity, opt), {}); }},
      {10, "verify JSON byte-identical across runs", [&] { return determinism(cli); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const Outcome o = c.eval();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "  (" << o.detail
              << ")\n"
              << std::flush;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
