// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "offshell/error.hpp"
#include "offshell/parallel.hpp"
#include "offshell/verify.hpp"

using namespace offshell;

namespace {

struct Criterion {
  const char* id;
  std::vector<std::string> parts;  // check criterion tags
  const char* suite;
  double max_seconds;
  const char* title;
};

const std::vector<Criterion> kCriteria = {
    {"1", {"1"}, "identities", 10.0, "I(a,b) sum rules and quadrature"},
    {"2", {"2"}, "identities", 30.0, "Abel-regularised Bessel identity"},
    {"3", {"3"}, "routes", 5.0, "K5 route reconciliation"},
    {"4", {"4a", "4b"}, "routes", 300.0, "published-form discrepancies"},
    {"5", {"5"}, "routes", 300.0, "Klein-Gordon mass route"},
    {"6", {"6"}, "oracle", 1800.0, "Fourier oracle adjudication"},
    {"7", {"7"}, "pde", 600.0, "Green property of the retarded kernel"},
};

// Small but complete configuration for the determinism check.
VerifyConfig determinism_config() {
  VerifyConfig c;
  c.n_random = 200;
  c.n_pairs = 12;
  c.quad.grid = 64;
  c.pde_n = 24;
  c.pde_refine = false;
  return c;
}

std::string run_json(const std::string& suite, const VerifyConfig& cfg) {
  try {
    return run_suite(suite, cfg).to_json(cfg);
  } catch (const Error& e) {
    return std::string("error: ") + e.what();
  }
}

}  // namespace

int main() {
  const VerifyConfig cfg;
  std::map<std::string, SuiteReport> reports;
  std::map<std::string, std::string> aborted;
  for (const auto& name : suite_names()) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      reports[name] = run_suite(name, cfg);
    } catch (const Error& e) {
      aborted[name] = e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("# suite %-10s %8.2f s\n", name.c_str(), dt);
    if (reports.count(name)) std::fputs(reports[name].table().c_str(), stdout);
  }

  bool all = true;
  std::printf("\n");
  for (const auto& c : kCriteria) {
    bool ok = !aborted.count(c.suite);
    double seconds = 0.0;
    std::string why = ok ? "" : "suite aborted: " + aborted[c.suite];
    std::size_t n = 0;
    if (ok) {
      for (const auto& ch : reports[c.suite].checks) {
        bool mine = false;
        for (const auto& p : c.parts) mine = mine || ch.criterion == p;
        if (!mine) continue;
        ++n;
        seconds += ch.seconds;
        if (!ch.passed) {
          ok = false;
          why += "[" + ch.criterion + "] " + ch.name + " ";
        }
      }
      if (n == 0) {
        ok = false;
        why = "no checks recorded";
      }
      if (seconds > c.max_seconds) {
        ok = false;
        why += "runtime over " + std::to_string(static_cast<int>(c.max_seconds)) + " s ";
      }
    }
    all = all && ok;
    std::printf("%s  criterion %s  %-40s %8.2f s  %s\n", ok ? "PASS" : "FAIL", c.id, c.title, seconds,
                why.c_str());
  }

  const auto dc = determinism_config();
  bool same = true;
  std::string diff;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : suite_names()) {
    set_thread_count(1);
    const std::string a = run_json(name, dc);
    const std::string b = run_json(name, dc);
    set_thread_count(3);
    const std::string c = run_json(name, dc);
    set_thread_count(0);
    if (a != b || a != c) {
      same = false;
      diff += name + " ";
    }
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  all = all && same;
  std::printf("%s  criterion 8  %-40s %8.2f s  %s\n", same ? "PASS" : "FAIL",
              "byte-identical reports at 1 and 3 threads", dt,
              same ? "" : ("differs: " + diff).c_str());
  return all ? 0 : 1;
}
