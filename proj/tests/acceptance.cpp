// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "stratpoint/verification.hpp"

#ifndef STRATPOINT_CLI
#error "STRATPOINT_CLI must name the command-line binary"
#endif

using namespace stratpoint;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " ("
            << detail << ")" << std::endl;
  if (!ok) ++failures;
}

std::string counts(const CheckResult& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.total);
  if (!r.failures.empty()) s += "; first failure: " + r.failures.front();
  return s;
}

bool exact(const CheckResult& r, std::size_t expected_total) {
  return r.ok() && r.total == expected_total;
}

std::string capture(const std::string& cmd, int& exit_code) {
  std::string out;
  exit_code = -1;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) exit_code = WEXITSTATUS(status);
  return out;
}

}  // namespace

int main() {
  const std::uint64_t seed = kDefaultSeed;
  using clock = std::chrono::steady_clock;

  {
    const auto t0 = clock::now();
    const auto r = check_code_oracle(seed, 500);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.1f s", secs);
    report(1, "code engine equals brute-force oracle on 500 jets",
           exact(r, 500) && secs < 120.0, counts(r) + ", " + t);
  }
  {
    const auto r = check_closure_identity(seed, 500);
    report(2, "closure membership <=> stationary or MFCQ violated on 1000 jets",
           exact(r, 1000), counts(r));
  }
  {
    const auto r = check_perturbation(seed, 100);
    report(3, "perturbation of 100 MF-not-SP jets lands in SP for all 6 steps",
           exact(r, 600), counts(r));
  }
  {
    const auto r = check_qp_oracle(seed, 200);
    report(4, "QP minimizer equals active-subset enumeration with exact KKT on 200 QPs",
           exact(r, 200), counts(r));
  }
  {
    const auto r = check_normal_form(seed, 100);
    report(5, "normal form round trip and unit Jacobian determinant on 100 jets",
           exact(r, 100), counts(r));
  }
  {
    const auto a = check_sp2mf_correspondence(seed, 100);
    const auto b = check_mf2sp_equivalence(seed, 20);
    report(6, "SP2MF on 100 stationary points and MF2SP grid equivalence",
           exact(a, 100) && b.ok() && b.total > 0,
           "sp2mf " + counts(a) + "; mf2sp " + counts(b));
  }
  {
    const auto r = check_boundary_trichotomy(seed, 50);
    report(7, "boundary trichotomy on 50 SQPs x 25 nodes", exact(r, 1250), counts(r));
  }
  {
    const auto r = check_grid_frontier();
    report(8, "41x41 grid: SP connected, MF is its frontier, no SP record violates MFCQ",
           r.ok(), counts(r));
  }
  {
    const auto r = check_cone_example(seed, 10000);
    report(9, "cone example closure on 10^4 jets, vertex codes, continuation breakdown",
           exact(r, 10002), counts(r));
  }
  {
    const std::string cmd = std::string("\"") + STRATPOINT_CLI + "\" verify --seed 42";
    int c1 = 0, c2 = 0;
    const std::string first = capture(cmd, c1);
    const std::string second = capture(cmd, c2);
    const bool same = !first.empty() && first == second && c1 == c2;
    report(10, "verify --seed 42 twice gives byte-identical reports", same,
           std::to_string(first.size()) + " bytes, exit codes " + std::to_string(c1) + "/" +
               std::to_string(c2));
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
