#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniflab/problem.hpp"

namespace uniflab {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int mismatches = 0;
  int skipped = 0;  // oracle ran out of budget; not counted either way
  double elapsed_ms = 0;
  std::string first_failure;  // replayable problem file text

  bool ok() const { return mismatches == 0; }
};

struct TimingRow {
  int size = 0;
  double ms = 0;
};

struct CrosscheckOptions {
  std::uint64_t seed = 1;
  int reduction_cases = 200;
  int agreement_cases = 500;
  bool inject_bug = false;  // sanity mode: must be detected as mismatches
  bool timing = false;      // also run the scaling tables
};

struct CrosscheckReport {
  std::vector<SuiteResult> suites;
  std::vector<TimingRow> gauss_scaling;       // polynomial backend
  double gauss_fit_degree = 0;                // log-log slope
  std::vector<TimingRow> search_scaling;      // exponential ground search
  bool bug_detected = false;                  // inject_bug mode only

  bool ok() const {
    for (const SuiteResult& s : suites)
      if (!s.ok()) return false;
    return true;
  }
};

CrosscheckReport run_crosscheck(const CrosscheckOptions& opt);

// Individual suites, also used by the acceptance tests.
SuiteResult suite_reduction_3sat(std::uint64_t seed, int cases, int max_vars,
                                 int max_clauses);
SuiteResult suite_reduction_coloring(std::uint64_t seed, int cases,
                                     int max_verts);
SuiteResult suite_reduction_nae(std::uint64_t seed, int cases, int max_vars);
SuiteResult suite_agreement_asym(std::uint64_t seed, int cases, Theory theory);
SuiteResult suite_agreement_xor(std::uint64_t seed, int cases,
                                bool inject_bug = false);
SuiteResult suite_agreement_acunh_ground(std::uint64_t seed, int cases);
SuiteResult suite_agreement_acunh_automata(std::uint64_t seed, int cases);
SuiteResult suite_backend_cross(std::uint64_t seed, int cases);

std::vector<TimingRow> timing_gauss(const std::vector<int>& sizes,
                                    std::uint64_t seed);
double fit_loglog_degree(const std::vector<TimingRow>& rows);
std::vector<TimingRow> timing_ground_search(int min_verts, int max_verts);

}  // namespace uniflab
