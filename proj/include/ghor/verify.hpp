#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ghor/central.hpp"
#include "ghor/cycles.hpp"
#include "ghor/instances.hpp"

namespace ghor {

enum class Status { Pass, Fail, Inconclusive };
const char* status_name(Status s);

struct CheckResult {
  std::string instance;
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  nlohmann::json data;
};

struct VerifyOptions {
  int degree = 0;        // 0: the instance's default sample degree
  int nmax = 4;
  int bound = 0;         // geodesic search multiple; 0: N+1
  int class_bound = 3;   // class-label check: multiples of the longest elementary cycle
  int tau_length = 4;    // tau-sufficiency: coterminal paths up to this length
  int rewrite_depth = -1;
};

// Coterminal path pairs up to max_length: equal eta labels iff equal tau labels.
// Returns the first disagreeing pair, if any, and counts the pairs compared.
struct TauSufficiency {
  std::size_t paths = 0;
  std::size_t pairs = 0;
  std::vector<std::pair<Path, Path>> disagreements;
};
TauSufficiency check_tau_sufficiency(const DimerQuiver& q, const MatchingIndex& ix, int max_length);

struct FaceLabelLaw {
  std::vector<int> bad_eta, bad_tau;  // faces whose label is not sigma
};
FaceLabelLaw check_face_labels(const DimerQuiver& q, const MatchingIndex& ix);

// Runs every module's checks on one instance and compares the results with
// its expectation table.
std::vector<CheckResult> verify_instance(const SuiteEntry& e, const VerifyOptions& opt = {});

struct SuiteReport {
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> load_errors;

  bool ok() const;
  std::size_t count(Status s) const;
  nlohmann::json to_json() const;
};

// Instances run concurrently; results keep suite order.
SuiteReport verify_suite(const LoadedSuite& suite, const VerifyOptions& opt = {});

}  // namespace ghor
