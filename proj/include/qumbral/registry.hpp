#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qumbral/appell.hpp"
#include "qumbral/audit.hpp"

namespace qumbral {

struct AuditConfig {
  std::vector<Rational> q_grid = default_q_grid();
  int nmax = 10;
  int mmax = 3;
  int margin = 4;
  int instances = 30;  // random instances per property and q
  std::uint64_t seed = 20240611;
  int threads = 0;  // 0: hardware concurrency

  int truncation() const { return nmax + mmax + margin; }
  static std::vector<Rational> default_q_grid();
};

/// Families for every q of a grid, shared by concurrent audits.
class Workspace {
 public:
  explicit Workspace(const std::vector<Rational>& q_grid);
  FamilyBook& book(const Rational& q);

 private:
  std::map<Rational, std::unique_ptr<FamilyBook>> books_;
};

/// Inputs of one identity audit at one q.
struct AuditScope {
  const Ctx& ctx;
  FamilyBook& book;
  const AuditConfig& cfg;
  std::mt19937_64& rng;
};

struct IdentitySpec {
  std::string id;
  std::string description;
  std::function<std::vector<AuditVerdict>(AuditScope&)> run;
};

/// One identity over the whole grid: a verdict per variant, merged over q.
struct IdentityReport {
  std::string id;
  std::string description;
  Status status = Status::verified;
  std::vector<std::string> resolved_variants;  // verified variants when variant-resolved
  std::vector<AuditVerdict> verdicts;

  bool stable() const;
};

/// All audited identities, in report order.
const std::vector<IdentitySpec>& identity_registry();
const IdentitySpec* find_identity(const std::string& id);

/// Runs the selected identities (all when `ids` is empty) over the grid.
/// Work is spread over threads; results follow the order of `ids`, or the
/// registry order when `ids` is empty.
/// Throws std::invalid_argument for an unknown id.
std::vector<IdentityReport> run_audit(const AuditConfig& cfg, const std::vector<std::string>& ids = {});

/// Folds per-variant verdicts into the summary status of one identity.
IdentityReport summarize(const IdentitySpec& spec, std::vector<AuditVerdict> merged);

}  // namespace qumbral
