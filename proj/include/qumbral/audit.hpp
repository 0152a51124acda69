#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qumbral/rational.hpp"

namespace qumbral {

enum class Status { verified, falsified, variant_resolved };
std::string_view to_string(Status s);

struct GridCell {
  Rational q;
  int n = 0;
  std::optional<int> m;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// The first failing cell of an audit, with both sides rendered exactly.
struct Counterexample {
  Rational q;
  int n = 0;
  std::optional<int> m;
  std::string lhs;
  std::string rhs;
  std::string detail;  // which instance inside the cell, e.g. "k=0" or "p=1"
};

struct QStatus {
  Rational q;
  Status status = Status::verified;
};

/// Outcome of checking one identity (or one variant of it) on a grid.
/// A falsified verdict always carries a counterexample.
struct AuditVerdict {
  std::string identity;
  std::optional<std::string> variant;
  Status status = Status::verified;
  std::vector<GridCell> grid;
  std::optional<Counterexample> counterexample;
  std::vector<QStatus> per_q;

  /// Every q in the grid reached the same verdict.
  bool stable() const;
  bool verified() const { return status == Status::verified; }
};

/// Accumulates cell results into a verdict. Cells are kept in insertion
/// order, so the reported counterexample is the first failure encountered.
class VerdictBuilder {
 public:
  VerdictBuilder(std::string identity, std::optional<std::string> variant = std::nullopt);

  /// Records one checked instance. Equal consecutive cells collapse into one
  /// grid entry.
  void record(const Rational& q, int n, std::optional<int> m, bool holds, const std::string& lhs,
              const std::string& rhs, const std::string& detail = {});
  /// Convenience for exact comparisons of rationals.
  void compare(const Rational& q, int n, std::optional<int> m, const Rational& lhs, const Rational& rhs,
               const std::string& detail = {});
  void absorb(const AuditVerdict& v);

  AuditVerdict finish() const;

 private:
  void note_q(const Rational& q, bool holds);

  AuditVerdict v_;
};

}  // namespace qumbral
