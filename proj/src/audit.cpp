#include "qumbral/audit.hpp"

#include <algorithm>

namespace qumbral {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::verified:
      return "verified";
    case Status::falsified:
      return "falsified";
    case Status::variant_resolved:
      return "variant-resolved";
  }
  return "unknown";
}

bool AuditVerdict::stable() const {
  return std::all_of(per_q.begin(), per_q.end(), [&](const QStatus& s) { return s.status == per_q.front().status; });
}

VerdictBuilder::VerdictBuilder(std::string identity, std::optional<std::string> variant) {
  v_.identity = std::move(identity);
  v_.variant = std::move(variant);
}

void VerdictBuilder::note_q(const Rational& q, bool holds) {
  auto it = std::find_if(v_.per_q.begin(), v_.per_q.end(), [&](const QStatus& s) { return s.q == q; });
  if (it == v_.per_q.end()) {
    v_.per_q.push_back({q, holds ? Status::verified : Status::falsified});
  } else if (!holds) {
    it->status = Status::falsified;
  }
}

void VerdictBuilder::record(const Rational& q, int n, std::optional<int> m, bool holds, const std::string& lhs,
                            const std::string& rhs, const std::string& detail) {
  GridCell cell{q, n, m};
  if (v_.grid.empty() || !(v_.grid.back() == cell)) {
    if (std::find(v_.grid.begin(), v_.grid.end(), cell) == v_.grid.end()) v_.grid.push_back(cell);
  }
  note_q(q, holds);
  if (!holds) {
    v_.status = Status::falsified;
    if (!v_.counterexample) v_.counterexample = Counterexample{q, n, m, lhs, rhs, detail};
  }
}

void VerdictBuilder::compare(const Rational& q, int n, std::optional<int> m, const Rational& lhs,
                             const Rational& rhs, const std::string& detail) {
  record(q, n, m, lhs == rhs, lhs.to_string(), rhs.to_string(), detail);
}

void VerdictBuilder::absorb(const AuditVerdict& v) {
  for (const auto& cell : v.grid) {
    if (std::find(v_.grid.begin(), v_.grid.end(), cell) == v_.grid.end()) v_.grid.push_back(cell);
  }
  for (const auto& s : v.per_q) note_q(s.q, s.status == Status::verified);
  if (v.status != Status::verified) {
    v_.status = Status::falsified;
    if (!v_.counterexample && v.counterexample) v_.counterexample = v.counterexample;
  }
}

AuditVerdict VerdictBuilder::finish() const { return v_; }

}  // namespace qumbral
