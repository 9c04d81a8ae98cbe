#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtorsion/cech.hpp"
#include "dtorsion/group.hpp"
#include "dtorsion/orbifold.hpp"

namespace dtorsion {

inline constexpr int kReportVersion = 1;

/// Ordered key/value fields plus named tables. Values are scalars, strings or
/// integer arrays; insertion order is the output order in both formats.
struct Report {
  using Value = nlohmann::ordered_json;

  struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
  };

  std::string command;
  std::vector<std::pair<std::string, Value>> fields;
  std::vector<Table> tables;
  bool passed = true;  // false when a verification in the report failed

  void field(std::string key, Value value) { fields.emplace_back(std::move(key), std::move(value)); }
  Table& table(std::string name, std::vector<std::string> columns);

  /// `key<TAB>value` lines, then per table a `# name` line, a header row and
  /// tab-separated rows.
  std::string text() const;
  /// {"format": "dtorsion-report", "version": 1, "command", "passed", "fields", "tables"}.
  std::string json() const;
};

struct ReportOptions {
  std::string command;
  int degree = 2;
  bool zn = false;  // Z/N coefficients instead of U(1)
  std::optional<std::int64_t> modulus;
  std::optional<std::int64_t> class_index;
  bool quotient_conjugation = false;
  bool emit_matrices = false;
};

Report report_info(const GroupPtr& g, const ReportOptions& o);
Report report_cohomology(const GroupPtr& g, const ReportOptions& o);
Report report_cocycles(const GroupPtr& g, const ReportOptions& o);
Report report_phases(const GroupPtr& g, const ReportOptions& o);
Report report_partition(const GroupPtr& g, const ReportOptions& o);
Report report_membrane(const GroupPtr& g, const ReportOptions& o);
Report report_projrep(const GroupPtr& g, const ReportOptions& o);
Report report_euler(const GComplex& x, const ReportOptions& o);
Report report_inertia(const GComplex& x, const ReportOptions& o);
Report report_cech_verify(const CechDocument& doc, const ReportOptions& o);
/// Difference of the equivariant structures of two documents over the same
/// site and cocycles.
Report report_cech_diff(const CechDocument& a, const CechDocument& b, const ReportOptions& o);

}  // namespace dtorsion
