#pragma once

// Flat, serializable view of a verdict: JSON (lossless round trip) and CSV.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latmass/bruinier.hpp"

namespace latmass {

struct Annotation {
  std::int64_t d = 0;
  std::int64_t D = 0;
  std::string status;
  std::string source;
  std::string note;
  std::string provenance;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Static table of published results, keyed by d.
const std::vector<Annotation>& known_results();
std::vector<Annotation> annotations_for(std::int64_t d);

struct ClassRecord {
  std::vector<std::int64_t> subset;
  std::int64_t e_prime = 1;
  std::int64_t d_e = 1;
  std::int64_t norm = 0;
  std::int64_t comp_det = 0;
  int multiplicity = 1;
  int max_conjugates = 1;
  bool exists = true;
  std::vector<std::string> reasons;
  std::optional<Rational> volume;
  std::optional<std::string> exactness;
  Rational max_volume;

  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

struct LRecord {
  Rational B2chi;
  Rational q;
  Rational zetaKm1;
  std::string lvalue;

  friend bool operator==(const LRecord&, const LRecord&) = default;
};

struct ReportRecord {
  std::int64_t d = 0;
  std::int64_t D = 0;
  int residue = 0;
  std::string mode;
  std::string outcome;
  Rational K;
  bool k_integer = false;
  bool k_even = false;
  std::optional<std::int64_t> k_at_most;
  Rational lhs_unit;
  Rational lhs_bound_coeff;
  std::int64_t lhs_bound_radicand = 1;
  Rational rhs;
  std::string rhs_exactness;
  Rational class_volume_sum;
  std::string witness;
  LRecord ldata;
  std::vector<ClassRecord> classes;
  std::vector<Annotation> annotations;

  bool feasible() const { return outcome != "NotFree"; }

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

ReportRecord make_record(const Verdict& v);

void to_json(nlohmann::json& j, const ReportRecord& r);
void from_json(const nlohmann::json& j, ReportRecord& r);

/// Fixed column list; see docs/report-schema.md.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const ReportRecord& r);

/// "survivors: residue 1 {5, 13, 21}; residue 2 {2, 6}; residue 3 {3}; all {2, 3, 5, 6, 13, 21}"
std::string survivor_summary(const std::vector<ReportRecord>& records);

}  // namespace latmass
