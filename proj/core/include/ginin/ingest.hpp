#pragma once

#include <istream>
#include <string>
#include <vector>

#include "ginin/quantile.hpp"

namespace ginin {

struct Bracket {
  double p_lo = 0.0;
  double p_hi = 0.0;
  double avg = 0.0;
};

// Percentile-bracket distribution for one (entity, year): brackets partition
// [0,1] with nondecreasing bracket means.
struct GroupedDistribution {
  std::string entity;
  int year = 0;
  std::vector<Bracket> brackets;
  bool nonmonotone_flagged = false;  // set when --allow-nonmonotone reordered levels

  double mean() const;
};

struct ParseOptions {
  // When true, rows whose bracket means decrease are kept with the levels
  // sorted and the group flagged instead of raising an error.
  bool allow_nonmonotone = false;
};

struct ParseResult {
  std::vector<GroupedDistribution> groups;  // sorted by (entity, year)
  std::vector<std::string> warnings;
};

// Strict CSV reader for the schema `entity,year,p_lo,p_hi,avg` (exact header,
// '.' decimal point). Rows belonging to one (entity, year) may appear in any
// order. Throws std::domain_error with the offending line number on malformed
// rows and on partition gaps/overlaps.
ParseResult parse_percentile_csv(std::istream& source, const ParseOptions& options = {});

// Degenerate-within-bracket step quantile: breakpoints at bracket edges,
// levels at bracket means. Mean preserved exactly.
StepQuantile to_step_quantile(const GroupedDistribution& g);

// Share of the total held by the richest alpha fraction: 1 - L(1 - alpha).
double top_share(const GroupedDistribution& g, double alpha);

struct PanelRow {
  std::string entity;
  int year = 0;
  std::vector<double> gc;      // one per requested order
  std::vector<double> shares;  // one per requested alpha
  std::string error;           // nonempty when this row failed
};

struct PanelTable {
  std::vector<int> orders;
  std::vector<double> share_alphas;
  std::vector<PanelRow> rows;

  // Fixed column order: entity,year,gc_<n>...,top_<100*alpha>...; numbers at
  // nine significant digits. Failed rows are skipped (their messages stay in
  // the row objects).
  std::string to_csv() const;
};

// One row per (entity, year). Per-row failures are collected in the row's
// error field; the remaining rows are still computed.
PanelTable gini_panel(const std::vector<GroupedDistribution>& data, const std::vector<int>& orders,
                      const std::vector<double>& share_alphas);

}  // namespace ginin
