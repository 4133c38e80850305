#include "ginin/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ginin/gini.hpp"

namespace ginin {

double GroupedDistribution::mean() const {
  double total = 0.0;
  for (const auto& b : brackets) total += b.avg * (b.p_hi - b.p_lo);
  return total;
}

namespace {

[[noreturn]] void row_error(std::size_t line, const std::string& message) {
  std::ostringstream os;
  os << "percentile csv, line " << line << ": " << message;
  throw std::domain_error(os.str());
}

double parse_number(const std::string& field, std::size_t line, const char* what) {
  std::size_t consumed = 0;
  double value;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    row_error(line, std::string("cannot parse ") + what + " from '" + field + "'");
  }
  if (consumed != field.size()) {
    row_error(line, std::string("trailing characters in ") + what + " '" + field + "'");
  }
  return value;
}

std::vector<std::string> split_fields(const std::string& row) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = row.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(row.substr(start));
      break;
    }
    fields.push_back(row.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

ParseResult parse_percentile_csv(std::istream& source, const ParseOptions& options) {
  std::string line;
  std::size_t line_number = 0;
  if (!std::getline(source, line)) {
    throw std::domain_error("percentile csv: empty input, expected a header row");
  }
  ++line_number;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "entity,year,p_lo,p_hi,avg") {
    throw std::domain_error("percentile csv: header must be exactly 'entity,year,p_lo,p_hi,avg'");
  }

  std::map<std::pair<std::string, int>, std::vector<Bracket>> grouped;
  while (std::getline(source, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      row_error(line_number, "expected 5 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) row_error(line_number, "entity must be nonempty");
    const double year_value = parse_number(fields[1], line_number, "year");
    if (year_value != std::floor(year_value)) row_error(line_number, "year must be an integer");
    Bracket bracket;
    bracket.p_lo = parse_number(fields[2], line_number, "p_lo");
    bracket.p_hi = parse_number(fields[3], line_number, "p_hi");
    bracket.avg = parse_number(fields[4], line_number, "avg");
    if (!(bracket.p_lo >= 0.0 && bracket.p_hi <= 1.0 && bracket.p_lo < bracket.p_hi)) {
      row_error(line_number, "bracket fractions must satisfy 0 <= p_lo < p_hi <= 1");
    }
    if (!std::isfinite(bracket.avg)) row_error(line_number, "avg must be finite");
    grouped[{fields[0], static_cast<int>(year_value)}].push_back(bracket);
  }

  ParseResult result;
  for (auto& [key, brackets] : grouped) {
    std::sort(brackets.begin(), brackets.end(),
              [](const Bracket& a, const Bracket& b) { return a.p_lo < b.p_lo; });
    GroupedDistribution g;
    g.entity = key.first;
    g.year = key.second;

    const auto describe = [&](const char* what, double at) {
      std::ostringstream os;
      os << "percentile csv: " << what << " at p = " << at << " for entity '" << g.entity
         << "', year " << g.year;
      return os.str();
    };
    if (brackets.front().p_lo != 0.0) {
      throw std::domain_error(describe("partition does not start at 0; gap", 0.0));
    }
    if (brackets.back().p_hi != 1.0) {
      throw std::domain_error(describe("partition does not reach 1; gap", brackets.back().p_hi));
    }
    for (std::size_t i = 1; i < brackets.size(); ++i) {
      const double boundary = brackets[i - 1].p_hi;
      if (brackets[i].p_lo > boundary) {
        throw std::domain_error(describe("gap between brackets", boundary));
      }
      if (brackets[i].p_lo < boundary) {
        throw std::domain_error(describe("overlapping brackets", brackets[i].p_lo));
      }
    }

    bool monotone = true;
    for (std::size_t i = 1; i < brackets.size(); ++i) {
      if (brackets[i].avg < brackets[i - 1].avg) {
        monotone = false;
        break;
      }
    }
    if (!monotone) {
      if (!options.allow_nonmonotone) {
        throw std::domain_error(describe("bracket means decrease", 0.0) +
                                " (rerun with --allow-nonmonotone to sort and keep the row)");
      }
      std::vector<double> levels;
      levels.reserve(brackets.size());
      for (const auto& b : brackets) levels.push_back(b.avg);
      std::sort(levels.begin(), levels.end());
      for (std::size_t i = 0; i < brackets.size(); ++i) brackets[i].avg = levels[i];
      g.nonmonotone_flagged = true;
      std::ostringstream os;
      os << "entity '" << g.entity << "', year " << g.year
         << ": nonmonotone bracket means sorted into quantile order";
      result.warnings.push_back(os.str());
    }
    g.brackets = std::move(brackets);
    result.groups.push_back(std::move(g));
  }
  return result;
}

StepQuantile to_step_quantile(const GroupedDistribution& g) {
  if (g.brackets.empty()) throw std::domain_error("to_step_quantile: no brackets");
  std::vector<double> breakpoints;
  std::vector<double> levels;
  breakpoints.reserve(g.brackets.size() + 1);
  levels.reserve(g.brackets.size());
  breakpoints.push_back(0.0);
  for (const auto& b : g.brackets) {
    breakpoints.push_back(b.p_hi);
    levels.push_back(b.avg);
  }
  return StepQuantile(std::move(breakpoints), std::move(levels));
}

double top_share(const GroupedDistribution& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("top_share: alpha must lie in (0,1)");
  const StepQuantile q = to_step_quantile(g);
  return 1.0 - lorenz(q, 1.0 - alpha);
}

namespace {

std::string significant_digits(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", v);
  return buffer;
}

std::string share_column_name(double alpha) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "top_%g", alpha * 100.0);
  return buffer;
}

}  // namespace

std::string PanelTable::to_csv() const {
  std::ostringstream os;
  os << "entity,year";
  for (int n : orders) os << ",gc_" << n;
  for (double alpha : share_alphas) os << ',' << share_column_name(alpha);
  os << '\n';
  for (const auto& row : rows) {
    if (!row.error.empty()) continue;
    os << row.entity << ',' << row.year;
    for (double v : row.gc) os << ',' << significant_digits(v);
    for (double v : row.shares) os << ',' << significant_digits(v);
    os << '\n';
  }
  return os.str();
}

PanelTable gini_panel(const std::vector<GroupedDistribution>& data, const std::vector<int>& orders,
                      const std::vector<double>& share_alphas) {
  PanelTable table;
  table.orders = orders;
  table.share_alphas = share_alphas;
  table.rows.reserve(data.size());
  for (const auto& g : data) {
    PanelRow row;
    row.entity = g.entity;
    row.year = g.year;
    try {
      const StepQuantile q = to_step_quantile(g);
      row.gc.reserve(orders.size());
      for (int n : orders) row.gc.push_back(gc_n(q, GiniOrder(n)));
      row.shares.reserve(share_alphas.size());
      for (double alpha : share_alphas) row.shares.push_back(top_share(g, alpha));
    } catch (const std::exception& e) {
      row.error = e.what();
      row.gc.clear();
      row.shares.clear();
    }
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const PanelRow& a, const PanelRow& b) {
    if (a.entity != b.entity) return a.entity < b.entity;
    return a.year < b.year;
  });
  return table;
}

}  // namespace ginin
