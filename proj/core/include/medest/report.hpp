#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "medest/estimators.hpp"
#include "medest/population.hpp"
#include "medest/theory.hpp"

namespace medest {

/// One study column: a named population/sample-size pair together with the
/// exact moments every downstream formula consumes. These rows either come
/// out of enumeration (compute_parameter_sets) or from a previously saved
/// CSV (parse_parameter_sets), and the two round-trip.
struct ParameterSet {
    std::string name;       // e.g. "pop1-n3"
    int n_units = 0;        // population size N
    int n = 0;              // sample size
    double ybar = 0.0;
    double mbar = 0.0;      // mean of the exact sample-median distribution
    double xbar = 0.0;
    double beta1 = 0.0;     // skewness of x, fills catalog a/b slots
    double rho_xy = 0.0;    // corr(x, y), fills catalog a/b slots
    double v_ybar = 0.0;
    double v_xbar = 0.0;
    double v_m = 0.0;
    double cov_ym = 0.0;
    double cov_yx = 0.0;

    RelativeMoments moments() const;
};

/// Enumerates each population at each sample size. Column names are
/// "<population>-n<k>" so a run over two populations and n in {3, 5} yields
/// four columns in input order (populations outer, sizes inner).
std::vector<ParameterSet> compute_parameter_sets(
    std::span<const Population> populations, std::span<const int> sizes,
    int workers = 1);

/// CSV with one header line and one row per set. Values are written with
/// enough digits that a write/parse round trip reproduces every field to
/// full double precision.
void write_parameter_csv(std::span<const ParameterSet> sets,
                         std::ostream& out);
std::vector<ParameterSet> parse_parameter_sets(std::istream& in);
std::vector<ParameterSet> load_parameter_file(const std::string& path);

/// Rectangular labelled table, the common currency of the CLI: rows are
/// estimators, columns are parameter sets (or statistic names). NaN cells
/// render as "-" (estimator not defined / not applicable there).
struct ReportTable {
    std::string title;
    std::string row_header;                 // label above the row-name column
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> cells; // [row][col]
    std::vector<std::string> notes;
    int precision = 4;
};

void format_text(const ReportTable& table, std::ostream& out);
void format_csv(const ReportTable& table, std::ostream& out);
void format_json(const ReportTable& table, std::ostream& out);

/// First-order MSE of every given estimator (rows) on every parameter set
/// (columns). Estimator specs are materialized per column because the
/// catalog a/b slots depend on each column's beta1/rho. The extra final row
/// "t(opt)" reports the attainable minimum V(ybar)(1 - corr^2). Weight sums
/// far from 1 are flagged in notes rather than rejected.
ReportTable table_mse(std::span<const ParameterSet> sets,
                      std::span<const PresetId> presets);

/// Percent relative efficiency against the plain mean per column:
/// 100 * V(ybar) / MSE(row). Same layout as table_mse.
ReportTable table_pre(std::span<const ParameterSet> sets,
                      std::span<const PresetId> presets);

/// The parameter sets themselves as a display table (statistics as rows,
/// sets as columns) -- the study's population-description table.
ReportTable table_parameters(std::span<const ParameterSet> sets);

}  // namespace medest
