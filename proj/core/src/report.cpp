#include "medest/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "medest/enumeration.hpp"
#include "medest/errors.hpp"

namespace medest {

RelativeMoments ParameterSet::moments() const {
    RelativeMoments mom;
    mom.ybar = ybar;
    mom.mbar = mbar;
    mom.xbar = xbar;
    mom.v_ybar = v_ybar;
    mom.v_xbar = v_xbar;
    mom.v_m = v_m;
    mom.cov_ym = cov_ym;
    mom.cov_yx = cov_yx;
    return mom;
}

std::vector<ParameterSet> compute_parameter_sets(
    std::span<const Population> populations, std::span<const int> sizes,
    int workers) {
    std::vector<ParameterSet> out;
    out.reserve(populations.size() * sizes.size());
    for (const auto& pop : populations) {
        const PopulationParams params = population_params(pop);
        for (int n : sizes) {
            const DistributionSummary dist =
                exact_sampling_distribution(pop, n, workers);
            ParameterSet set;
            set.name = pop.name() + "-n" + std::to_string(n);
            set.n_units = static_cast<int>(pop.size());
            set.n = n;
            set.ybar = params.ybar;
            set.xbar = params.xbar;
            set.mbar = dist.mean_m;
            set.beta1 = params.beta1_x;
            set.rho_xy = params.rho_xy;
            set.v_ybar = dist.var_ybar;
            set.v_xbar = dist.var_xbar;
            set.v_m = dist.var_m;
            set.cov_ym = dist.cov_ym;
            set.cov_yx = dist.cov_yx;
            out.push_back(std::move(set));
        }
    }
    return out;
}

namespace {

constexpr const char* kParameterColumns[] = {
    "name", "N",  "n",      "Ybar",   "Mbar", "Xbar",   "beta1",
    "R",    "Vybar", "Vxbar", "Vm", "Cov_ym", "Cov_yx", "rho_xy",
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) {
        // Trim surrounding blanks and a stray \r.
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos
                            ? std::string()
                            : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, const char* column,
                  std::size_t lineno) {
    char* end = nullptr;
    const double value = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() ||
        !std::isfinite(value)) {
        throw parse_error(std::string("non-numeric value for column '") +
                              column + "'",
                          lineno);
    }
    return value;
}

}  // namespace

void write_parameter_csv(std::span<const ParameterSet> sets,
                         std::ostream& out) {
    for (std::size_t c = 0; c < std::size(kParameterColumns); ++c) {
        out << (c == 0 ? "" : ",") << kParameterColumns[c];
    }
    out << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& set : sets) {
        out << set.name << ',' << set.n_units << ',' << set.n << ','
            << set.ybar << ',' << set.mbar << ',' << set.xbar << ','
            << set.beta1 << ',' << set.ybar / set.mbar << ',' << set.v_ybar
            << ',' << set.v_xbar << ',' << set.v_m << ',' << set.cov_ym << ','
            << set.cov_yx << ',' << set.rho_xy << '\n';
    }
}

std::vector<ParameterSet> parse_parameter_sets(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    // Header row: column order is flexible, all columns except the
    // derived R must be present.
    std::map<std::string, std::size_t> columns;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cells = split_csv(line);
        if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
        if (!cells[0].empty() && cells[0][0] == '#') continue;
        for (std::size_t c = 0; c < cells.size(); ++c) columns[cells[c]] = c;
        break;
    }
    for (const char* name : kParameterColumns) {
        if (std::string_view(name) == "R") continue;
        if (!columns.count(name)) {
            throw parse_error(std::string("missing column '") + name +
                              "' in parameter table header");
        }
    }

    const auto cell_at = [&](const std::vector<std::string>& cells,
                             const char* column) -> const std::string& {
        const std::size_t index = columns.at(column);
        if (index >= cells.size()) {
            throw parse_error(std::string("row too short for column '") +
                                  column + "'",
                              lineno);
        }
        return cells[index];
    };

    std::vector<ParameterSet> out;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cells = split_csv(line);
        if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
        if (!cells[0].empty() && cells[0][0] == '#') continue;

        ParameterSet set;
        set.name = cell_at(cells, "name");
        if (set.name.empty()) {
            throw parse_error("empty set name", lineno);
        }
        set.n_units =
            static_cast<int>(parse_cell(cell_at(cells, "N"), "N", lineno));
        set.n = static_cast<int>(parse_cell(cell_at(cells, "n"), "n", lineno));
        if (set.n_units < 2 || set.n < 1 || set.n > set.n_units) {
            throw parse_error("inconsistent N/n pair", lineno);
        }
        set.ybar = parse_cell(cell_at(cells, "Ybar"), "Ybar", lineno);
        set.mbar = parse_cell(cell_at(cells, "Mbar"), "Mbar", lineno);
        set.xbar = parse_cell(cell_at(cells, "Xbar"), "Xbar", lineno);
        set.beta1 = parse_cell(cell_at(cells, "beta1"), "beta1", lineno);
        set.rho_xy = parse_cell(cell_at(cells, "rho_xy"), "rho_xy", lineno);
        set.v_ybar = parse_cell(cell_at(cells, "Vybar"), "Vybar", lineno);
        set.v_xbar = parse_cell(cell_at(cells, "Vxbar"), "Vxbar", lineno);
        set.v_m = parse_cell(cell_at(cells, "Vm"), "Vm", lineno);
        set.cov_ym = parse_cell(cell_at(cells, "Cov_ym"), "Cov_ym", lineno);
        set.cov_yx = parse_cell(cell_at(cells, "Cov_yx"), "Cov_yx", lineno);
        out.push_back(std::move(set));
    }
    if (out.empty()) {
        throw parse_error("parameter table has no data rows");
    }
    return out;
}

std::vector<ParameterSet> load_parameter_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open parameter file: " + path);
    }
    try {
        return parse_parameter_sets(in);
    } catch (const parse_error& err) {
        throw parse_error(path + ": " + err.what());
    }
}

namespace {

void add_weight_notes(ReportTable& table, std::span<const ParameterSet> sets,
                      std::span<const PresetId> presets) {
    if (sets.empty()) return;
    for (PresetId id : presets) {
        // Weight sums do not depend on the column's beta1/rho.
        const EstimatorSpec spec = preset(id, 1.0, 0.5);
        if (!unit_weight_sum(spec)) {
            std::ostringstream note;
            note << spec.name << ": weights sum to "
                 << spec.w0 + spec.w1 + spec.w2 << " rather than 1; values "
                 << "are reported for the estimator as defined";
            table.notes.push_back(note.str());
        }
    }
}

double mse_cell(const ParameterSet& set, PresetId id) {
    const EstimatorSpec spec = preset(id, set.beta1, set.rho_xy);
    return mse_t(set.moments(), spec);
}

}  // namespace

ReportTable table_mse(std::span<const ParameterSet> sets,
                      std::span<const PresetId> presets) {
    ReportTable table;
    table.title = "First-order MSE by estimator and parameter set";
    table.row_header = "estimator";
    table.precision = 2;
    for (const auto& set : sets) table.col_labels.push_back(set.name);
    for (PresetId id : presets) {
        table.row_labels.emplace_back(preset_name(id));
        auto& row = table.cells.emplace_back();
        for (const auto& set : sets) row.push_back(mse_cell(set, id));
    }
    table.row_labels.emplace_back("t(opt)");
    auto& opt = table.cells.emplace_back();
    for (const auto& set : sets) opt.push_back(min_mse(set.moments()));
    add_weight_notes(table, sets, presets);
    return table;
}

ReportTable table_pre(std::span<const ParameterSet> sets,
                      std::span<const PresetId> presets) {
    ReportTable table;
    table.title =
        "Percent relative efficiency vs the sample mean (100 MSE(q1)/MSE)";
    table.row_header = "estimator";
    table.precision = 2;
    for (const auto& set : sets) table.col_labels.push_back(set.name);
    for (PresetId id : presets) {
        table.row_labels.emplace_back(preset_name(id));
        auto& row = table.cells.emplace_back();
        for (const auto& set : sets) {
            row.push_back(pre_percent(set.v_ybar, mse_cell(set, id)));
        }
    }
    table.row_labels.emplace_back("t(opt)");
    auto& opt = table.cells.emplace_back();
    for (const auto& set : sets) {
        opt.push_back(pre_percent(set.v_ybar, min_mse(set.moments())));
    }
    add_weight_notes(table, sets, presets);
    return table;
}

ReportTable table_parameters(std::span<const ParameterSet> sets) {
    ReportTable table;
    table.title = "Parameter sets";
    table.row_header = "statistic";
    table.precision = 4;
    for (const auto& set : sets) table.col_labels.push_back(set.name);
    const auto add_row = [&](const char* label, auto getter) {
        table.row_labels.emplace_back(label);
        auto& row = table.cells.emplace_back();
        for (const auto& set : sets) row.push_back(getter(set));
    };
    add_row("N", [](const ParameterSet& s) { return double(s.n_units); });
    add_row("n", [](const ParameterSet& s) { return double(s.n); });
    add_row("Ybar", [](const ParameterSet& s) { return s.ybar; });
    add_row("Mbar", [](const ParameterSet& s) { return s.mbar; });
    add_row("Xbar", [](const ParameterSet& s) { return s.xbar; });
    add_row("beta1", [](const ParameterSet& s) { return s.beta1; });
    add_row("R", [](const ParameterSet& s) { return s.ybar / s.mbar; });
    add_row("Vybar", [](const ParameterSet& s) { return s.v_ybar; });
    add_row("Vxbar", [](const ParameterSet& s) { return s.v_xbar; });
    add_row("Vm", [](const ParameterSet& s) { return s.v_m; });
    add_row("Cov_ym", [](const ParameterSet& s) { return s.cov_ym; });
    add_row("Cov_yx", [](const ParameterSet& s) { return s.cov_yx; });
    add_row("rho_xy", [](const ParameterSet& s) { return s.rho_xy; });
    return table;
}

namespace {

std::string format_cell(double value, int precision) {
    if (std::isnan(value)) return "-";
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << value;
    return out.str();
}

}  // namespace

void format_text(const ReportTable& table, std::ostream& out) {
    const std::size_t rows = table.row_labels.size();
    const std::size_t cols = table.col_labels.size();

    std::vector<std::vector<std::string>> rendered(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            rendered[r].push_back(
                format_cell(table.cells[r][c], table.precision));
        }
    }

    std::size_t label_width = table.row_header.size();
    for (const auto& label : table.row_labels) {
        label_width = std::max(label_width, label.size());
    }
    std::vector<std::size_t> widths(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        widths[c] = table.col_labels[c].size();
        for (std::size_t r = 0; r < rows; ++r) {
            widths[c] = std::max(widths[c], rendered[r][c].size());
        }
    }

    if (!table.title.empty()) out << table.title << '\n';
    out << std::left << std::setw(static_cast<int>(label_width))
        << table.row_header << std::right;
    for (std::size_t c = 0; c < cols; ++c) {
        out << "  " << std::setw(static_cast<int>(widths[c]))
            << table.col_labels[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        out << std::left << std::setw(static_cast<int>(label_width))
            << table.row_labels[r] << std::right;
        for (std::size_t c = 0; c < cols; ++c) {
            out << "  " << std::setw(static_cast<int>(widths[c]))
                << rendered[r][c];
        }
        out << '\n';
    }
    for (const auto& note : table.notes) {
        out << "note: " << note << '\n';
    }
}

void format_csv(const ReportTable& table, std::ostream& out) {
    for (const auto& note : table.notes) {
        out << "# " << note << '\n';
    }
    out << table.row_header;
    for (const auto& label : table.col_labels) out << ',' << label;
    out << '\n';
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out << table.row_labels[r];
        for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
            out << ',' << format_cell(table.cells[r][c], table.precision);
        }
        out << '\n';
    }
}

void format_json(const ReportTable& table, std::ostream& out) {
    nlohmann::json doc;
    doc["title"] = table.title;
    doc["row_header"] = table.row_header;
    doc["rows"] = table.row_labels;
    doc["columns"] = table.col_labels;
    // NaN serializes as null, matching the "-" convention of the text view.
    auto& cells = doc["cells"] = nlohmann::json::array();
    for (const auto& row : table.cells) {
        nlohmann::json json_row = nlohmann::json::array();
        for (double v : row) {
            if (std::isnan(v)) {
                json_row.push_back(nullptr);
            } else {
                json_row.push_back(v);
            }
        }
        cells.push_back(std::move(json_row));
    }
    doc["notes"] = table.notes;
    out << doc.dump(2) << '\n';
}

}  // namespace medest
