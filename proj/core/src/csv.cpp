#include "psdamp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psdamp/errors.hpp"

namespace psdamp {

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

bool Table::has(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

const std::vector<double>& Table::col(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == name) return columns[c];
    throw DataError("table: missing column " + name);
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns,
                 const std::map<std::string, std::string>& meta) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_table: header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_table: ragged columns");

    std::ofstream out(path);
    if (!out) throw DataError("csv: cannot open for writing: " + path);
    for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_double(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
    if (!out) throw DataError("csv: write failed: " + path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

} // namespace

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("csv: cannot open " + path);
    Table table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                auto trim = [](std::string s) {
                    const auto b = s.find_first_not_of(" \t#");
                    const auto e = s.find_last_not_of(" \t");
                    return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
                };
                table.meta[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
            }
            continue;
        }
        if (!have_header) {
            table.header = split_csv(line);
            table.columns.assign(table.header.size(), {});
            have_header = true;
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != table.header.size())
            throw DataError("csv: " + path + " line " + std::to_string(lineno) +
                            ": expected " + std::to_string(table.header.size()) + " cells");
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                std::size_t pos = 0;
                table.columns[c].push_back(std::stod(cells[c], &pos));
                if (pos != cells[c].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw DataError("csv: " + path + " line " + std::to_string(lineno) +
                                ": bad number '" + cells[c] + "'");
            }
        }
    }
    if (!have_header) throw DataError("csv: " + path + " has no header row");
    return table;
}

void write_series(const DiagnosticsSeries& series, const std::string& path,
                  const std::map<std::string, std::string>& extra_meta) {
    const std::vector<std::string> header = series.header();
    std::vector<std::vector<double>> cols(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) cols[c] = series.column(header[c]);
    std::map<std::string, std::string> meta = extra_meta;
    meta["I0"] = format_double(series.I0);
    meta["delta1"] = format_double(series.delta1);
    write_table(path, header, cols, meta);
}

void write_snapshot(const std::string& path, const Grid1D& grid, const FlowState& state,
                    const std::string& config_hash) {
    std::vector<double> x(grid.n_cells());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = grid.center(i);
    write_table(path, {"x", "v", "u"}, {x, state.v, state.u});

    nlohmann::json meta;
    meta["t"] = state.t;
    meta["config_hash"] = config_hash;
    std::ofstream out(path + ".meta.json");
    if (!out) throw DataError("csv: cannot open for writing: " + path + ".meta.json");
    out << meta.dump(2) << "\n";
    if (!out) throw DataError("csv: write failed: " + path + ".meta.json");
}

void write_fit_report(const std::string& path, const std::vector<FitVerdict>& verdicts) {
    std::ofstream out(path);
    if (!out) throw DataError("csv: cannot open for writing: " + path);
    out << "column,slope,r2,window_lo,window_hi,expected,tol,pass\n";
    for (const auto& v : verdicts)
        out << v.fit.column << "," << format_double(v.fit.slope) << ","
            << format_double(v.fit.r_squared) << "," << format_double(v.fit.t_lo) << ","
            << format_double(v.fit.t_hi) << "," << format_double(v.expected) << ","
            << format_double(v.tol) << "," << (v.pass ? 1 : 0) << "\n";
    if (!out) throw DataError("csv: write failed: " + path);
}

} // namespace psdamp
