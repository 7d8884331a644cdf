#pragma once
// CSV emission and ingestion. Numeric cells use shortest round-trip
// formatting so emitted files reload bit-identically. Comment lines of the
// form "# key = value" carry scalar metadata (config hash, I0, delta1).

#include <map>
#include <string>
#include <vector>

#include "psdamp/diagnostics.hpp"
#include "psdamp/models.hpp"

namespace psdamp {

struct Table {
    std::map<std::string, std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // columns[c][row]

    bool has(const std::string& name) const;
    const std::vector<double>& col(const std::string& name) const;  // DataError if absent
    std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

std::string format_double(double x);

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns,
                 const std::map<std::string, std::string>& meta = {});

Table read_table(const std::string& path);

// DiagnosticsSeries with I0/delta1 carried as metadata.
void write_series(const DiagnosticsSeries& series, const std::string& path,
                  const std::map<std::string, std::string>& extra_meta = {});

// Snapshot with header x,v,u plus a JSON sidecar <path>.meta.json holding
// the time and config hash.
void write_snapshot(const std::string& path, const Grid1D& grid, const FlowState& state,
                    const std::string& config_hash);

// Decay-fit verdicts: column,slope,r2,window_lo,window_hi,pass.
struct FitVerdict {
    DecayFit fit;
    double expected = 0.0;
    double tol = 0.0;
    bool pass = false;
};

void write_fit_report(const std::string& path, const std::vector<FitVerdict>& verdicts);

} // namespace psdamp
