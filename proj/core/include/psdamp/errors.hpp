#pragma once
// Error types shared across the library. Validation failures throw
// std::invalid_argument / std::domain_error directly; the types here carry
// extra payload (magnitudes, blow-up location) that callers report to users.

#include <stdexcept>
#include <string>
#include <vector>

namespace psdamp {

// Grid or domain too small for a field whose tail has not decayed below the
// required threshold at the boundary. Carries the offending magnitude.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double boundary_magnitude)
        : std::runtime_error(what), boundary_magnitude(boundary_magnitude) {}
    double boundary_magnitude;
};

// Positivity loss (vacuum formation) during time stepping.
class BlowupError : public std::runtime_error {
public:
    BlowupError(const std::string& what, double t, double x, std::size_t cell)
        : std::runtime_error(what), t(t), x(x), cell(cell) {}
    double t;
    double x;
    std::size_t cell;
};

// Iterative procedure failed to converge or to bracket a root.
class SolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Not enough samples/snapshots for the requested reduction.
class DataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config or CSV validation failure with the full list of violations.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations(std::move(violations)) {}
    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& line : v) {
            if (!s.empty()) s += "; ";
            s += line;
        }
        return s;
    }
};

} // namespace psdamp
