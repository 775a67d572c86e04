#pragma once

#include <string>
#include <vector>

#include "persuasion/belief.hpp"

namespace persuasion {

struct ReproCheck {
    std::string name;
    bool passed = false;
    std::string details;
};

/// One plottable point: (series, x, y) as emitted in the CSV files.
struct CsvRow {
    std::string series;
    double x = 0.0;
    double y = 0.0;
};

struct ReproReport {
    std::string suite;
    std::vector<ReproCheck> checks;
    std::vector<CsvRow> figure_data;

    bool all_passed() const;
    /// Name of the first failing check, empty when everything passed.
    std::string first_failure() const;
};

const std::vector<std::string>& repro_suite_names();

/// Runs one of the named reproduction suites (example1, example2, prop2,
/// prop4, prop5, prop6); throws ValidationError for an unknown name.
ReproReport run_repro_suite(const std::string& name);

std::string render_csv(const std::vector<CsvRow>& rows);

} // namespace persuasion
