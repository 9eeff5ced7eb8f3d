#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qnet {

/// Numeric table with named columns; the interchange type behind the CSV
/// outputs. NaN cells serialize as "na" (not-applicable marker).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& name) const;  // throws missing-column
    bool has_col(const std::string& name) const;
    double at(std::size_t row, const std::string& name) const;
};

/// CSV with '.' decimal separator and 10 significant digits, locale-free.
void write_csv(std::ostream& os, const Table& t);
std::string to_csv(const Table& t);
Table read_csv(std::istream& is);

std::string format_g10(double v);

enum class CollapseMode { kmed };

/// Appends the universal-curve columns k_over_rho = <k>/rho and
/// ln_n_over_rho = ln(n/rho); input columns are left untouched.
Table data_collapse(const Table& t, CollapseMode mode);

}  // namespace qnet
