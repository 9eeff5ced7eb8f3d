#include "qnet/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "qnet/errors.hpp"

namespace qnet {

std::size_t Table::col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    fail(Errc::missing_column, name);
}

bool Table::has_col(const std::string& name) const {
    for (const auto& c : columns) {
        if (c == name) return true;
    }
    return false;
}

double Table::at(std::size_t row, const std::string& name) const { return rows[row][col(name)]; }

std::string format_g10(double v) {
    if (std::isnan(v)) return "na";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i == 0 ? "" : ",") << t.columns[i];
    }
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i == 0 ? "" : ",") << format_g10(row[i]);
        }
        os << "\n";
    }
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_cell(const std::string& cell, std::size_t lineno) {
    if (cell.empty() || cell == "na" || cell == "nan") return std::nan("");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
        fail(Errc::parse_error, "bad numeric cell '" + cell + "' on line " + std::to_string(lineno));
    }
    return v;
}

}  // namespace

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) fail(Errc::parse_error, "empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.columns = split_csv_line(line);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != t.columns.size()) {
            fail(Errc::parse_error, "row width mismatch on line " + std::to_string(lineno));
        }
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) row[i] = parse_cell(cells[i], lineno);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table data_collapse(const Table& t, CollapseMode mode) {
    if (mode != CollapseMode::kmed) fail(Errc::invalid_parameter, "unknown collapse mode");
    const std::string kcol = t.has_col("mean_degree_mean") ? "mean_degree_mean" : "mean_degree";
    const std::size_t ck = t.col(kcol);
    const std::size_t cn = t.col("n");
    const std::size_t crho = t.col("rho");
    Table out = t;
    out.columns.push_back("k_over_rho");
    out.columns.push_back("ln_n_over_rho");
    for (auto& row : out.rows) {
        const double k = row[ck];
        const double n = row[cn];
        const double rho = row[crho];
        row.push_back(k / rho);
        row.push_back(std::log(n / rho));
    }
    return out;
}

}  // namespace qnet
