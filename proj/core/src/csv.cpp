#include "ews/csv.hpp"

#include "ews/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace ews {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError("not a number: '" + text + "'");
    return v;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

struct RawFile {
    std::vector<std::string> header;
    std::vector<Date> dates;
    std::vector<std::vector<double>> cells;  // cells[row][col], date column excluded
    std::size_t date_col = 0;
};

/// Reads, parses and date-sorts the whole file. Empty cells become NaN;
/// callers decide which columns tolerate them.
RawFile read_raw(const std::string& path, const std::string& date_column) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    RawFile raw;
    raw.header = split_line(strip_cr(line));
    const auto it = std::find(raw.header.begin(), raw.header.end(), date_column);
    if (it == raw.header.end())
        throw ParseError(path + ": no '" + date_column + "' column in header");
    raw.date_col = static_cast<std::size_t>(it - raw.header.begin());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != raw.header.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(raw.header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == raw.date_col) continue;
            if (cells[c].empty()) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            try {
                row.push_back(parse_double(cells[c]));
            } catch (const ParseError&) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": bad number '" +
                                 cells[c] + "' in column '" + raw.header[c] + "'");
            }
        }
        try {
            raw.dates.push_back(Date::parse(cells[raw.date_col]));
        } catch (const ParseError&) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad date '" +
                             cells[raw.date_col] + "'");
        }
        raw.cells.push_back(std::move(row));
    }

    std::vector<std::size_t> order(raw.dates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return raw.dates[a] < raw.dates[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (!(raw.dates[order[i - 1]] < raw.dates[order[i]]))
            throw ValidationError(path + ": duplicate date " + raw.dates[order[i]].to_string());

    RawFile sorted;
    sorted.header = raw.header;
    sorted.date_col = raw.date_col;
    sorted.dates.reserve(raw.dates.size());
    sorted.cells.reserve(raw.cells.size());
    for (const std::size_t i : order) {
        sorted.dates.push_back(raw.dates[i]);
        sorted.cells.push_back(std::move(raw.cells[i]));
    }
    return sorted;
}

FeatureTable to_table(const RawFile& raw) {
    FeatureTable t;
    t.dates = raw.dates;
    std::size_t out_c = 0;
    for (std::size_t c = 0; c < raw.header.size(); ++c) {
        if (c == raw.date_col) continue;
        std::vector<double> col(raw.dates.size());
        for (std::size_t r = 0; r < raw.dates.size(); ++r) col[r] = raw.cells[r][out_c];
        t.names.push_back(raw.header[c]);
        t.columns.push_back(std::move(col));
        ++out_c;
    }
    return t;
}

}  // namespace

FeatureTable read_table(const std::string& path, const std::string& date_column) {
    return to_table(read_raw(path, date_column));
}

void write_table(const std::string& path, const FeatureTable& table,
                 const std::string& date_column) {
    table.validate();
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << date_column;
    for (const auto& n : table.names) out << ',' << n;
    out << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        out << table.dates[r].to_string();
        for (std::size_t c = 0; c < table.cols(); ++c)
            out << ',' << format_double(table.columns[c][r]);
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

LoadedPanel load_price_panel(const std::string& path, const PanelSchema& schema) {
    const FeatureTable all = read_table(path, schema.date);
    if (!all.has_column(schema.close))
        throw ParseError(path + ": no '" + schema.close + "' column in header");

    LoadedPanel out;
    out.daily.dates = all.dates;
    out.monthly.dates = all.dates;
    for (std::size_t c = 0; c < all.cols(); ++c) {
        const bool is_monthly = std::find(schema.monthly.begin(), schema.monthly.end(),
                                          all.names[c]) != schema.monthly.end();
        if (is_monthly) {
            out.monthly.add_column(all.names[c], all.columns[c]);
            continue;
        }
        for (std::size_t r = 0; r < all.rows(); ++r)
            if (std::isnan(all.columns[c][r]))
                throw ValidationError(path + ": missing value in daily column '" + all.names[c] +
                                      "' at " + all.dates[r].to_string());
        out.daily.add_column(all.names[c], all.columns[c]);
    }

    out.prices.dates = all.dates;
    out.prices.close = all.column(schema.close);
    out.prices.validate();
    return out;
}

}  // namespace ews
