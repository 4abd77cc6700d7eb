#pragma once

#include "ews/data.hpp"

#include <string>
#include <vector>

namespace ews {

/// Maps file headers onto panel roles. Columns named in `monthly` are
/// lower-frequency series whose cells may be empty between releases; all
/// other non-date columns must be fully populated.
struct PanelSchema {
    std::string date = "date";
    std::string close = "close";
    std::vector<std::string> monthly;
};

struct LoadedPanel {
    PriceSeries prices;
    FeatureTable daily;    // every daily-frequency column, close included
    FeatureTable monthly;  // schema.monthly columns; empty cells read as NaN
};

/// Reads a comma-separated file with a header row and an ISO-8601 date
/// column. Rows are sorted by date; a duplicate date is an error naming it.
/// Malformed cells raise ParseError with the 1-based line number.
LoadedPanel load_price_panel(const std::string& path, const PanelSchema& schema);

/// Same format, no role mapping: first column must be the date column named
/// in the header; remaining columns read as numbers (empty cell → NaN).
FeatureTable read_table(const std::string& path, const std::string& date_column = "date");

/// Writes date,<columns...> with values in %.17g so a read round-trips
/// bit-for-bit.
void write_table(const std::string& path, const FeatureTable& table,
                 const std::string& date_column = "date");

/// %.17g formatting used everywhere a double becomes text.
std::string format_double(double v);
double parse_double(const std::string& text);  // ParseError on trailing junk

}  // namespace ews
