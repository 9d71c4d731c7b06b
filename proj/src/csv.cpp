#include "hlab/csv.hpp"

#include <charconv>
#include <ostream>

#include "hlab/error.hpp"

namespace hlab {

namespace {

bool needs_quotes(const std::string& v) { return v.find_first_of(",\"\n") != std::string::npos; }

}  // namespace

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
                     const std::vector<std::pair<std::string, std::string>>& meta)
    : os_(os), columns_(columns.size()) {
    require(!columns.empty(), ErrorCode::InvalidArgument, "CSV needs at least one column");
    os_ << "# schema=" << kCsvSchema << '\n';
    for (const auto& [k, v] : meta) os_ << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
    require(filled_ < columns_, ErrorCode::InvalidArgument, "CSV row has too many cells");
    if (filled_++) os_ << ',';
    if (needs_quotes(v)) {
        os_ << '"';
        for (char c : v) os_ << (c == '"' ? "\"\"" : std::string(1, c));
        os_ << '"';
    } else {
        os_ << v;
    }
    return *this;
}

void CsvWriter::end_row() {
    require(filled_ == columns_, ErrorCode::InvalidArgument, "CSV row is incomplete");
    os_ << '\n';
    filled_ = 0;
    if (!os_) fail(ErrorCode::IoError, "CSV write failed");
}

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
    const int d = rows.empty() ? 1 : rows.front().w.dim();
    std::vector<std::string> cols{"t"};
    for (int j = 1; j <= d; ++j) cols.push_back("y" + std::to_string(j));
    for (int j = 1; j <= d; ++j) cols.push_back("eta" + std::to_string(j));
    for (const char* c : {"s", "re", "im", "route"}) cols.emplace_back(c);
    CsvWriter w(os, cols);
    for (const auto& r : rows) {
        require(r.w.dim() == d, ErrorCode::DimensionMismatch, "trace rows mix dimensions");
        w.cell(r.t);
        for (double y : r.w.y()) w.cell(y);
        for (double e : r.w.eta()) w.cell(e);
        w.cell(r.w.s()).cell(r.value.real()).cell(r.value.imag()).cell(r.route);
        w.end_row();
    }
}

}  // namespace hlab
