#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hlab/group.hpp"
#include "hlab/quadrature.hpp"

namespace hlab {

inline constexpr int kCsvSchema = 1;

// Emits `# schema=1`, one `# key=value` line per metadata entry, then the header.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
              const std::vector<std::pair<std::string, std::string>>& meta = {});
    CsvWriter& cell(double v);
    CsvWriter& cell(long v);
    CsvWriter& cell(int v) { return cell(static_cast<long>(v)); }
    CsvWriter& cell(const std::string& v);
    void end_row();

private:
    std::ostream& os_;
    std::size_t columns_;
    std::size_t filled_ = 0;
};

// shortest text that reads back to the same double
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

struct TraceRow {
    double t;
    GroupPoint w;
    cplx value;
    std::string route;
};

// columns t, y1.., eta1.., s, re, im, route
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);

}  // namespace hlab
