#pragma once

// Minimal CSV emission: header row, comma separator, LF endings, doubles with
// 17 significant digits.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace eisl::io {

/// printf("%.17g"), the lossless double format used everywhere in output.
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> header);

    CsvWriter& cell(double v);
    CsvWriter& cell(std::int64_t v);
    CsvWriter& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
    CsvWriter& cell(std::string_view v);
    /// Terminates the row; throws if the cell count differs from the header.
    void end_row();

private:
    void separator();

    std::ostream& out_;
    std::size_t columns_;
    std::size_t filled_ = 0;
};

}  // namespace eisl::io
