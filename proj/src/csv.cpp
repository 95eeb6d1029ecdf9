#include "eisl/csv.hpp"

#include <cstdio>

#include "eisl/error.hpp"

namespace eisl::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
    for (const auto& h : header) cell(h);
    end_row();
}

void CsvWriter::separator() {
    if (filled_ > 0) out_ << ',';
    ++filled_;
}

CsvWriter& CsvWriter::cell(double v) {
    separator();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::cell(std::int64_t v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
    if (v.find_first_of(",\"\n") != std::string_view::npos) fail(ErrorKind::io, "CSV cell needs quoting");
    separator();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    if (filled_ != columns_) fail(ErrorKind::io, "CSV row has the wrong number of cells");
    out_ << '\n';
    filled_ = 0;
}

}  // namespace eisl::io
