#include "vortexlab/csv.hpp"

#include <cstdio>

#include "vortexlab/errors.hpp"

namespace vtx {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : os_(path) {
    if (!os_) throw ConfigError("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        os_ << (i ? "," : "") << header[i];
    }
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        os_ << (i ? "," : "") << format_full(values[i]);
    }
    os_ << '\n';
}

void CsvWriter::row_with_label(const std::vector<double>& values,
                               const std::string& label) {
    for (const double v : values) os_ << format_full(v) << ',';
    os_ << label << '\n';
}

} // namespace vtx
