#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace vtx {

/// CSV writer: header row, '.' decimal separator, full double precision
/// (%.17g), newline-terminated rows.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    void row_with_label(const std::vector<double>& values,
                        const std::string& label);

private:
    std::ofstream os_;
};

std::string format_full(double v);

} // namespace vtx
