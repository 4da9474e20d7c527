#pragma once

#include <string>
#include <vector>

namespace dlsa {

/// Shortest stable decimal form ("%.12g"), '.' decimal point, no locale.
/// All CSV output funnels through this so repeated runs are byte-identical.
std::string csv_double(double x);

std::string csv_join(const std::vector<std::string>& fields);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Minimal reader for our own dialect: comma-separated, one header row,
/// no quoting. Throws std::runtime_error on missing file or ragged rows.
CsvTable read_csv_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dlsa
