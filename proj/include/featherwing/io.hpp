#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace featherwing {

/// Shortest-round-trip is not required; 17 significant digits always
/// reproduce a binary64 value exactly.
std::string format_number(double v);

/// Strict parse of a whole token; throws ParameterError otherwise.
double parse_number(std::string_view text);

std::string join_numbers(std::span<const double> values, std::string_view sep = ",");

/// Writes atomically enough for our purposes (truncate + write). Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

/// Comma separated rows; cells are already-formatted strings.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    void add_row(std::span<const double> values);

    size_t rows() const noexcept { return rows_; }
    const std::string& str() const noexcept { return text_; }

private:
    size_t columns_;
    size_t rows_ = 0;
    std::string text_;
};

/// Splits one CSV line without quoting support (our files never quote).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace featherwing
