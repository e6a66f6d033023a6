#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wsnloc {

// Six significant digits, %g style, round-half-even on exact decimal ties.
std::string format_value(double v);

// Shortest text that parses back to exactly v.
std::string format_exact(double v);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text) noexcept;

// Whole-file helpers; both throw IoError.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;  // throws IoError when missing
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace wsnloc
