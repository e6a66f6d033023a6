#include "wsnloc/format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

std::string to_chars_string(double v, bool shortest)
{
    if (v == 0.0)
        v = 0.0;  // drop the sign of negative zero
    char buf[64];
    const auto res = shortest ? std::to_chars(buf, buf + sizeof buf, v)
                              : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_value(double v)
{
    return to_chars_string(v, false);
}

std::string format_exact(double v)
{
    return to_chars_string(v, true);
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view text) noexcept
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
        throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw IoError("missing column " + std::string(name));
}

CsvTable read_csv(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    CsvTable table;
    bool first = true;
    for (const auto& line : split(text, '\n')) {
        if (line.empty())
            continue;
        auto fields = split(line, ',');
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != table.header.size())
                throw IoError("ragged row in " + path.string());
            table.rows.push_back(std::move(fields));
        }
    }
    if (first)
        throw IoError("empty csv " + path.string());
    return table;
}

}  // namespace wsnloc
