#pragma once

// Small helpers shared by the CLI commands: shortest round-trip number
// formatting and file output with stable bytes.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace ymhcli {

inline std::string num(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc())
        return "nan";
    return std::string(buf, res.ptr);
}

inline std::string num(std::size_t x) { return std::to_string(x); }
inline std::string num(int x) { return std::to_string(x); }

inline std::string join(const std::vector<double>& xs, char sep = ',')
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += sep;
        out += num(xs[i]);
    }
    return out;
}

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw IoError("failed writing " + path.string());
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace ymhcli
