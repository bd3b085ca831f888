#include "mmrclust/io.hpp"

#include "mmrclust/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mmrclust {

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IOFailure, "cannot open " + path.string() + " for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::IOFailure, "read failed for " + path.string());
    }
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IOFailure, "cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IOFailure, "write failed for " + path.string());
    }
}

}  // namespace mmrclust
