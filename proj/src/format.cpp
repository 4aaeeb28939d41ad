#include "himax/format.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace himax {

std::string format_shortest(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) return "nan";
    return {buf.data(), ptr};
}

std::string format_sig10(double x) {
    std::array<char, 64> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.10g", x);
    return {buf.data(), static_cast<std::size_t>(len)};
}

}  // namespace himax
