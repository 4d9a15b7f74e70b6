#include "g2sim/csv.hpp"

#include "g2sim/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace g2sim::csv {

std::string number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        v = 0.0; // no "-0"
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc())
        throw InternalError("number formatting failed");
    return std::string(buf.data(), end);
}

std::string number(int v)
{
    return std::to_string(v);
}

Writer::Writer(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size())
{
    row(header);
}

void Writer::row(const std::vector<std::string>& fields)
{
    if (fields.size() != columns_)
        throw InternalError("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(columns_));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
}

std::vector<std::string> split_line(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace g2sim::csv
