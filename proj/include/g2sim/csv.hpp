#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace g2sim::csv {

// Shortest representation that parses back to the identical double.
std::string number(double v);
std::string number(int v);

class Writer {
public:
    Writer(std::ostream& out, std::vector<std::string> header);

    void row(const std::vector<std::string>& fields);
    std::size_t columns() const { return columns_; }

private:
    std::ostream& out_;
    std::size_t columns_;
};

std::vector<std::string> split_line(std::string_view line);

inline const std::vector<std::string> kG2Header{"tau_ns", "tauc_ns", "alpha", "pmax", "basis",
                                                "sigma_rad_s", "g2", "status"};
inline const std::vector<std::string> kRcdHeader{"tau_ns", "alpha", "pmax", "basis",
                                                 "sigma_rad_s", "rcd", "status"};
inline const std::vector<std::string> kConvergeHeader{"p", "tau_ns", "alpha", "basis",
                                                      "sigma_rad_s", "g2", "status"};
inline const std::vector<std::string> kVerifyHeader{"p", "branch", "alpha", "x",
                                                    "engine", "closed_form", "rel_err"};

} // namespace g2sim::csv
