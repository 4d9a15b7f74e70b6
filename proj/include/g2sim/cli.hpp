#pragma once

#include "g2sim/correlator.hpp"
#include "g2sim/fock.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace g2sim::cli {

enum class Subcommand { G2, Rcd, Converge, Map, Verify };

enum ExitCode : int { kSuccess = 0, kUsage = 1, kVerifyFailed = 2 };

// start:stop:step in nanoseconds, inclusive of stop when it lies on the grid.
struct GridNs {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    static GridNs parse(const std::string& text); // also accepts a single value
    std::vector<double> values() const;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::G2;
    double alpha = 0.1;
    int pmax = 10;
    ProjectionBasis basis = ProjectionBasis::DD;
    std::optional<double> fwhm_mhz;
    std::optional<double> sigma_rad_s;
    GridNs tau{-1000.0, 1000.0, 5.0};
    GridNs tauc{0.0, 0.0, 1.0}; // a single point except for map
    double tau_fixed = 0.0;     // converge
    std::string out;            // empty: stdout
    int threads = 1;
    TruncationMode truncation = TruncationMode::Joint;

    SpectralModel spectral() const;
    void validate() const; // throws UsageError
};

// Executes a validated config. CSV goes to `csv`; human-readable notes to `log`.
int run(const RunConfig& config, std::ostream& csv, std::ostream& log);

// Full command line handling: parsing, config file, output file, exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace g2sim::cli
