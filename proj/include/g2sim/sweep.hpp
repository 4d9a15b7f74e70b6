#pragma once

#include "g2sim/statistics.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace g2sim {

enum class SweepKind {
    G2Tau,    // g2 over tau at fixed tauc
    G2Map,    // g2 over (tau, tauc), tau-major
    RcdTau,   // R_cd over tau
    Converge, // g2 over truncation order at fixed (tau, tauc)
};

struct SweepSpec {
    SweepKind kind = SweepKind::G2Tau;
    CorrelationRequest base; // alpha, P, basis, spectral, truncation; tau/tauc as fixed values
    std::vector<double> tau;   // seconds, strictly increasing (G2Tau, G2Map, RcdTau)
    std::vector<double> tauc;  // seconds, strictly increasing (G2Map)
    std::vector<int> orders;   // strictly increasing (Converge)
    int threads = 1;
};

enum class RowStatus { Ok, Undefined };

struct SweepRow {
    std::size_t tauIndex = 0;
    std::size_t taucIndex = 0;
    int P = 0;
    double tau = 0.0;
    double tauc = 0.0;
    double value = 0.0;
    RowStatus status = RowStatus::Ok;
    std::string message;
};

// Rows come back in declared grid order regardless of thread count.
std::vector<SweepRow> sweep(const SweepSpec& spec);

} // namespace g2sim
