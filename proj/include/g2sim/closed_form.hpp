#pragma once

#include "g2sim/correlator.hpp"
#include "g2sim/fock.hpp"

#include <vector>

namespace g2sim {

// Published closed forms of the heralded g2(tau, 0) at truncation P, as
// functions of alpha and x, where x is the printed exponent variable. The
// printed sigma is the spread of the *relative* frequency of the two beams,
// so with the per-beam sigma used by the engine, x = 2 sigma^2 tau^2.
class ClosedForm {
public:
    // P in [3, 10]; AD exists only for P = 3.
    ClosedForm(int P, ProjectionBasis branch);

    int P() const { return P_; }
    ProjectionBasis branch() const { return branch_; }

    double operator()(double alpha, double x) const;
    double limit(double alpha) const; // x -> infinity

private:
    int P_;
    ProjectionBasis branch_;
    double evaluate(double alpha, double q) const; // q = e^{-x/2}
};

double closed_form_value(int P, ProjectionBasis branch, double alpha, double x);
bool closed_form_available(int P, ProjectionBasis branch);

// Delay at which the engine's pair coherence factor equals e^{-x/2}.
double tau_for_x(double x, const SpectralModel& spectral);

struct VerifyPoint {
    int P;
    ProjectionBasis branch;
};

struct VerifyGrid {
    std::vector<double> alphas;
    std::vector<double> xs;
    std::vector<VerifyPoint> forms;

    // alpha in {0.05, 0.1, 0.5, 1.2}, x in {0, 0.25, 1, 4, 25},
    // P = 3..10 DD plus P = 3 AD.
    static VerifyGrid standard();
};

struct VerifyRow {
    int P;
    ProjectionBasis branch;
    double alpha;
    double x;
    double engine;
    double closedForm;
    double relErr;
};

struct VerifyReport {
    std::vector<VerifyRow> rows; // grid order: form, alpha, x
    double maxRelErr = 0.0;
    std::size_t worst = 0;

    bool passed(double tolerance) const { return maxRelErr <= tolerance; }
    std::vector<VerifyRow> worst_offenders(std::size_t n) const;
};

inline constexpr double kVerifyTolerance = 1e-9;

VerifyReport verify_engine(const VerifyGrid& grid,
                           const SpectralModel& spectral = SpectralModel::paper_default(),
                           TruncationMode truncation = TruncationMode::Joint, int threads = 1);

} // namespace g2sim
