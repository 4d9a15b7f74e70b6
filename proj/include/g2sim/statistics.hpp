#pragma once

#include "g2sim/correlator.hpp"
#include "g2sim/fock.hpp"

#include <stdexcept>
#include <vector>

namespace g2sim {

struct CorrelationRequest {
    double alpha = 0.1;
    TruncationOrder P{10};
    ProjectionBasis basis = ProjectionBasis::DD;
    SpectralModel spectral = SpectralModel::paper_default();
    double tau = 0.0;  // seconds
    double tauc = 0.0; // seconds
    TruncationMode truncation = TruncationMode::Joint;
};

// State plus its factorial-moment table; build once, share read-only.
class PreparedState {
public:
    PreparedState(double alpha, TruncationOrder P, TruncationMode mode = TruncationMode::Joint);
    explicit PreparedState(const CorrelationRequest& req);

    const JointFockState& state() const { return state_; }
    const FactorialMoments& moments() const { return moments_; }
    int max_photons() const { return moments_.max_photons(); }

private:
    JointFockState state_;
    FactorialMoments moments_;
};

struct NumeratorPart {
    int p;
    double Id;
    double Idef;
};

struct DenominatorPart {
    int p;
    double Ide;
    double Idf;
};

struct Diagnostics {
    double maxImagResidue = 0.0;
    double maxNegativeResidue = 0.0;
    int clampedMoments = 0;

    void absorb(const Moment& m);
};

struct CorrelationResult {
    double value = 0.0;
    std::vector<NumeratorPart> numeratorParts;
    std::vector<DenominatorPart> denominatorParts;
    Diagnostics diagnostics;
};

// Thrown when a ratio has a vanishing denominator (vacuum input, or a
// truncation too low to hold the required photons). Carries whatever parts
// were computed.
class UndefinedCorrelation : public std::domain_error {
public:
    UndefinedCorrelation(const std::string& what, CorrelationResult parts = {})
        : std::domain_error(what), parts_(std::move(parts))
    {
    }
    const CorrelationResult& parts() const { return parts_; }

private:
    CorrelationResult parts_;
};

enum class Twofold { De, Df };

// I_d^(p): p heralding factors at t = 0.
double heralding_prob(int p, const CorrelationRequest& req);
double heralding_prob(int p, const CorrelationRequest& req, const PreparedState& prepared,
                      Diagnostics* diag = nullptr);

// I_de^(p)(t) or I_df^(p)(t): p heralding factors plus one e or f factor at
// time t. g2_conditional passes t = tau for e and t = tau + tauc for f.
double twofold(int p, Twofold which, double t, const CorrelationRequest& req);
double twofold(int p, Twofold which, double t, const CorrelationRequest& req,
               const PreparedState& prepared, Diagnostics* diag = nullptr);

// I_def^(p)(tau, tauc): e at tau, f at tau + tauc.
double threefold(int p, double tau, double tauc, const CorrelationRequest& req);
double threefold(int p, double tau, double tauc, const CorrelationRequest& req,
                 const PreparedState& prepared, Diagnostics* diag = nullptr);

// (sum I_d * sum I_def) / (sum I_de * sum I_df), sums over p = 1..P.
double assemble_g2(const std::vector<NumeratorPart>& num, const std::vector<DenominatorPart>& den);

CorrelationResult g2_conditional(const CorrelationRequest& req);
CorrelationResult g2_conditional(const CorrelationRequest& req, const PreparedState& prepared);

// Z <c^dag(tau) d^dag(0) d(0) c(tau)> / (<c^dag c><d^dag d>), Z = <psi|psi>.
// req.tau and req.tauc are ignored.
double r_cd(double tau, const CorrelationRequest& req);
double r_cd(double tau, const CorrelationRequest& req, const PreparedState& prepared);

} // namespace g2sim
