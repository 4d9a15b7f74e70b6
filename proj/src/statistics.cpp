#include "g2sim/statistics.hpp"

#include "g2sim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace g2sim {

namespace {

void check_request(const CorrelationRequest& req)
{
    if (!(req.alpha >= 0.0) || !std::isfinite(req.alpha))
        throw ConfigError("alpha must be finite and >= 0");
    if (!std::isfinite(req.tau) || !std::isfinite(req.tauc))
        throw ConfigError("delays must be finite");
}

void check_order(int p, const PreparedState& prepared)
{
    if (p < 1 || p > prepared.max_photons())
        throw UsageError("factorial-moment order " + std::to_string(p) +
                         " outside [1, " + std::to_string(prepared.max_photons()) + "]");
}

std::vector<DetectionOperator> heralds(int p, ProjectionBasis basis)
{
    return std::vector<DetectionOperator>(static_cast<std::size_t>(p),
                                          detector_operator(Detector::Dd, basis, 0.0));
}

double evaluate(const PreparedState& prepared, const std::vector<DetectionOperator>& ops,
                const SpectralModel& spectral, Diagnostics* diag)
{
    const Moment m = averaged_moment(prepared.moments(), ops, spectral);
    if (diag)
        diag->absorb(m);
    return m.value;
}

} // namespace

PreparedState::PreparedState(double alpha, TruncationOrder P, TruncationMode mode)
    : state_(build_joint_state(alpha, P, mode)), moments_(state_)
{
}

PreparedState::PreparedState(const CorrelationRequest& req)
    : PreparedState(req.alpha, req.P, req.truncation)
{
}

void Diagnostics::absorb(const Moment& m)
{
    maxImagResidue = std::max(maxImagResidue, m.imagResidue);
    maxNegativeResidue = std::max(maxNegativeResidue, m.negativeResidue);
    if (m.negativeResidue > 0.0)
        ++clampedMoments;
}

double heralding_prob(int p, const CorrelationRequest& req, const PreparedState& prepared,
                      Diagnostics* diag)
{
    check_order(p, prepared);
    return evaluate(prepared, heralds(p, req.basis), req.spectral, diag);
}

double heralding_prob(int p, const CorrelationRequest& req)
{
    check_request(req);
    return heralding_prob(p, req, PreparedState(req));
}

double twofold(int p, Twofold which, double t, const CorrelationRequest& req,
               const PreparedState& prepared, Diagnostics* diag)
{
    check_order(p, prepared);
    auto ops = heralds(p, req.basis);
    ops.push_back(detector_operator(which == Twofold::De ? Detector::De : Detector::Df, req.basis, t));
    return evaluate(prepared, ops, req.spectral, diag);
}

double twofold(int p, Twofold which, double t, const CorrelationRequest& req)
{
    check_request(req);
    return twofold(p, which, t, req, PreparedState(req));
}

double threefold(int p, double tau, double tauc, const CorrelationRequest& req,
                 const PreparedState& prepared, Diagnostics* diag)
{
    check_order(p, prepared);
    auto ops = heralds(p, req.basis);
    ops.push_back(detector_operator(Detector::De, req.basis, tau));
    ops.push_back(detector_operator(Detector::Df, req.basis, tau + tauc));
    return evaluate(prepared, ops, req.spectral, diag);
}

double threefold(int p, double tau, double tauc, const CorrelationRequest& req)
{
    check_request(req);
    return threefold(p, tau, tauc, req, PreparedState(req));
}

double assemble_g2(const std::vector<NumeratorPart>& num, const std::vector<DenominatorPart>& den)
{
    double sd = 0.0, sdef = 0.0, sde = 0.0, sdf = 0.0;
    for (const auto& n : num) {
        sd += n.Id;
        sdef += n.Idef;
    }
    for (const auto& d : den) {
        sde += d.Ide;
        sdf += d.Idf;
    }
    return (sd * sdef) / (sde * sdf);
}

CorrelationResult g2_conditional(const CorrelationRequest& req, const PreparedState& prepared)
{
    check_request(req);
    CorrelationResult r;
    // I^(p) vanishes identically once p exceeds the photon content.
    const int top = prepared.max_photons();
    double sde = 0.0, sdf = 0.0;
    for (int p = 1; p <= top; ++p) {
        const double Id = heralding_prob(p, req, prepared, &r.diagnostics);
        const double Ide = twofold(p, Twofold::De, req.tau, req, prepared, &r.diagnostics);
        const double Idf = twofold(p, Twofold::Df, req.tau + req.tauc, req, prepared, &r.diagnostics);
        const double Idef = threefold(p, req.tau, req.tauc, req, prepared, &r.diagnostics);
        r.numeratorParts.push_back({p, Id, Idef});
        r.denominatorParts.push_back({p, Ide, Idf});
        sde += Ide;
        sdf += Idf;
    }
    if (sde == 0.0 || sdf == 0.0)
        throw UndefinedCorrelation("heralded g2 undefined: two-fold coincidence sum is zero", r);
    r.value = assemble_g2(r.numeratorParts, r.denominatorParts);
    return r;
}

CorrelationResult g2_conditional(const CorrelationRequest& req)
{
    check_request(req);
    return g2_conditional(req, PreparedState(req));
}

double r_cd(double tau, const CorrelationRequest& req, const PreparedState& prepared)
{
    check_request(req);
    if (!std::isfinite(tau))
        throw ConfigError("delay must be finite");
    const auto c = detector_operator(Detector::Dc, req.basis, tau);
    const auto d = detector_operator(Detector::Dd, req.basis, 0.0);
    const double Mc = averaged_moment(prepared.moments(), {c}, req.spectral).value;
    const double Md = averaged_moment(prepared.moments(), {d}, req.spectral).value;
    if (Mc == 0.0 || Md == 0.0)
        throw UndefinedCorrelation("R_cd undefined: vanishing singles rate");
    const double Mcd = averaged_moment(prepared.moments(), {d, c}, req.spectral).value;
    const double Z = inner_product(prepared.state().table(), prepared.state().table()).real();
    return Z * Mcd / (Mc * Md);
}

double r_cd(double tau, const CorrelationRequest& req)
{
    check_request(req);
    return r_cd(tau, req, PreparedState(req));
}

} // namespace g2sim
