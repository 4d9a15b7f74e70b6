#include "g2sim/correlator.hpp"

#include "g2sim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace g2sim {

std::string_view to_string(ProjectionBasis b)
{
    return b == ProjectionBasis::DD ? "dd" : "ad";
}

ProjectionBasis parse_basis(std::string_view s)
{
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "dd")
        return ProjectionBasis::DD;
    if (lower == "ad")
        return ProjectionBasis::AD;
    throw UsageError("unknown projection basis '" + std::string(s) + "' (expected dd or ad)");
}

DetectionOperator::DetectionOperator(Detector d, double t, cplx a, cplx b)
    : detector(d), time(t), uA(a), uB(b)
{
    if (!(std::norm(uA) + std::norm(uB) > 0.0))
        throw UsageError("detection operator with vanishing coefficients");
    if (!std::isfinite(time))
        throw UsageError("detection time must be finite");
}

DetectionOperator detector_operator(Detector d, ProjectionBasis basis, double time)
{
    const double s = basis == ProjectionBasis::DD ? 1.0 : -1.0;
    const cplx I{0.0, 1.0};
    const cplx cA{0.5, 0.0};
    const cplx cB = s * I * 0.5;
    const double r = 1.0 / std::numbers::sqrt2;
    switch (d) {
    case Detector::Dc: return {d, time, cA, cB};
    case Detector::Dd: return {d, time, I * 0.5, cplx{0.5, 0.0}};
    case Detector::De: return {d, time, cA * r, cB * r};
    case Detector::Df: return {d, time, I * r * cA, I * r * cB};
    }
    throw UsageError("unknown detector");
}

SpectralModel::SpectralModel(double sigma_rad_s) : sigma_(sigma_rad_s)
{
    if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
        throw ConfigError("spectral sigma must be finite and > 0");
}

SpectralModel SpectralModel::from_fwhm_mhz(double fwhm_mhz)
{
    if (!(fwhm_mhz > 0.0) || !std::isfinite(fwhm_mhz))
        throw ConfigError("spectral FWHM must be finite and > 0");
    const double fwhm_hz = fwhm_mhz * 1e6;
    return SpectralModel(2.0 * std::numbers::pi * fwhm_hz / (2.0 * std::sqrt(2.0 * std::numbers::ln2)));
}

SpectralModel SpectralModel::paper_default()
{
    return from_fwhm_mhz(kDefaultFwhmMHz);
}

double mu(double T, const SpectralModel& spectral)
{
    const double st = spectral.sigma() * T;
    return std::exp(-0.5 * st * st);
}

std::vector<ExpandedTerm> expand_product(const std::vector<DetectionOperator>& ops)
{
    if (ops.empty())
        throw UsageError("expand_product needs at least one operator");
    if (ops.size() > static_cast<std::size_t>(kMaxLiteralExpansion))
        throw UsageError("literal expansion limited to " + std::to_string(kMaxLiteralExpansion) +
                         " operators");

    const std::size_t L = ops.size();
    std::vector<ExpandedTerm> out;
    out.reserve(std::size_t{1} << L);
    // Bit i of mask set: operator i contributes its a-part.
    for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
        cplx c{1.0, 0.0};
        PhaseForm ph;
        for (std::size_t i = 0; i < L; ++i) {
            if (mask & (std::size_t{1} << i)) {
                c *= ops[i].uA;
                ph.timesA.push_back(ops[i].time);
            } else {
                c *= ops[i].uB;
                ph.timesB.push_back(ops[i].time);
            }
        }
        ph.windingA = static_cast<int>(ph.timesA.size());
        ph.windingB = static_cast<int>(ph.timesB.size());
        OperatorMonomial mono(ph.windingA, ph.windingB, c, ph.timesA, ph.timesB);
        out.push_back({std::move(mono), std::move(ph)});
    }
    return out;
}

FactorialMoments::FactorialMoments(const JointFockState& state)
    : maxPhotons_(state.table().max_photons()), dim_(state.order().value() + 1),
      f_(static_cast<std::size_t>(dim_ * dim_), 0.0)
{
    for (int j = 0; j < dim_; ++j) {
        for (int k = 0; k < dim_; ++k) {
            if (j + k > maxPhotons_)
                continue;
            const auto moved = apply_monomial(state, OperatorMonomial(j, k, 1.0));
            f_[static_cast<std::size_t>(j * dim_ + k)] = inner_product(moved, moved).real();
        }
    }
}

double FactorialMoments::at(int j, int k) const
{
    if (j < 0 || k < 0 || j >= dim_ || k >= dim_)
        return 0.0;
    return f_[static_cast<std::size_t>(j * dim_ + k)];
}

namespace {

struct Group {
    cplx uA, uB;
    double time;
    int count;
};

struct Term {
    cplx coeff;
    double Ta; // net time carried by beam a's frequency
    double Tb;
};

std::vector<Group> group_operators(const std::vector<DetectionOperator>& ops)
{
    std::vector<Group> groups;
    for (const auto& op : ops) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.uA == op.uA && g.uB == op.uB && g.time == op.time;
        });
        if (it != groups.end())
            ++it->count;
        else
            groups.push_back({op.uA, op.uB, op.time, 1});
    }
    return groups;
}

double binomial(int n, int k)
{
    return falling_factorial(n, k) / static_cast<double>(factorial(k));
}

cplx ipow(cplx z, int n)
{
    cplx r{1.0, 0.0};
    for (int i = 0; i < n; ++i)
        r *= z;
    return r;
}

// Multinomial expansion of the grouped product, bucketed by the power of a.
std::vector<std::vector<Term>> expand_grouped(const std::vector<Group>& groups, int L)
{
    std::vector<std::vector<Term>> byJ(static_cast<std::size_t>(L + 1));
    std::vector<int> ks(groups.size(), 0);
    while (true) {
        cplx c{1.0, 0.0};
        double Ta = 0.0, Tb = 0.0;
        int j = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const auto& G = groups[g];
            const int k = ks[g];
            c *= binomial(G.count, k) * ipow(G.uA, k) * ipow(G.uB, G.count - k);
            Ta += k * G.time;
            Tb += (G.count - k) * G.time;
            j += k;
        }
        byJ[static_cast<std::size_t>(j)].push_back({c, Ta, Tb});

        std::size_t g = 0;
        while (g < groups.size() && ks[g] == groups[g].count) {
            ks[g] = 0;
            ++g;
        }
        if (g == groups.size())
            break;
        ++ks[g];
    }
    return byJ;
}

} // namespace

Moment averaged_moment(const FactorialMoments& moments, const std::vector<DetectionOperator>& ops,
                       const SpectralModel& spectral)
{
    if (ops.empty())
        throw UsageError("averaged_moment needs at least one operator");

    const int L = static_cast<int>(ops.size());
    Moment result;
    if (L > moments.max_photons())
        return result;

    const auto byJ = expand_grouped(group_operators(ops), L);
    const double s2 = spectral.sigma() * spectral.sigma();

    cplx total{};
    double scale = 0.0;
    for (int j = 0; j <= L; ++j) {
        const double F = moments.at(j, L - j);
        if (F == 0.0)
            continue;
        const auto& terms = byJ[static_cast<std::size_t>(j)];
        for (const auto& ket : terms) {
            for (const auto& bra : terms) {
                const double dA = ket.Ta - bra.Ta;
                const double dB = ket.Tb - bra.Tb;
                const double w = std::exp(-0.5 * s2 * (dA * dA + dB * dB));
                const cplx c = std::conj(bra.coeff) * ket.coeff * (F * w);
                total += c;
                scale += std::abs(c);
            }
        }
    }

    result.scale = scale;
    if (scale == 0.0)
        return result;

    result.imagResidue = std::abs(total.imag()) / scale;
    if (result.imagResidue > kMomentTolerance)
        throw InternalError("averaged moment has imaginary part " + std::to_string(total.imag()) +
                            " (scale " + std::to_string(scale) + ")");
    if (total.real() < 0.0) {
        const double neg = -total.real() / scale;
        if (neg > kMomentTolerance)
            throw InternalError("averaged moment negative beyond tolerance: " +
                                std::to_string(total.real()));
        result.negativeResidue = neg;
        result.value = 0.0;
    } else {
        result.value = total.real();
    }
    return result;
}

Moment averaged_moment(const JointFockState& state, const std::vector<DetectionOperator>& ops,
                       const SpectralModel& spectral)
{
    return averaged_moment(FactorialMoments(state), ops, spectral);
}

} // namespace g2sim
