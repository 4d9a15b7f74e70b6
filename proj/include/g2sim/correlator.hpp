#pragma once

#include "g2sim/fock.hpp"

#include <string_view>
#include <vector>

namespace g2sim {

// Polarizer settings {D_c, D_d} and {A_c, D_d}.
enum class ProjectionBasis { DD, AD };

std::string_view to_string(ProjectionBasis b);
ProjectionBasis parse_basis(std::string_view s); // "dd"/"ad", case-insensitive

enum class Detector { Dc, Dd, De, Df };

// One projected detector field factor u_A a + u_B b, tagged with the time at
// which it is evaluated (seconds).
struct DetectionOperator {
    Detector detector;
    double time;
    cplx uA;
    cplx uB;

    DetectionOperator(Detector d, double t, cplx a, cplx b);
};

// Fixed coefficient table. With s = +1 (DD) or -1 (AD):
//   c = (1/2, s i/2), d = (i/2, 1/2), e = c/sqrt2, f = i c/sqrt2.
DetectionOperator detector_operator(Detector d, ProjectionBasis basis, double time);

// Gaussian spectrum of each beam's random angular frequency, standard
// deviation sigma in rad/s.
class SpectralModel {
public:
    explicit SpectralModel(double sigma_rad_s);

    // FWHM given in ordinary frequency (MHz).
    static SpectralModel from_fwhm_mhz(double fwhm_mhz);
    static SpectralModel paper_default(); // FWHM = 15/(2 pi) MHz

    double sigma() const { return sigma_; }

private:
    double sigma_;
};

inline constexpr double kDefaultFwhmMHz = 2.3873241463784300; // 15 / (2 pi)

// exp(-sigma^2 T^2 / 2)
double mu(double T, const SpectralModel& spectral);

// Where a monomial picked up each beam's random frequency, and the net
// winding of each beam's random phase (ket side).
struct PhaseForm {
    std::vector<double> timesA;
    std::vector<double> timesB;
    int windingA = 0;
    int windingB = 0;
};

struct ExpandedTerm {
    OperatorMonomial mono;
    PhaseForm phase;
};

// Literal expansion into all 2^L ordered monomials. Meant for inspection and
// testing; averaged_moment uses grouped summation instead.
inline constexpr int kMaxLiteralExpansion = 24;
std::vector<ExpandedTerm> expand_product(const std::vector<DetectionOperator>& ops);

// F(j,k) = <psi| a^dag^j b^dag^k a^j b^k |psi> for one state, cached.
class FactorialMoments {
public:
    explicit FactorialMoments(const JointFockState& state);

    double at(int j, int k) const;
    int max_photons() const { return maxPhotons_; }

private:
    int maxPhotons_;
    int dim_;
    std::vector<double> f_;
};

struct Moment {
    double value = 0.0;           // clamped to >= 0
    double scale = 0.0;           // sum of |pair contributions|
    double imagResidue = 0.0;     // |Im| / scale before discarding
    double negativeResidue = 0.0; // amount clamped away, relative to scale
};

// Phase- and frequency-averaged <O^dag O> with O the product of ops.
Moment averaged_moment(const JointFockState& state, const std::vector<DetectionOperator>& ops,
                       const SpectralModel& spectral);
Moment averaged_moment(const FactorialMoments& moments, const std::vector<DetectionOperator>& ops,
                       const SpectralModel& spectral);

inline constexpr double kMomentTolerance = 1e-12;

} // namespace g2sim
