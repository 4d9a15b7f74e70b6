#include "g2sim/fock.hpp"

#include "g2sim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace g2sim {

namespace {

constexpr std::array<std::uint64_t, kMaxTruncation + 1> make_factorials()
{
    std::array<std::uint64_t, kMaxTruncation + 1> f{};
    f[0] = 1;
    for (int i = 1; i <= kMaxTruncation; ++i)
        f[i] = f[i - 1] * static_cast<std::uint64_t>(i);
    return f;
}

constexpr auto kFactorials = make_factorials();
static_assert(kFactorials[20] == 2432902008176640000ULL);

} // namespace

std::uint64_t factorial(int n)
{
    if (n < 0 || n > kMaxTruncation)
        throw UsageError("factorial argument out of range: " + std::to_string(n));
    return kFactorials[n];
}

double falling_factorial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    return static_cast<double>(factorial(n) / factorial(n - k));
}

TruncationOrder::TruncationOrder(int p) : p_(p)
{
    if (p < 1 || p > kMaxTruncation)
        throw ConfigError("truncation order must lie in [1, 20], got " + std::to_string(p));
}

AmplitudeTable::AmplitudeTable(TruncationOrder order, TruncationMode mode)
    : order_(order), mode_(mode), amp_(static_cast<std::size_t>(dim() * dim()))
{
}

int AmplitudeTable::max_photons() const
{
    return mode_ == TruncationMode::Joint ? order_.value() : 2 * order_.value();
}

bool AmplitudeTable::in_support(int m, int n) const
{
    const int P = order_.value();
    if (m < 0 || n < 0 || m > P || n > P)
        return false;
    return mode_ == TruncationMode::PerArm || m + n <= P;
}

cplx AmplitudeTable::at(int m, int n) const
{
    if (!in_support(m, n))
        return {};
    return amp_[static_cast<std::size_t>(m * dim() + n)];
}

void AmplitudeTable::set(int m, int n, cplx v)
{
    if (!in_support(m, n))
        throw UsageError("occupation (" + std::to_string(m) + "," + std::to_string(n) +
                         ") outside the truncated support");
    amp_[static_cast<std::size_t>(m * dim() + n)] = v;
}

JointFockState::JointFockState(double alpha, AmplitudeTable table)
    : alpha_(alpha), table_(std::move(table))
{
}

JointFockState build_joint_state(double alpha, TruncationOrder P, TruncationMode mode)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ConfigError("alpha must be finite and >= 0");

    AmplitudeTable t(P, mode);
    const double half = alpha / 2.0;
    for (int m = 0; m <= P.value(); ++m) {
        for (int n = 0; n <= P.value(); ++n) {
            if (!t.in_support(m, n))
                continue;
            // pow(0, 0) == 1 keeps the vacuum entry for alpha = 0.
            const double num = std::pow(half, 0.5 * (m + n));
            const double den = std::sqrt(static_cast<double>(factorial(m))) *
                               std::sqrt(static_cast<double>(factorial(n)));
            t.set(m, n, num / den);
        }
    }
    return JointFockState(alpha, std::move(t));
}

OperatorMonomial::OperatorMonomial(int j_, int k_, cplx c)
    : OperatorMonomial(j_, k_, c, std::vector<double>(static_cast<std::size_t>(std::max(j_, 0)), 0.0),
                       std::vector<double>(static_cast<std::size_t>(std::max(k_, 0)), 0.0))
{
}

OperatorMonomial::OperatorMonomial(int j_, int k_, cplx c, std::vector<double> ta,
                                   std::vector<double> tb)
    : j(j_), k(k_), coeff(c), timesA(std::move(ta)), timesB(std::move(tb))
{
    if (j < 0 || k < 0)
        throw UsageError("monomial powers must be non-negative");
    if (timesA.size() != static_cast<std::size_t>(j) || timesB.size() != static_cast<std::size_t>(k))
        throw UsageError("time tag count must match monomial powers");
}

AmplitudeTable apply_monomial(const AmplitudeTable& s, const OperatorMonomial& mono)
{
    AmplitudeTable out(s.order(), s.mode());
    const int P = s.order().value();
    for (int m = mono.j; m <= P; ++m) {
        for (int n = mono.k; n <= P; ++n) {
            if (!s.in_support(m, n))
                continue;
            const double ladder =
                std::sqrt(falling_factorial(m, mono.j) * falling_factorial(n, mono.k));
            out.set(m - mono.j, n - mono.k, mono.coeff * ladder * s.at(m, n));
        }
    }
    return out;
}

AmplitudeTable apply_monomial(const JointFockState& s, const OperatorMonomial& mono)
{
    return apply_monomial(s.table(), mono);
}

cplx inner_product(const AmplitudeTable& a, const AmplitudeTable& b)
{
    if (!(a.order() == b.order()))
        throw UsageError("inner product of tables with different truncation orders");
    cplx acc{};
    const int P = a.order().value();
    for (int m = 0; m <= P; ++m)
        for (int n = 0; n <= P; ++n)
            acc += std::conj(a.at(m, n)) * b.at(m, n);
    return acc;
}

} // namespace g2sim
