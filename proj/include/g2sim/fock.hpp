#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace g2sim {

using cplx = std::complex<double>;

inline constexpr int kMaxTruncation = 20;

// Exact n! for 0 <= n <= 20.
std::uint64_t factorial(int n);

// n!/(n-k)! computed in integers, then converted once.
double falling_factorial(int n, int k);

class TruncationOrder {
public:
    explicit TruncationOrder(int p);
    int value() const { return p_; }
    friend bool operator==(TruncationOrder, TruncationOrder) = default;

private:
    int p_;
};

// Joint keeps m + n <= P (the input laser truncated before the first beam
// splitter). PerArm keeps m <= P and n <= P independently; it exists only to
// compare against the closed forms.
enum class TruncationMode { Joint, PerArm };

// Dense (P+1)x(P+1) table of two-mode amplitudes; entries outside the
// support of the mode are always zero.
class AmplitudeTable {
public:
    AmplitudeTable(TruncationOrder order, TruncationMode mode);

    TruncationOrder order() const { return order_; }
    TruncationMode mode() const { return mode_; }
    int dim() const { return order_.value() + 1; }

    // Largest total photon number representable.
    int max_photons() const;
    bool in_support(int m, int n) const;

    cplx at(int m, int n) const;
    void set(int m, int n, cplx v);

private:
    TruncationOrder order_;
    TruncationMode mode_;
    std::vector<cplx> amp_;
};

// Amplitudes of the state after the first beam splitter,
// amp(m,n) = (alpha/2)^((m+n)/2) / sqrt(m! n!).
// The global e^{-alpha/2} and the truncated-state norm are deliberately
// omitted: every reported quantity is a ratio in which they cancel.
class JointFockState {
public:
    JointFockState(double alpha, AmplitudeTable table);

    double alpha() const { return alpha_; }
    TruncationOrder order() const { return table_.order(); }
    const AmplitudeTable& table() const { return table_; }
    cplx amp(int m, int n) const { return table_.at(m, n); }
    bool is_normalized() const { return false; }

private:
    double alpha_;
    AmplitudeTable table_;
};

JointFockState build_joint_state(double alpha, TruncationOrder P,
                                 TruncationMode mode = TruncationMode::Joint);

// coeff * a^j b^k with one time tag per annihilation factor.
struct OperatorMonomial {
    int j = 0;
    int k = 0;
    cplx coeff{1.0, 0.0};
    std::vector<double> timesA;
    std::vector<double> timesB;

    OperatorMonomial() = default;
    OperatorMonomial(int j, int k, cplx coeff);
    OperatorMonomial(int j, int k, cplx coeff, std::vector<double> timesA,
                     std::vector<double> timesB);
};

AmplitudeTable apply_monomial(const AmplitudeTable& s, const OperatorMonomial& mono);
AmplitudeTable apply_monomial(const JointFockState& s, const OperatorMonomial& mono);

cplx inner_product(const AmplitudeTable& a, const AmplitudeTable& b);

} // namespace g2sim
