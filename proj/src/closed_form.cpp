#include "g2sim/closed_form.hpp"

#include "g2sim/errors.hpp"
#include "g2sim/statistics.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <string>

namespace g2sim {

namespace {

// Some printed coefficients exceed 64 bits.
__extension__ typedef unsigned __int128 u128;

constexpr u128 operator""_z(const char* digits)
{
    u128 v = 0;
    for (const char* c = digits; *c; ++c)
        if (*c != '\'')
            v = v * 10 + static_cast<u128>(*c - '0');
    return v;
}

// Highest power first, as printed.
struct Poly {
    std::initializer_list<u128> c;

    long double operator()(long double a) const
    {
        long double r = 0.0L;
        for (u128 k : c)
            r = r * a + static_cast<long double>(k);
        return r;
    }
};

// Leading polynomials of the published forms. Most of them reappear inside
// the bracketed factors of the next orders, so each is written down once.
constexpr Poly A3{{129, 176, 128}};
constexpr Poly A4{{5047, 9288, 12672, 9216}};
constexpr Poly A5{{1221863, 2584064, 4755456, 6488064, 4718592}};
constexpr Poly A6{{110286921, 244372600, 516812800, 951091200, 1297612800, 943718400}};
constexpr Poly A7{{14313753121_z, 31762633248_z, 70379308800_z, 148842086400_z, 273914265600_z,
                   373712486400_z, 271790899200_z}};
constexpr Poly A8{{2561459619833_z, 5610991223432_z, 12450952233216_z, 27588689049600_z,
                   58346097868800_z, 107374392115200_z, 146495294668800_z, 106542032486400_z}};
constexpr Poly A9{{9710015233335279_z, 20983477205671936_z, 45965240102354944_z,
                   101998200694505472_z, 226006540694323200_z, 477971233741209600_z,
                   879611020207718400_z, 1200089453926809600_z, 872792330128588800_z}};
constexpr Poly A10{{2943285782347428829_z, 6292089871201260792_z, 13597293229275414528_z,
                    29785475586326003712_z, 66094834050039545856_z, 146452238369921433600_z,
                    309725359464303820800_z, 569987941094601523200_z, 777657966144572620800_z,
                    565569429923325542400_z}};

constexpr Poly B5{{3347, 5580, 6912, 4608}};
constexpr Poly C6{{1772967, 3427328, 5713920, 7077888, 4718592}};
constexpr Poly B7{{21489587, 44324175, 85683200, 142848000, 176947200, 117964800}};
constexpr Poly C8{{23489061277_z, 49512008448_z, 102122899200_z, 197414092800_z, 329121792000_z,
                   407686348800_z, 271790899200_z}};
constexpr Poly B9{{2176979199375_z, 4603856010292_z, 9704353655808_z, 20016088243200_z,
                   38693162188800_z, 64507871232000_z, 79906524364800_z, 53271016243200_z}};
constexpr Poly C10{{16913362714229743_z, 35667627202560000_z, 75429576872624128_z,
                    158996130296758272_z, 327943589776588800_z, 633948769301299200_z,
                    1056896962265088000_z, 1309188495192883200_z, 872792330128588800_z}};

constexpr Poly One{{1}};
constexpr Poly Zero{{0}};

// Each form, multiplied through by e^{-x} above and below, reads
//   g = (kn/kd) A(a) [n0 X(a) - n1 Y(a) q + n4 a Z(a) q^4] / [d0 U(a) - d1 V(a) q]^2
// with q = e^{-x/2}. Only decaying exponentials remain, so large x is safe.
struct Form {
    int kn, kd;
    const Poly* A;
    int n0; const Poly* X;
    int n1; const Poly* Y;
    int n4; const Poly* Z;
    int d0; const Poly* U;
    int d1; const Poly* V;
};

constexpr Poly P3_U{{11, 8}};
constexpr Poly P3_V{{6, 4}};
constexpr Poly P4_X{{11, 8}};
constexpr Poly P4_Y{{3, 2}};
constexpr Poly P4_U{{258, 352, 256}};
constexpr Poly P4_V{{155, 192, 128}};
constexpr Poly P5_X{{387, 528, 384}};
constexpr Poly P5_Z{{7, 4}};
constexpr Poly P6_Z{{213, 224, 128}};
constexpr Poly P7_Z{{1352, 1917, 2016, 1152}};
constexpr Poly P8_Z{{3318119, 5537792, 7852032, 8257536, 4718592}};
constexpr Poly P9_Z{{181840923, 331811900, 553779200, 785203200, 825753600, 471859200}};
constexpr Poly P10_Z{{54705318889_z, 104740371648_z, 191123654400_z, 318976819200_z,
                      452277043200_z, 475634073600_z, 271790899200_z}};

const Form kForms[] = {
    /* 3 */ {1, 4, &A3, 3, &One, 2, &One, 0, &Zero, 1, &P3_U, 1, &P3_V},
    /* 4 */ {2, 9, &A4, 6, &P4_X, 16, &P4_Y, 1, &One, 1, &P4_U, 1, &P4_V},
    /* 5 */ {9, 128, &A5, 1, &P5_X, 2, &P4_V, 2, &P5_Z, 1, &A4, 1, &B5},
    /* 6 */ {64, 25, &A6, 6, &A4, 8, &B5, 9, &P6_Z, 2, &A5, 1, &C6},
    /* 7 */ {25, 72, &A7, 3, &A5, 2, &C6, 256, &P7_Z, 1, &A6, 4, &B7},
    /* 8 */ {36, 49, &A8, 6, &A6, 32, &B7, 25, &P8_Z, 2, &A7, 1, &C8},
    /* 9 */ {49, 2048, &A9, 3, &A7, 2, &C8, 36, &P9_Z, 1, &A8, 1, &B9},
    /* 10 */ {1024, 81, &A10, 6, &A8, 8, &B9, 49, &P10_Z, 2, &A9, 1, &C10},
};

void check_form(int P, ProjectionBasis branch)
{
    if (!closed_form_available(P, branch))
        throw UsageError("no closed form for P=" + std::to_string(P) + " branch " +
                         std::string(to_string(branch)));
}

} // namespace

bool closed_form_available(int P, ProjectionBasis branch)
{
    if (P < 3 || P > 10)
        return false;
    return branch == ProjectionBasis::DD || P == 3;
}

ClosedForm::ClosedForm(int P, ProjectionBasis branch) : P_(P), branch_(branch)
{
    check_form(P, branch);
}

double ClosedForm::evaluate(double alpha, double q) const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw UsageError("closed forms need alpha > 0");
    const Form& f = kForms[P_ - 3];
    const long double a = alpha;
    // The AD branch of the P = 3 form is the DD one with the sign of every
    // odd power of e^{x/2} flipped.
    const long double s = branch_ == ProjectionBasis::AD ? -1.0L : 1.0L;
    const long double Q = s * static_cast<long double>(q);
    const long double Q4 = Q * Q * Q * Q;

    const long double num = f.n0 * (*f.X)(a) - f.n1 * (*f.Y)(a) * Q + f.n4 * a * (*f.Z)(a) * Q4;
    const long double den = f.d0 * (*f.U)(a) - f.d1 * (*f.V)(a) * Q;
    const long double pre = static_cast<long double>(f.kn) / f.kd * (*f.A)(a);
    return static_cast<double>(pre * num / (den * den));
}

double ClosedForm::operator()(double alpha, double x) const
{
    if (!(x >= 0.0))
        throw UsageError("closed forms need x >= 0");
    return evaluate(alpha, std::exp(-0.5 * x));
}

double ClosedForm::limit(double alpha) const
{
    return evaluate(alpha, 0.0);
}

double closed_form_value(int P, ProjectionBasis branch, double alpha, double x)
{
    return ClosedForm(P, branch)(alpha, x);
}

double tau_for_x(double x, const SpectralModel& spectral)
{
    if (!(x >= 0.0))
        throw UsageError("x must be >= 0");
    return std::sqrt(0.5 * x) / spectral.sigma();
}

VerifyGrid VerifyGrid::standard()
{
    VerifyGrid g;
    g.alphas = {0.05, 0.1, 0.5, 1.2};
    g.xs = {0.0, 0.25, 1.0, 4.0, 25.0};
    for (int P = 3; P <= 10; ++P)
        g.forms.push_back({P, ProjectionBasis::DD});
    g.forms.push_back({3, ProjectionBasis::AD});
    return g;
}

std::vector<VerifyRow> VerifyReport::worst_offenders(std::size_t n) const
{
    std::vector<VerifyRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const VerifyRow& a, const VerifyRow& b) { return a.relErr > b.relErr; });
    sorted.resize(std::min(n, sorted.size()));
    return sorted;
}

VerifyReport verify_engine(const VerifyGrid& grid, const SpectralModel& spectral,
                           TruncationMode truncation, int threads)
{
    for (const auto& f : grid.forms)
        check_form(f.P, f.branch);

    VerifyReport report;
    for (const auto& f : grid.forms)
        for (double a : grid.alphas)
            for (double x : grid.xs)
                report.rows.push_back({f.P, f.branch, a, x, 0.0, 0.0, 0.0});

    detail::parallel_for(report.rows.size(), threads, [&](std::size_t i) {
        VerifyRow& r = report.rows[i];
        CorrelationRequest req;
        req.alpha = r.alpha;
        req.P = TruncationOrder(r.P);
        req.basis = r.branch;
        req.spectral = spectral;
        req.tau = tau_for_x(r.x, spectral);
        req.tauc = 0.0;
        req.truncation = truncation;
        r.engine = g2_conditional(req).value;
        r.closedForm = closed_form_value(r.P, r.branch, r.alpha, r.x);
        r.relErr = std::abs(r.engine - r.closedForm) / r.closedForm;
    });

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (report.rows[i].relErr > report.maxRelErr) {
            report.maxRelErr = report.rows[i].relErr;
            report.worst = i;
        }
    }
    return report;
}

} // namespace g2sim
