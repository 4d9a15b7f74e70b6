#include "g2sim/cli.hpp"

#include "g2sim/closed_form.hpp"
#include "g2sim/csv.hpp"
#include "g2sim/errors.hpp"
#include "g2sim/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace g2sim::cli {

namespace {

constexpr double kNs = 1e-9;
constexpr std::size_t kMaxGridPoints = 10'000'000;
constexpr int kMaxThreads = 1024;
constexpr const char* kDefaultGrid = "-1000:1000:5";

double parse_double(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw UsageError("cannot parse " + what + " '" + s + "'");
    return v;
}

std::string basis_label(ProjectionBasis b)
{
    return std::string(to_string(b));
}

const char* status_label(RowStatus s)
{
    return s == RowStatus::Ok ? "ok" : "undefined";
}

std::string value_field(const SweepRow& r)
{
    return r.status == RowStatus::Ok ? csv::number(r.value) : "nan";
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& log)
{
    const SpectralModel spectral = c.spectral();
    const std::string sigma = csv::number(spectral.sigma());
    const std::string alpha = csv::number(c.alpha);
    const std::string pmax = csv::number(c.pmax);
    const std::string basis = basis_label(c.basis);

    SweepSpec spec;
    spec.base.alpha = c.alpha;
    spec.base.P = TruncationOrder(c.pmax);
    spec.base.basis = c.basis;
    spec.base.spectral = spectral;
    spec.base.truncation = c.truncation;
    spec.threads = c.threads;

    const auto tauNs = c.tau.values();
    const auto taucNs = c.tauc.values();
    auto toSeconds = [](const std::vector<double>& ns) {
        std::vector<double> s;
        s.reserve(ns.size());
        for (double v : ns)
            s.push_back(v * kNs);
        return s;
    };

    std::size_t undefined = 0;
    switch (c.subcommand) {
    case Subcommand::G2:
    case Subcommand::Map: {
        spec.kind = c.subcommand == Subcommand::G2 ? SweepKind::G2Tau : SweepKind::G2Map;
        spec.tau = toSeconds(tauNs);
        spec.tauc = toSeconds(taucNs);
        spec.base.tauc = taucNs.front() * kNs;
        const auto rows = sweep(spec);
        csv::Writer w(out, csv::kG2Header);
        for (const auto& r : rows) {
            const double tc = c.subcommand == Subcommand::G2 ? taucNs.front() : taucNs[r.taucIndex];
            w.row({csv::number(tauNs[r.tauIndex]), csv::number(tc), alpha, pmax, basis, sigma,
                   value_field(r), status_label(r.status)});
            undefined += r.status != RowStatus::Ok;
        }
        log << (c.subcommand == Subcommand::G2 ? "g2: " : "map: ") << rows.size() << " rows, " << undefined << " undefined\n";
        break;
    }
    case Subcommand::Rcd: {
        spec.kind = SweepKind::RcdTau;
        spec.tau = toSeconds(tauNs);
        const auto rows = sweep(spec);
        csv::Writer w(out, csv::kRcdHeader);
        for (const auto& r : rows) {
            w.row({csv::number(tauNs[r.tauIndex]), alpha, pmax, basis, sigma, value_field(r),
                   status_label(r.status)});
            undefined += r.status != RowStatus::Ok;
        }
        log << "rcd: " << rows.size() << " rows, " << undefined << " undefined\n";
        break;
    }
    case Subcommand::Converge: {
        spec.kind = SweepKind::Converge;
        spec.base.tau = c.tau_fixed * kNs;
        spec.base.tauc = taucNs.front() * kNs;
        for (int p = 1; p <= c.pmax; ++p)
            spec.orders.push_back(p);
        const auto rows = sweep(spec);
        // Low orders cannot hold the photons a coincidence needs; the table
        // starts at the first order with a defined ratio.
        std::size_t first = 0;
        while (first < rows.size() && rows[first].status != RowStatus::Ok)
            ++first;
        csv::Writer w(out, csv::kConvergeHeader);
        const std::string tauField = csv::number(c.tau_fixed);
        for (std::size_t i = first; i < rows.size(); ++i) {
            const auto& r = rows[i];
            w.row({csv::number(r.P), tauField, alpha, basis, sigma, value_field(r), status_label(r.status)});
            undefined += r.status != RowStatus::Ok;
        }
        log << "converge: " << rows.size() - first << " rows (orders below " << (first + 1)
            << " have no defined ratio), " << undefined << " undefined\n";
        break;
    }
    case Subcommand::Verify:
        throw InternalError("verify is not a sweep");
    }
    return kSuccess;
}

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& log)
{
    const auto report = verify_engine(VerifyGrid::standard(), c.spectral(), c.truncation, c.threads);

    csv::Writer w(out, csv::kVerifyHeader);
    for (const auto& r : report.rows)
        w.row({csv::number(r.P), basis_label(r.branch), csv::number(r.alpha), csv::number(r.x),
               csv::number(r.engine), csv::number(r.closedForm), csv::number(r.relErr)});

    const bool ok = report.passed(kVerifyTolerance);
    log << "closed-form verification: " << report.rows.size() << " points, max relative error "
        << std::scientific << std::setprecision(3) << report.maxRelErr << " (tolerance "
        << kVerifyTolerance << ") -> " << (ok ? "PASS" : "FAIL") << '\n';
    log << "worst offenders:\n";
    for (const auto& r : report.worst_offenders(5))
        log << "  P=" << r.P << ' ' << basis_label(r.branch) << " alpha=" << csv::number(r.alpha)
            << " x=" << csv::number(r.x) << " engine=" << std::setprecision(12) << r.engine
            << " closed_form=" << r.closedForm << " rel_err=" << std::setprecision(3) << r.relErr
            << '\n';
    log << std::defaultfloat;
    return ok ? kSuccess : kVerifyFailed;
}

} // namespace

GridNs GridNs::parse(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (!text.empty() && text.back() == ':')
        parts.push_back("");

    GridNs g;
    if (parts.size() == 1) {
        g.start = g.stop = parse_double(parts[0], "grid value");
        g.step = 1.0;
    } else if (parts.size() == 3) {
        g.start = parse_double(parts[0], "grid start");
        g.stop = parse_double(parts[1], "grid stop");
        g.step = parse_double(parts[2], "grid step");
    } else {
        throw UsageError("grid must be start:stop:step or a single value, got '" + text + "'");
    }
    if (!(g.step > 0.0))
        throw UsageError("grid step must be > 0");
    if (g.stop < g.start)
        throw UsageError("grid stop must not be below start");
    const double span = (g.stop - g.start) / g.step;
    if (span + 1.0 > static_cast<double>(kMaxGridPoints))
        throw UsageError("grid has too many points");
    return g;
}

std::vector<double> GridNs::values() const
{
    // Points are start + i*step (never accumulated), so they are reproducible.
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(start + static_cast<double>(i) * step);
    return v;
}

SpectralModel RunConfig::spectral() const
{
    if (sigma_rad_s)
        return SpectralModel(*sigma_rad_s);
    return SpectralModel::from_fwhm_mhz(fwhm_mhz.value_or(kDefaultFwhmMHz));
}

void RunConfig::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw UsageError("--alpha must be finite and > 0");
    if (pmax < 1 || pmax > kMaxTruncation)
        throw UsageError("--pmax must lie in [1, 20]");
    if (threads < 1 || threads > kMaxThreads)
        throw UsageError("--threads must lie in [1, 1024]");
    if (fwhm_mhz && sigma_rad_s)
        throw UsageError("--fwhm-mhz and --sigma-rad-s are mutually exclusive");
    if (fwhm_mhz && (!(*fwhm_mhz > 0.0) || !std::isfinite(*fwhm_mhz)))
        throw UsageError("--fwhm-mhz must be finite and > 0");
    if (sigma_rad_s && (!(*sigma_rad_s > 0.0) || !std::isfinite(*sigma_rad_s)))
        throw UsageError("--sigma-rad-s must be finite and > 0");
    if (!std::isfinite(tau_fixed))
        throw UsageError("--tau-fixed must be finite");
    for (const GridNs* g : {&tau, &tauc}) {
        if (!(g->step > 0.0) || g->stop < g->start || !std::isfinite(g->start) || !std::isfinite(g->stop))
            throw UsageError("grids need finite start <= stop and step > 0");
    }
    if (subcommand != Subcommand::Map && tauc.values().size() != 1)
        throw UsageError("--tauc takes a single value here; use 'map' for a tauc grid");
}

int run(const RunConfig& config, std::ostream& csv, std::ostream& log)
{
    config.validate();
    if (config.subcommand == Subcommand::Verify)
        return run_verify(config, csv, log);
    return run_sweep(config, csv, log);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Heralded second-order correlations of two interfering weak lasers"};
    app.name("g2sim");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file providing defaults; flags override it");

    RunConfig cfg;
    double fwhm = 0.0, sigma = 0.0;
    std::string basis = "dd", tau = kDefaultGrid, tauc = "0", truncation = "joint";

    app.add_option("--alpha", cfg.alpha, "mean photon number of the input laser")->capture_default_str();
    app.add_option("--pmax", cfg.pmax, "truncation order P (converge: largest P)")->capture_default_str();
    app.add_option("--basis", basis, "projection basis: dd or ad")->capture_default_str();
    auto* fwhmOpt = app.add_option("--fwhm-mhz", fwhm, "spectral FWHM in MHz (default 15/(2 pi))");
    auto* sigmaOpt = app.add_option("--sigma-rad-s", sigma, "spectral sigma in rad/s");
    fwhmOpt->excludes(sigmaOpt);
    app.add_option("--tau", tau, "tau grid start:stop:step in ns")->capture_default_str();
    app.add_option("--tauc", tauc, "tau_c in ns (map: start:stop:step)")->capture_default_str();
    app.add_option("--tau-fixed", cfg.tau_fixed, "converge: fixed tau in ns")->capture_default_str();
    app.add_option("--out", cfg.out, "CSV output path (default stdout)");
    app.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    app.add_option("--truncation", truncation, "joint (m+n<=P) or per-arm (m,n<=P)")->capture_default_str();

    auto* g2 = app.add_subcommand("g2", "heralded g2 over a tau grid at fixed tau_c");
    auto* rcd = app.add_subcommand("rcd", "cross-correlation R_cd over a tau grid");
    auto* converge = app.add_subcommand("converge", "heralded g2 versus truncation order");
    auto* map = app.add_subcommand("map", "heralded g2 over a (tau, tau_c) grid");
    auto* verify = app.add_subcommand("verify", "compare the engine against the closed forms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (g2->parsed())
            cfg.subcommand = Subcommand::G2;
        else if (rcd->parsed())
            cfg.subcommand = Subcommand::Rcd;
        else if (converge->parsed())
            cfg.subcommand = Subcommand::Converge;
        else if (map->parsed())
            cfg.subcommand = Subcommand::Map;
        else if (verify->parsed())
            cfg.subcommand = Subcommand::Verify;

        cfg.basis = parse_basis(basis);
        if (fwhmOpt->count())
            cfg.fwhm_mhz = fwhm;
        if (sigmaOpt->count())
            cfg.sigma_rad_s = sigma;
        cfg.tau = GridNs::parse(tau);
        if (cfg.subcommand == Subcommand::Map && !app.count("--tauc"))
            tauc = kDefaultGrid;
        cfg.tauc = GridNs::parse(tauc);
        if (truncation == "joint")
            cfg.truncation = TruncationMode::Joint;
        else if (truncation == "per-arm")
            cfg.truncation = TruncationMode::PerArm;
        else
            throw UsageError("--truncation must be joint or per-arm");

        auto unused = [&](const char* flag, bool applies) {
            if (!applies && app.count(flag))
                err << "note: " << flag << " is ignored by this subcommand\n";
        };
        const auto s = cfg.subcommand;
        unused("--tau", s == Subcommand::G2 || s == Subcommand::Rcd || s == Subcommand::Map);
        unused("--tauc", s != Subcommand::Rcd && s != Subcommand::Verify);
        unused("--tau-fixed", s == Subcommand::Converge);
        unused("--alpha", s != Subcommand::Verify);
        unused("--pmax", s != Subcommand::Verify);
        unused("--basis", s != Subcommand::Verify);

        cfg.validate();
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
        return kUsage;
    }

    try {
        if (cfg.out.empty())
            return run(cfg, out, err);
        std::ostringstream buffer;
        const int code = run(cfg, buffer, err);
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file)
            throw UsageError("cannot open output file '" + cfg.out + "'");
        file << buffer.str();
        if (!file.flush())
            throw UsageError("failed writing output file '" + cfg.out + "'");
        return code;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace g2sim::cli
