#include "g2sim/sweep.hpp"

#include "g2sim/errors.hpp"

#include "parallel.hpp"

#include <map>
#include <memory>

namespace g2sim {

namespace {

void require_increasing(const std::vector<double>& v, const char* name)
{
    if (v.empty())
        throw UsageError(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw UsageError(std::string(name) + " grid must be strictly increasing");
}

std::vector<SweepRow> layout(const SweepSpec& spec)
{
    std::vector<SweepRow> rows;
    const int P = spec.base.P.value();
    switch (spec.kind) {
    case SweepKind::G2Tau:
    case SweepKind::RcdTau:
        require_increasing(spec.tau, "tau");
        for (std::size_t i = 0; i < spec.tau.size(); ++i)
            rows.push_back({i, 0, P, spec.tau[i], spec.base.tauc, 0.0, RowStatus::Ok, {}});
        break;
    case SweepKind::G2Map:
        require_increasing(spec.tau, "tau");
        require_increasing(spec.tauc, "tauc");
        for (std::size_t i = 0; i < spec.tau.size(); ++i)
            for (std::size_t k = 0; k < spec.tauc.size(); ++k)
                rows.push_back({i, k, P, spec.tau[i], spec.tauc[k], 0.0, RowStatus::Ok, {}});
        break;
    case SweepKind::Converge:
        if (spec.orders.empty())
            throw UsageError("truncation-order list is empty");
        for (std::size_t i = 0; i < spec.orders.size(); ++i) {
            if (i > 0 && spec.orders[i] <= spec.orders[i - 1])
                throw UsageError("truncation orders must be strictly increasing");
            TruncationOrder check(spec.orders[i]);
            rows.push_back({0, 0, check.value(), spec.base.tau, spec.base.tauc, 0.0, RowStatus::Ok, {}});
        }
        break;
    }
    return rows;
}

} // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec)
{
    if (spec.threads < 1)
        throw UsageError("thread count must be >= 1");
    auto rows = layout(spec);

    // States depend only on (alpha, P); build them up front and share them.
    std::map<int, std::unique_ptr<PreparedState>> prepared;
    for (const auto& r : rows)
        if (!prepared.count(r.P))
            prepared.emplace(r.P, std::make_unique<PreparedState>(spec.base.alpha, TruncationOrder(r.P),
                                                                  spec.base.truncation));

    auto evaluate = [&](SweepRow& row) {
        CorrelationRequest req = spec.base;
        req.P = TruncationOrder(row.P);
        req.tau = row.tau;
        req.tauc = row.tauc;
        const PreparedState& ps = *prepared.at(row.P);
        try {
            row.value = spec.kind == SweepKind::RcdTau ? r_cd(row.tau, req, ps)
                                                       : g2_conditional(req, ps).value;
            row.status = RowStatus::Ok;
        } catch (const UndefinedCorrelation& e) {
            row.value = 0.0;
            row.status = RowStatus::Undefined;
            row.message = e.what();
        }
    };

    detail::parallel_for(rows.size(), spec.threads, [&](std::size_t i) { evaluate(rows[i]); });
    return rows;
}

} // namespace g2sim
