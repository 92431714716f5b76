#include "ffk/fermat_model.hpp"

#include <algorithm>
#include <numeric>

#include "ffk/errors.hpp"
#include "ffk/polyarith.hpp"

namespace ffk::fermat {

using fiber::ComponentId;

namespace {

bool squarefree(long n)
{
    for (long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
    }
    return true;
}

}  // namespace

FermatParams FermatParams::make(long p, long m, long s)
{
    if (p < 3 || !poly::is_prime(static_cast<std::uint64_t>(p))) {
        throw ParameterError("p = " + std::to_string(p) + " is not an odd prime");
    }
    if (m < 1) throw ParameterError("m must be positive");
    if (m == 1) {
        throw ParameterError("m = 1 (N prime) is not supported: the model differs for prime exponents");
    }
    const long N = p * m;
    if (m % 2 == 0) throw ParameterError("N = " + std::to_string(N) + " is even");
    if (std::gcd(p, m) != 1 || !squarefree(m)) {
        throw ParameterError("N = " + std::to_string(N) + " is not squarefree");
    }
    if (s < 0 || 2 * s > p - 3) {
        throw ParameterError("s = " + std::to_string(s) + " violates 0 <= 2s <= p - 3");
    }
    return FermatParams{p, m, s, N, genus_formula(N)};
}

FermatParams FermatParams::derive(long p, long m)
{
    if (p < 3 || !poly::is_prime(static_cast<std::uint64_t>(p))) {
        throw ParameterError("p = " + std::to_string(p) + " is not an odd prime");
    }
    return make(p, m, static_cast<long>(poly::double_root_count(static_cast<unsigned>(p))));
}

const char* kind_name(Kind kind)
{
    switch (kind) {
    case Kind::Fm: return "Fm";
    case Kind::LXYZ: return "LXYZ";
    case Kind::Chain: return "Chain";
    case Kind::Lgamma: return "Lgamma";
    case Kind::LgammaLeaf: return "LgammaLeaf";
    case Kind::Ldelta: return "Ldelta";
    }
    return "?";
}

std::string FermatLabel::to_string() const
{
    const std::string name = kind_name(kind);
    switch (kind) {
    case Kind::Fm: return name;
    case Kind::Chain:
        return name + "(" + std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(i) + ")";
    case Kind::LgammaLeaf: return name + "(" + std::to_string(j) + "," + std::to_string(i) + ")";
    default: return name + "(" + std::to_string(i) + ")";
    }
}

ComponentId FermatModel::id(const FermatLabel& label) const
{
    auto it = index.find(label);
    if (it == index.end()) throw ParameterError("no component " + label.to_string());
    return it->second;
}

const Cusp& FermatModel::cusp(long i, long k) const
{
    const long m3 = 3 * params.m;
    if (i < 1 || i > m3 || k < 1 || k > params.p) {
        throw ParameterError("cusp (" + std::to_string(i) + "," + std::to_string(k) +
                             ") out of range: i in [1, " + std::to_string(m3) + "], k in [1, " +
                             std::to_string(params.p) + "]");
    }
    return cusps.at(static_cast<std::size_t>((i - 1) * params.p + (k - 1)));
}

std::size_t expected_component_count(const FermatParams& q)
{
    std::size_t total = 0;
    for (const auto& [kind, n] : expected_census(q)) total += n;
    return total;
}

std::map<Kind, std::size_t> expected_census(const FermatParams& q)
{
    const auto n = [](long v) { return static_cast<std::size_t>(v); };
    return {
        {Kind::Fm, 1},
        {Kind::LXYZ, n(3 * q.m)},
        {Kind::Chain, n(3 * q.m * q.p * (q.m - 1))},
        {Kind::Lgamma, n(q.m * q.s)},
        {Kind::LgammaLeaf, n(q.p * q.m * q.s)},
        {Kind::Ldelta, n(q.ldelta_count())},
    };
}

FermatModel build_model(const FermatParams& q, std::size_t component_cap)
{
    const std::size_t total = expected_component_count(q);
    if (total > component_cap) {
        throw CapExceeded("configuration for (p, m) = (" + std::to_string(q.p) + ", " + std::to_string(q.m) +
                          ") has " + std::to_string(total) + " components, above the cap " +
                          std::to_string(component_cap));
    }

    FermatModel model;
    model.params = q;
    auto& labels = model.labels;
    labels.reserve(total);
    labels.push_back(FermatLabel::fm());
    for (long i = 1; i <= 3 * q.m; ++i) {
        labels.push_back(FermatLabel::lxyz(i));
        for (long k = 1; k <= q.p; ++k) {
            for (long j = 1; j < q.m; ++j) labels.push_back(FermatLabel::chain(j, k, i));
        }
    }
    for (long i = 1; i <= q.rho(); ++i) {
        labels.push_back(FermatLabel::lgamma(i));
        for (long j = 1; j <= q.p; ++j) labels.push_back(FermatLabel::leaf(j, i));
    }
    for (long i = 1; i <= q.ldelta_count(); ++i) labels.push_back(FermatLabel::ldelta(i));
    std::sort(labels.begin(), labels.end());

    fiber::FiberConfig::Builder builder(q.g, component_cap);
    for (const auto& label : labels) {
        fiber::Component c;
        switch (label.kind) {
        case Kind::Fm: c = {q.p, (q.m - 1) * (q.m - 2) / 2, -q.m * q.m}; break;
        case Kind::LXYZ: c = {q.m, 0, -q.p}; break;
        case Kind::Chain: c = {label.j, 0, -2}; break;
        case Kind::Lgamma: c = {2, 0, -q.p}; break;
        case Kind::LgammaLeaf: c = {1, 0, -2}; break;
        case Kind::Ldelta: c = {1, 0, -q.p}; break;
        }
        const ComponentId id = builder.add_component(c);
        model.index.emplace(label, id);
    }

    const ComponentId fm = model.index.at(FermatLabel::fm());
    for (const auto& label : labels) {
        const ComponentId id = model.index.at(label);
        switch (label.kind) {
        case Kind::Fm: break;
        case Kind::LXYZ:
        case Kind::Lgamma:
        case Kind::Ldelta: builder.add_intersection(id, fm); break;
        case Kind::Chain: {
            const FermatLabel next = label.j + 1 < q.m ? FermatLabel::chain(label.j + 1, label.k, label.i)
                                                       : FermatLabel::lxyz(label.i);
            builder.add_intersection(id, model.index.at(next));
            break;
        }
        case Kind::LgammaLeaf: builder.add_intersection(id, model.index.at(FermatLabel::lgamma(label.i))); break;
        }
    }
    model.config = std::move(builder).build();

    for (long i = 1; i <= 3 * q.m; ++i) {
        for (long k = 1; k <= q.p; ++k) {
            model.cusps.push_back({i, k, {model.index.at(FermatLabel::chain(1, k, i))}});
        }
    }
    return model;
}

std::map<Kind, std::size_t> census(const FermatModel& model)
{
    std::map<Kind, std::size_t> out;
    for (const Kind kind : kAllKinds) out[kind] = 0;
    for (const auto& label : model.labels) ++out[label.kind];
    return out;
}

long i_c(const fiber::FiberConfig& config, ComponentId c)
{
    long total = 0;
    for (const auto& [n, count] : config.neighbours(c)) total += config.component(n).multiplicity * count;
    return total;
}

bool transversality_check(const fiber::FiberConfig& config, const FermatParams& q)
{
    long sum_i = 0;
    long sum_dg = 0;
    long sum_d = 0;
    for (ComponentId c = 0; c < config.size(); ++c) {
        const auto& comp = config.component(c);
        sum_i += i_c(config, c);
        sum_dg += comp.multiplicity * comp.genus;
        sum_d += comp.multiplicity;
    }
    const long lhs = 2 * config.generic_genus() - 2;
    return lhs == sum_i + 2 * sum_dg - 2 * sum_d && lhs == q.m * q.m * q.p * q.p - 3 * q.m * q.p;
}

std::vector<fiber::CheckResult> fundamental_cycle_checks(const FermatModel& model)
{
    const auto& q = model.params;
    fiber::CheckResult chains{"chain_fundamental_cycle", true, "", std::nullopt};
    for (long i = 1; i <= 3 * q.m && chains.pass; ++i) {
        for (long k = 1; k <= q.p; ++k) {
            fiber::QDivisor z;
            for (long j = 1; j < q.m; ++j) z.add(model.id(FermatLabel::chain(j, k, i)), 1);
            const Rational pa = fiber::p_a_divisor(model.config, z);
            if (pa != 0) {
                chains.pass = false;
                chains.component = model.id(FermatLabel::chain(1, k, i));
                chains.detail = "p_a = " + to_string(pa) + " on chain k=" + std::to_string(k) +
                                " of LXYZ(" + std::to_string(i) + ")";
                break;
            }
        }
    }
    if (chains.pass) chains.detail = std::to_string(3 * q.N) + " chains, p_a = 0";

    fiber::CheckResult leaves{"leaf_fundamental_cycle", true, "", std::nullopt};
    std::size_t n_leaves = 0;
    for (ComponentId c = 0; c < model.config.size(); ++c) {
        if (model.label(c).kind != Kind::LgammaLeaf) continue;
        ++n_leaves;
        const Rational pa = fiber::p_a_divisor(model.config, fiber::QDivisor::single(c));
        if (pa != 0) {
            leaves.pass = false;
            leaves.component = c;
            leaves.detail = "p_a = " + to_string(pa) + " at " + model.label(c).to_string();
            break;
        }
    }
    if (leaves.pass) leaves.detail = std::to_string(n_leaves) + " leaves, p_a = 0";
    return {chains, leaves};
}

long genus_formula(long N)
{
    if (N < 3) throw ParameterError("genus formula needs N >= 3");
    return (N - 1) * (N - 2) / 2;
}

fiber::FiberConfig mutate(const FermatModel& model, Mutation mutation)
{
    const long m = model.params.m;
    switch (mutation) {
    case Mutation::SelfIntersection: {
        const ComponentId c = model.id(FermatLabel::chain(1, 1, 1));
        fiber::Component comp = model.config.component(c);
        comp.self_intersection += 1;
        return model.config.with_component(c, comp);
    }
    case Mutation::Adjacency:
        return model.config.with_intersection(model.id(FermatLabel::chain(m - 1, 1, 1)),
                                              model.id(FermatLabel::lxyz(1)), 0);
    case Mutation::Multiplicity: {
        const ComponentId c = model.id(FermatLabel::lxyz(1));
        fiber::Component comp = model.config.component(c);
        comp.multiplicity += 1;
        return model.config.with_component(c, comp);
    }
    }
    return model.config;
}

}  // namespace ffk::fermat
