#include "ffk/divisor_calc.hpp"

#include "ffk/bounds.hpp"
#include "ffk/errors.hpp"

namespace ffk::divisors {

using fermat::FermatLabel;
using fermat::Kind;

namespace {

Rational frac(long num, long den) { return make_rational(num, den); }

// (1/p) L^(i) + sum_{j,k} (j r / N) L_{j,k}^(i), scaled by `r`.
void add_lxyz_part(const FermatModel& model, QDivisor& v, long i, const Rational& r)
{
    const auto& q = model.params;
    v.add(model.id(FermatLabel::lxyz(i)), r / q.p);
    for (long k = 1; k <= q.p; ++k) {
        for (long j = 1; j < q.m; ++j) v.add(model.id(FermatLabel::chain(j, k, i)), r * frac(j, q.N));
    }
}

void add_gamma_part(const FermatModel& model, QDivisor& v, long i)
{
    const auto& q = model.params;
    v.add(model.id(FermatLabel::lgamma(i)), frac(1, q.p));
    for (long j = 1; j <= q.p; ++j) v.add(model.id(FermatLabel::leaf(j, i)), frac(1, 2 * q.p));
}

bool at_cusp_lxyz(const Cusp& cusp, const FermatLabel& l) { return l.i == cusp.i; }
bool at_cusp_chain(const Cusp& cusp, const FermatLabel& l) { return l.i == cusp.i && l.k == cusp.k; }

}  // namespace

LambdaNu lambda_nu(const FermatParams& q)
{
    const Rational base = frac(q.m * (q.p - 2), 2 * (q.g - 1));
    return {-base * base, frac(q.p - 2, q.p * (q.g - 1))};
}

QDivisor v_fm(const FermatModel& model)
{
    const auto& q = model.params;
    return QDivisor::single(model.fm(), frac(q.p - 2, 2 * q.g - 2));
}

QDivisor v_divisor(const FermatModel& model, ComponentId d)
{
    const auto& q = model.params;
    const FermatLabel& l = model.label(d);
    QDivisor v = v_fm(model);
    switch (l.kind) {
    case Kind::Fm: break;
    case Kind::Ldelta: v.add(d, frac(1, q.p)); break;
    case Kind::Lgamma: add_gamma_part(model, v, l.i); break;
    case Kind::LgammaLeaf:
        add_gamma_part(model, v, l.i);
        v.add(d, frac(1, 2));
        break;
    case Kind::LXYZ: add_lxyz_part(model, v, l.i, 1); break;
    case Kind::Chain: {
        const long r = l.j;
        add_lxyz_part(model, v, l.i, 1);
        for (long j = 1; j < q.m; ++j) {
            const Rational c = j < r ? frac(j * (q.m - r), r * q.m) : frac(q.m - j, q.m);
            v.add(model.id(FermatLabel::chain(j, l.k, l.i)), c);
        }
        break;
    }
    }
    return v;
}

QDivisor v_divisor_printed(const FermatModel& model, ComponentId d)
{
    const FermatLabel& l = model.label(d);
    if (l.kind != Kind::Chain) return v_divisor(model, d);
    const auto& q = model.params;
    const long r = l.j;
    QDivisor v = v_fm(model);
    add_lxyz_part(model, v, l.i, r);
    for (long j = 1; j < q.m; ++j) {
        const Rational c = j < r ? frac(j * (q.m - r), q.m) : frac(r * (q.m - j), q.m);
        v.add(model.id(FermatLabel::chain(j, l.k, l.i)), c);
    }
    return v;
}

Rational v_target(const FermatModel& model, ComponentId d, ComponentId c)
{
    Rational t = fiber::a_number(model.config, c) / (2 * model.params.g - 2);
    if (c == d) t -= frac(1, model.config.component(c).multiplicity);
    return t;
}

Rational v_self_closed(const FermatModel& model, ComponentId d)
{
    const auto& q = model.params;
    const auto ln = lambda_nu(q);
    const FermatLabel& l = model.label(d);
    switch (l.kind) {
    case Kind::Fm: return ln.lambda;
    case Kind::Ldelta: return ln.sum() - frac(1, q.p);
    case Kind::Lgamma: return ln.sum() - frac(1, 2 * q.p);
    case Kind::LgammaLeaf: return ln.sum() - frac(1 + q.p, 2 * q.p);
    case Kind::LXYZ: return ln.sum() - frac(1, q.N);
    case Kind::Chain: return ln.sum() - frac(1, q.N) - frac(q.m - l.j, l.j * q.m);
    }
    return 0;
}

Rational v_self_printed(const FermatModel& model, ComponentId d)
{
    const FermatLabel& l = model.label(d);
    if (l.kind != Kind::Chain) return v_self_closed(model, d);
    const auto& q = model.params;
    const auto ln = lambda_nu(q);
    const long r = l.j;
    return ln.lambda + r * ln.nu - frac(r + q.N - r * q.p, q.N);
}

Rational v_self(const FermatModel& model, ComponentId d)
{
    const Rational closed = v_self_closed(model, d);
    const QDivisor v = v_divisor(model, d);
    const Rational graph = fiber::pair(model.config, v, v);
    if (graph != closed) {
        throw ContractViolation("V_D^2 at " + model.label(d).to_string() + ": graph " + to_string(graph) +
                                " != closed form " + to_string(closed));
    }
    return closed;
}

Rational vs_cross_closed(const FermatModel& model, const Cusp& cusp, ComponentId d)
{
    const auto& q = model.params;
    const auto ln = lambda_nu(q);
    const FermatLabel& l = model.label(d);
    switch (l.kind) {
    case Kind::Fm: return ln.lambda + ln.nu / 2;
    case Kind::Ldelta:
    case Kind::Lgamma:
    case Kind::LgammaLeaf: return ln.sum();
    case Kind::LXYZ: return ln.sum() - (at_cusp_lxyz(cusp, l) ? frac(1, q.N) : Rational(0));
    case Kind::Chain: {
        Rational v = ln.sum();
        if (at_cusp_lxyz(cusp, l)) v -= frac(1, q.N);
        if (at_cusp_chain(cusp, l)) v -= frac(q.m - l.j, l.j * q.m);
        return v;
    }
    }
    return 0;
}

Rational vs_cross_printed(const FermatModel& model, const Cusp& cusp, ComponentId d)
{
    const FermatLabel& l = model.label(d);
    if (l.kind != Kind::Chain) return vs_cross_closed(model, cusp, d);
    const auto& q = model.params;
    const auto ln = lambda_nu(q);
    const long r = l.j;
    Rational v = ln.lambda + frac(r + 1, 2) * ln.nu;
    if (at_cusp_lxyz(cusp, l)) v -= frac(r, q.N);
    if (at_cusp_chain(cusp, l)) v -= frac(q.m - r, q.m);
    return v;
}

QDivisor v_s(const FermatModel& model, const Cusp& cusp) { return v_divisor(model, cusp.section.target); }

namespace {

QDivisor u_s_expansion(const FermatModel& model, const Cusp& cusp, bool printed)
{
    const auto& q = model.params;
    QDivisor u;
    for (ComponentId c = 0; c < model.config.size(); ++c) {
        const FermatLabel& l = model.label(c);
        switch (l.kind) {
        case Kind::Fm: break;
        case Kind::Ldelta:
        case Kind::Lgamma: u.set(c, frac(1, q.p)); break;
        case Kind::LgammaLeaf: u.set(c, printed ? frac(1 + q.p, q.p) : frac(1 + q.p, 2 * q.p)); break;
        case Kind::LXYZ: u.set(c, frac(at_cusp_lxyz(cusp, l) ? -1 : 1, q.p)); break;
        case Kind::Chain: {
            const long j = l.j;
            const Rational mu = frac(j - j * q.p + q.N, q.N);
            Rational v = mu;
            if (printed) v *= j;
            if (at_cusp_lxyz(cusp, l)) v -= frac(2 * j, q.N);
            if (at_cusp_chain(cusp, l)) v -= frac(2 * (q.m - j), q.m);
            u.set(c, v);
            break;
        }
        }
    }
    return u;
}

}  // namespace

QDivisor u_s(const FermatModel& model, const Cusp& cusp) { return u_s_expansion(model, cusp, false); }

QDivisor u_s_printed(const FermatModel& model, const Cusp& cusp) { return u_s_expansion(model, cusp, true); }

QDivisor u_s_from_pairings(const FermatModel& model, const Cusp& cusp, UsDefinition definition)
{
    const auto ln = lambda_nu(model.params);
    const QDivisor vs = v_s(model, cusp);
    const Rational vs_sq = fiber::pair(model.config, vs, vs);
    QDivisor u;
    for (ComponentId c = 0; c < model.config.size(); ++c) {
        const QDivisor vc = v_divisor(model, c);
        const Rational square = definition == UsDefinition::SelfSquares ? fiber::pair(model.config, vc, vc) : vs_sq;
        const long d = model.config.component(c).multiplicity;
        u.set(c, d * (2 * fiber::pair(model.config, vc, vs) - square) - d * ln.sum());
    }
    return u;
}

std::vector<Rational> semipos_values(const FermatModel& model, const Cusp& cusp, const QDivisor& u)
{
    std::vector<Rational> out = fiber::pair_with_components(model.config, u);
    for (ComponentId c = 0; c < out.size(); ++c) {
        out[c] = fiber::a_number(model.config, c) - out[c];
        if (c == cusp.section.target) out[c] += 2;
    }
    return out;
}

std::vector<std::pair<ComponentId, Rational>> semipos_check(const FermatModel& model, const Cusp& cusp)
{
    const auto values = semipos_values(model, cusp, u_s(model, cusp));
    std::vector<std::pair<ComponentId, Rational>> out;
    out.reserve(values.size());
    for (ComponentId c = 0; c < values.size(); ++c) out.emplace_back(c, values[c]);
    return out;
}

Rational vsussq_value(const FermatModel& model, const Cusp& cusp, const QDivisor& u)
{
    QDivisor w = 2 * v_s(model, cusp);
    w += u;
    return fiber::pair(model.config, w, w);
}

Rational vsussq_closed(const FermatParams& q)
{
    const Rational x = q.N * lambda_nu(q).sum();
    return -(x * x);
}

Rational kus_value(const FermatModel& model, const QDivisor& u) { return fiber::canonical_pair(model.config, u); }

Rational kus_closed(const FermatParams& q) { return (2 * q.m - 3) * q.N * lambda_nu(q).sum(); }

BetaValues beta_values(const FermatModel& model, const Cusp& cusp)
{
    const auto& q = model.params;
    const QDivisor u = u_s(model, cusp);
    BetaValues b;
    b.graph = frac(1 - q.g, q.g) * vsussq_value(model, cusp, u) + 2 * kus_value(model, u);
    const Rational x = q.N * lambda_nu(q).sum();
    b.proposition = x * (x * frac(q.g - 1, q.g) + 4 * q.m - 6);
    b.alpha_form = bounds::beta_sp_closed(q.N, q.p);
    return b;
}

Rational beta_s(const FermatModel& model, const Cusp& cusp)
{
    const BetaValues b = beta_values(model, cusp);
    if (b.proposition != b.alpha_form) {
        throw ContractViolation("beta_S closed forms disagree: " + to_string(b.proposition) + " vs " +
                                to_string(b.alpha_form));
    }
    if (b.graph != b.proposition) {
        throw ContractViolation("beta_S from the graph " + to_string(b.graph) + " != closed form " +
                                to_string(b.proposition));
    }
    return b.graph;
}

QDivisor g_s(const FermatModel& model, const Cusp& cusp) { return v_s(model, cusp) - v_fm(model); }

Rational g_s_sq_closed(const FermatParams& q) { return frac(-(q.N - q.p + 1), q.N); }

std::optional<ComponentId> g_s_defect(const FermatModel& model, const Cusp& cusp)
{
    const auto pairs = fiber::pair_with_components(model.config, g_s(model, cusp));
    const ComponentId fm = model.fm();
    for (ComponentId c = 0; c < pairs.size(); ++c) {
        Rational v = pairs[c];
        if (c == cusp.section.target) v += 1;
        const Rational expected = c == fm ? frac(1, model.params.p) : Rational(0);
        if (v != expected) return c;
    }
    return std::nullopt;
}

Rational per_prime_geometric(const FermatModel& model, const Cusp& cusp)
{
    const auto& q = model.params;
    const QDivisor g = g_s(model, cusp);
    const QDivisor v = v_s(model, cusp);
    const Rational value =
        -2 * q.g * fiber::pair(model.config, g, g) + (2 * q.g - 2) * fiber::pair(model.config, v, v);
    const Rational closed = bounds::geometric_q(q.N, q.p);
    if (value != closed) {
        throw ContractViolation("per-prime geometric value " + to_string(value) + " != Q(N,p) = " +
                                to_string(closed));
    }
    return value;
}

}  // namespace ffk::divisors
