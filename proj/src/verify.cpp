#include "ffk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "ffk/bounds.hpp"
#include "ffk/divisor_calc.hpp"
#include "ffk/errors.hpp"
#include "ffk/polyarith.hpp"

namespace ffk::verify {

using fermat::Cusp;
using fermat::FermatLabel;
using fermat::FermatModel;
using fermat::FermatParams;
using fiber::ComponentId;
using fiber::QDivisor;

namespace {

std::string tag(const FermatParams& q)
{
    return "(" + std::to_string(q.p) + "," + std::to_string(q.m) + ")";
}

std::string cusp_tag(const Cusp& c) { return "cusp (" + std::to_string(c.i) + "," + std::to_string(c.k) + ")"; }

FermatModel model_for(long p, long m) { return fermat::build_model(FermatParams::derive(p, m)); }

// Runs `body` and records elapsed time; an escaping exception becomes a failed check.
SuiteResult timed(std::string id, std::string title, double limit, const std::function<void(std::vector<Check>&)>& body)
{
    SuiteResult r{std::move(id), std::move(title), {}, 0.0, limit};
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r.checks);
    } catch (const std::exception& e) {
        r.checks.push_back({"exception", false, e.what()});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// Collects per-item mismatches into one check.
class Tally {
public:
    explicit Tally(std::string name) : name_(std::move(name)) {}

    void record(bool ok, const std::function<std::string()>& describe)
    {
        ++total_;
        if (ok) return;
        if (failed_++ == 0) first_ = describe();
    }

    Check finish() const
    {
        if (failed_ == 0) return {name_, true, std::to_string(total_) + " exact"};
        return {name_, false, std::to_string(failed_) + " of " + std::to_string(total_) + " fail; first: " + first_};
    }

private:
    std::string name_;
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
    std::string first_;
};

Check equal_check(const std::string& name, const Rational& got, const Rational& expected)
{
    const bool ok = got == expected;
    return {name, ok, ok ? to_string(got) : to_string(got) + " != " + to_string(expected)};
}

}  // namespace

bool SuiteResult::pass() const
{
    return within_time() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string SuiteResult::first_failure() const
{
    for (const auto& c : checks) {
        if (!c.pass) return c.name + ": " + c.detail;
    }
    if (!within_time()) {
        std::ostringstream out;
        out << "time " << seconds << " s exceeds " << time_limit << " s";
        return out.str();
    }
    return "";
}

const std::vector<std::pair<long, long>>& parameter_list()
{
    static const std::vector<std::pair<long, long>> list = {{3, 5}, {5, 3}, {3, 7}, {7, 3},
                                                            {5, 7}, {7, 5}, {3, 11}, {11, 3}};
    return list;
}

std::vector<Check> fiber_checks(const FermatModel& model)
{
    const auto& q = model.params;
    const std::string t = tag(q);
    std::vector<Check> out;

    const auto got = fermat::census(model);
    const auto want = fermat::expected_census(q);
    std::string census_detail;
    for (const auto& [kind, n] : got) {
        census_detail += std::string(census_detail.empty() ? "" : " ") + fermat::kind_name(kind) + "=" + std::to_string(n);
    }
    out.push_back({"census " + t, got == want, census_detail});

    for (const auto& c : fiber::validate(model.config)) {
        const std::string where = c.component ? " [" + model.label(*c.component).to_string() + "]" : "";
        out.push_back({c.name + " " + t, c.pass, c.detail + where});
    }

    out.push_back({"transversality " + t, fermat::transversality_check(model.config, q),
                   "2g-2 = " + std::to_string(2 * q.g - 2) + ", m^2p^2 - 3mp = " +
                       std::to_string(q.m * q.m * q.p * q.p - 3 * q.m * q.p)});

    std::set<ComponentId> targets;
    bool ends = true;
    for (const auto& cusp : model.cusps) {
        targets.insert(cusp.section.target);
        const auto& l = model.label(cusp.section.target);
        ends = ends && l.kind == fermat::Kind::Chain && l.j == 1;
    }
    std::size_t l1 = 0;
    for (const auto& l : model.labels) l1 += (l.kind == fermat::Kind::Chain && l.j == 1) ? 1 : 0;
    const auto n = static_cast<std::size_t>(3 * q.N);
    out.push_back({"cusp_bijection " + t, ends && model.cusps.size() == n && targets.size() == n && l1 == n,
                   std::to_string(model.cusps.size()) + " cusps onto " + std::to_string(l1) + " chain ends"});
    return out;
}

std::vector<Check> representative_checks(const FermatModel& model, const Cusp& cusp, bool printed)
{
    const auto& q = model.params;
    const std::string suffix = std::string(printed ? " printed " : " ") + tag(q);
    const std::size_t n = model.config.size();
    const auto rep = [&](ComponentId d) {
        return printed ? divisors::v_divisor_printed(model, d) : divisors::v_divisor(model, d);
    };

    std::vector<Rational> base(n);
    for (ComponentId c = 0; c < n; ++c) base[c] = fiber::a_number(model.config, c) / (2 * q.g - 2);

    Tally relation("pairing_relation" + suffix);
    Tally squares("self_intersection" + suffix);
    Tally cross("cusp_cross_term" + suffix);
    Tally gauge("solve_gauge" + suffix);

    const QDivisor vs = rep(cusp.section.target);
    const std::pair<ComponentId, Rational> gauge_value{model.fm(), make_rational(q.p - 2, 2 * q.g - 2)};

    for (ComponentId d = 0; d < n; ++d) {
        const QDivisor v = rep(d);
        const std::string dl = model.label(d).to_string();

        const auto pairs = fiber::pair_with_components(model.config, v);
        for (ComponentId c = 0; c < n; ++c) {
            const Rational want = c == d ? base[c] - make_rational(1, model.config.component(c).multiplicity) : base[c];
            relation.record(pairs[c] == want, [&] {
                return "D=" + dl + " C=" + model.label(c).to_string() + ": " + to_string(pairs[c]) +
                       " != " + to_string(want);
            });
        }

        Rational square = 0;
        for (const auto& [c, coeff] : v.coefficients()) square += coeff * pairs[c];
        const Rational sq_want = printed ? divisors::v_self_printed(model, d) : divisors::v_self_closed(model, d);
        squares.record(square == sq_want,
                       [&] { return dl + ": " + to_string(square) + " != " + to_string(sq_want); });

        const Rational x = fiber::pair(model.config, vs, v);
        const Rational x_want =
            printed ? divisors::vs_cross_printed(model, cusp, d) : divisors::vs_cross_closed(model, cusp, d);
        cross.record(x == x_want, [&] { return dl + ": " + to_string(x) + " != " + to_string(x_want); });

        std::map<ComponentId, Rational> targets;
        for (ComponentId c = 0; c < n; ++c) {
            if (base[c] != 0) targets.emplace(c, base[c]);
        }
        targets[d] -= make_rational(1, model.config.component(d).multiplicity);
        const QDivisor solved = fiber::solve_gauge(model.config, targets, gauge_value);
        gauge.record(solved == v, [&] {
            const QDivisor diff = solved - v;
            const auto& [c, delta] = *diff.coefficients().begin();
            return dl + ": coefficient of " + model.label(c).to_string() + " differs by " + to_string(delta);
        });
    }
    return {relation.finish(), squares.finish(), cross.finish(), gauge.finish()};
}

std::vector<Check> cusp_checks(const FermatModel& model, const Cusp& cusp)
{
    const auto& q = model.params;
    const std::string t = " " + tag(q) + " " + cusp_tag(cusp);
    const std::size_t n = model.config.size();
    std::vector<Check> out;

    {
        const auto pairs = fiber::pair_with_components(model.config, divisors::v_s(model, cusp));
        Tally vs_prop("vs_property" + t);
        for (ComponentId c = 0; c < n; ++c) {
            const Rational got = pairs[c] + (c == cusp.section.target ? 1 : 0);
            const Rational want = fiber::a_number(model.config, c) / (2 * q.g - 2);
            vs_prop.record(got == want, [&] { return model.label(c).to_string(); });
        }
        out.push_back(vs_prop.finish());
    }

    const QDivisor u = divisors::u_s(model, cusp);
    {
        const QDivisor from_pairs = divisors::u_s_from_pairings(model, cusp, divisors::UsDefinition::SelfSquares);
        out.push_back({"u_s_expansion" + t, from_pairs == u,
                       from_pairs == u ? "closed expansion equals the pairing definition" : "expansion mismatch"});
    }
    {
        const auto values = divisors::semipos_values(model, cusp, u);
        const auto it = std::min_element(values.begin(), values.end());
        const auto c = static_cast<ComponentId>(it - values.begin());
        out.push_back({"semipositivity" + t, *it >= 0,
                       "minimum " + to_string(*it) + " at " + model.label(c).to_string()});
    }
    {
        const auto defect = divisors::g_s_defect(model, cusp);
        out.push_back({"g_s_constraints" + t, !defect.has_value(),
                       defect ? "fails at " + model.label(*defect).to_string() : "S + G_S pairs to 0 off F_m, 1/p on F_m"});
        const QDivisor g = divisors::g_s(model, cusp);
        out.push_back(equal_check("g_s_square" + t, fiber::pair(model.config, g, g), divisors::g_s_sq_closed(q)));
    }
    {
        const QDivisor g = divisors::g_s(model, cusp);
        const QDivisor v = divisors::v_s(model, cusp);
        const Rational value =
            -2 * q.g * fiber::pair(model.config, g, g) + (2 * q.g - 2) * fiber::pair(model.config, v, v);
        out.push_back(equal_check("per_prime_geometric" + t, value, bounds::geometric_q(q.N, q.p)));
    }
    out.push_back(equal_check("vsussq" + t, divisors::vsussq_value(model, cusp, u), divisors::vsussq_closed(q)));
    out.push_back(equal_check("kus" + t, divisors::kus_value(model, u), divisors::kus_closed(q)));
    const auto beta = divisors::beta_values(model, cusp);
    out.push_back(equal_check("beta_closed_forms_agree" + t, beta.proposition, beta.alpha_form));
    out.push_back(equal_check("beta_graph_equals_closed" + t, beta.graph, beta.proposition));
    return out;
}

Check cusp_independence(const FermatModel& model)
{
    const auto& q = model.params;
    const std::vector<std::pair<long, long>> picks = {{1, 1}, {2, q.p}, {3 * q.m, 2}};
    std::vector<std::vector<Rational>> rows;
    for (const auto& [i, k] : picks) {
        const Cusp& cusp = model.cusp(i, k);
        const QDivisor g = divisors::g_s(model, cusp);
        const QDivisor v = divisors::v_s(model, cusp);
        const auto semi = divisors::semipos_values(model, cusp, divisors::u_s(model, cusp));
        const Rational g2 = fiber::pair(model.config, g, g);
        const Rational v2 = fiber::pair(model.config, v, v);
        rows.push_back({divisors::beta_values(model, cusp).graph, g2, v2, *std::min_element(semi.begin(), semi.end()),
                        -2 * q.g * g2 + (2 * q.g - 2) * v2});
    }
    const bool same = std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r == rows.front(); });
    return {"cusp_independence " + tag(q), same,
            same ? "beta_S, G_S^2, V_S^2, semipositivity minimum, geometric value equal at cusps (1,1), (2," +
                       std::to_string(q.p) + "), (" + std::to_string(3 * q.m) + ",2)"
                 : "values differ between cusps"};
}

SuiteResult polynomial_suite()
{
    return timed("AC1", "polynomial suite", 5.0, [](std::vector<Check>& out) {
        using poly::FpPoly;
        const FpPoly psi5 = FpPoly::reduce(poly::capital_psi(5), 5);
        out.push_back({"Psi_5 mod 5 = a^2 - a + 1", psi5 == FpPoly(5, {1, 4, 1}), "degree " + std::to_string(psi5.degree())});

        const FpPoly f2(7, {2, 1});
        const FpPoly f4(7, {4, 1});
        const FpPoly target = f2 * f2 * f4 * f4;
        const FpPoly psi7 = FpPoly::reduce(poly::capital_psi(7), 7);
        out.push_back({"Psi_7 mod 7 = unit (a+2)^2 (a+4)^2", psi7.monic() == target && !psi7.is_zero(),
                       "leading coefficient " + std::to_string(psi7.is_zero() ? 0 : psi7.coefficients().back())});

        for (const auto& [p, s] : std::vector<std::pair<unsigned, std::size_t>>{{5, 0}, {7, 2}, {3, 0}}) {
            const std::size_t got = poly::double_root_count(p);
            out.push_back({"double_root_count(" + std::to_string(p) + ") = " + std::to_string(s), got == s,
                           "got " + std::to_string(got)});
        }
        for (const auto& [p, m] : parameter_list()) {
            const bool ok = poly::fermat_split_check(static_cast<unsigned>(p), static_cast<unsigned>(m));
            out.push_back({"splitting identity (" + std::to_string(p) + "," + std::to_string(m) + ")", ok,
                           ok ? "exact" : "expansion differs"});
        }
    });
}

SuiteResult configuration_suite()
{
    return timed("AC2", "configuration suite", 10.0, [](std::vector<Check>& out) {
        for (const auto& [p, m] : parameter_list()) {
            for (auto& c : fiber_checks(model_for(p, m))) out.push_back(std::move(c));
        }
    });
}

SuiteResult divisor_suite()
{
    return timed("AC3", "divisor suite", 60.0, [](std::vector<Check>& out) {
        for (const auto& [p, m] : parameter_list()) {
            const FermatModel model = model_for(p, m);
            const Cusp& cusp = model.cusp(1, 1);
            for (auto& c : representative_checks(model, cusp, true)) out.push_back(std::move(c));
            for (auto& c : representative_checks(model, cusp, false)) out.push_back(std::move(c));
        }
    });
}

SuiteResult beta_suite()
{
    return timed("AC4", "beta / G_S suite", 0.0, [](std::vector<Check>& out) {
        for (const auto& [p, m] : parameter_list()) {
            const FermatModel model = model_for(p, m);
            for (auto& c : cusp_checks(model, model.cusp(1, 1))) out.push_back(std::move(c));
            out.push_back(cusp_independence(model));
            if (p == 5 && m == 3) {
                const auto beta = divisors::beta_values(model, model.cusp(1, 1));
                out.push_back(equal_check("beta_S (5,3) closed value", beta.proposition, make_rational(4413, 11648)));
            }
        }
        for (const auto& [p, m, want] : std::vector<std::tuple<long, long, Rational>>{
                 {5, 3, make_rational(-11, 15)}, {7, 3, make_rational(-5, 7)}}) {
            const FermatModel model = model_for(p, m);
            const QDivisor g = divisors::g_s(model, model.cusp(1, 1));
            out.push_back(equal_check("G_S^2 value " + tag(model.params), fiber::pair(model.config, g, g), want));
        }
    });
}

SuiteResult bounds_suite(long scan_max_N)
{
    return timed("AC5", "bounds suite", 60.0, [scan_max_N](std::vector<Check>& out) {
        for (const auto& [p, m] : parameter_list()) {
            const FermatModel model = model_for(p, m);
            const auto& q = model.params;
            const Cusp& cusp = model.cusp(1, 1);
            const QDivisor g = divisors::g_s(model, cusp);
            const QDivisor v = divisors::v_s(model, cusp);
            const Rational value =
                -2 * q.g * fiber::pair(model.config, g, g) + (2 * q.g - 2) * fiber::pair(model.config, v, v);
            out.push_back(equal_check("per_prime_geometric " + tag(q), value, bounds::geometric_q(q.N, p)));

            Rational coefficient;
            for (const auto& term : bounds::geometric_contribution(q.N).terms) {
                if (term.p == p) coefficient = term.coefficient;
            }
            out.push_back(equal_check("log p coefficient vs graph " + tag(q), coefficient,
                                      Rational(bounds::euler_phi(q.N)) / (p - 1) * value));
            if (p == 5 && m == 3) out.push_back(equal_check("Q(15,5)", value, make_rational(133, 60)));
        }
        const auto rows = bounds::scan(scan_max_N, 1);
        std::size_t bad = 0;
        long first_bad = 0;
        for (const auto& r : rows) {
            if (!(r.lower > r.simple)) {
                if (bad++ == 0) first_bad = r.N;
            }
        }
        out.push_back({"lower > phi(N) log N / (5N^2) for N <= " + std::to_string(scan_max_N), bad == 0 && !rows.empty(),
                       std::to_string(rows.size()) + " values of N" +
                           (bad ? ", " + std::to_string(bad) + " fail, first N = " + std::to_string(first_bad) : "")});
    });
}

SuiteResult fundamental_cycle_suite()
{
    return timed("AC6", "fundamental-cycle suite", 0.0, [](std::vector<Check>& out) {
        for (const auto& [p, m] : parameter_list()) {
            const FermatModel model = model_for(p, m);
            for (const auto& c : fermat::fundamental_cycle_checks(model)) {
                out.push_back({c.name + " " + tag(model.params), c.pass, c.detail});
            }
        }
    });
}

SuiteResult mutation_suite()
{
    return timed("AC7", "mutation sensitivity", 0.0, [](std::vector<Check>& out) {
        const FermatModel model = model_for(5, 3);
        const auto baseline = fiber::validate(model.config);
        out.push_back({"baseline validates", std::all_of(baseline.begin(), baseline.end(), [](const auto& c) { return c.pass; }),
                       "unmutated (5,3)"});
        const std::vector<std::pair<fermat::Mutation, std::string>> defects = {
            {fermat::Mutation::SelfIntersection, "self-intersection +1"},
            {fermat::Mutation::Adjacency, "adjacency dropped"},
            {fermat::Mutation::Multiplicity, "multiplicity +1"},
        };
        for (const auto& [mutation, name] : defects) {
            std::string caught;
            for (const auto& c : fiber::validate(fermat::mutate(model, mutation))) {
                if (!c.pass) caught += (caught.empty() ? "" : ", ") + c.name;
            }
            const int code = caught.empty() ? 0 : exit_code_for(ContractViolation(caught));
            out.push_back({"caught: " + name, code == 4,
                           caught.empty() ? "not detected" : "validate fails " + caught + ", exit " + std::to_string(code)});
        }
    });
}

std::vector<SuiteResult> run_suites(const std::string& name)
{
    if (name == "polynomial") return {polynomial_suite()};
    if (name == "fiber") return {configuration_suite(), fundamental_cycle_suite(), mutation_suite()};
    if (name == "divisor") return {divisor_suite(), beta_suite()};
    if (name == "bounds") return {bounds_suite()};
    if (name == "all") {
        return {polynomial_suite(), configuration_suite(), divisor_suite(), beta_suite(),
                bounds_suite(), fundamental_cycle_suite(), mutation_suite()};
    }
    throw ParameterError("unknown suite '" + name + "' (all, polynomial, fiber, divisor, bounds)");
}

}  // namespace ffk::verify
