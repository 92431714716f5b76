// ffk: command-line front end for the Fermat special-fiber library.
//
// Every command prints one JSON envelope (or CSV where requested) on stdout.
// Exit status: 0 ok, 2 bad parameters, 3 resource cap, 4 failed identity, 5 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ffk/bounds.hpp"
#include "ffk/divisor_calc.hpp"
#include "ffk/errors.hpp"
#include "ffk/fermat_model.hpp"
#include "ffk/polyarith.hpp"
#include "ffk/verify.hpp"

using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json checks_json(const std::vector<ffk::verify::Check>& checks)
{
    json out = json::array();
    for (const auto& c : checks) out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return out;
}

json envelope(const std::string& command, json inputs, json results, const std::vector<ffk::verify::Check>& checks)
{
    return {{"schema_version", "1"},
            {"command", command},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"checks", checks_json(checks)}};
}

// Returns 4 and names the first failing check on stderr, 0 when all pass.
int verdict(const std::vector<ffk::verify::Check>& checks)
{
    for (const auto& c : checks) {
        if (!c.pass) {
            std::cerr << "ffk: identity failed: " << c.name << ": " << c.detail << "\n";
            return 4;
        }
    }
    return 0;
}

std::size_t component_cap()
{
    const char* env = std::getenv("FFK_COMPONENT_CAP");
    if (env == nullptr || *env == '\0') return ffk::fiber::kDefaultComponentCap;
    std::size_t value = 0;
    const std::string text = env;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ffk::ParameterError("FFK_COMPONENT_CAP must be a non-negative integer, got '" + text + "'");
    }
    return value;
}

struct FiberSelection {
    long N = 0;
    long p = 0;
    long m = 0;
    std::optional<long> s;
};

// The (p, m, s) fibers named by --N or by --p/--m.
std::vector<ffk::fermat::FermatParams> select_fibers(const FiberSelection& sel)
{
    std::vector<ffk::fermat::FermatParams> out;
    if (sel.N != 0) {
        if (sel.p != 0 || sel.m != 0) throw ffk::ParameterError("give either --N or --p/--m, not both");
        if (sel.s) throw ffk::ParameterError("--s needs --p and --m");
        for (long p : ffk::bounds::factor_odd_squarefree(sel.N)) out.push_back(ffk::fermat::FermatParams::derive(p, sel.N / p));
        return out;
    }
    if (sel.p == 0 || sel.m == 0) throw ffk::ParameterError("give --N, or both --p and --m");
    out.push_back(sel.s ? ffk::fermat::FermatParams::make(sel.p, sel.m, *sel.s)
                        : ffk::fermat::FermatParams::derive(sel.p, sel.m));
    return out;
}

json selection_inputs(const FiberSelection& sel)
{
    json in = json::object();
    if (sel.N != 0) in["N"] = sel.N;
    if (sel.p != 0) in["p"] = sel.p;
    if (sel.m != 0) in["m"] = sel.m;
    if (sel.s) in["s"] = *sel.s;
    return in;
}

json params_json(const ffk::fermat::FermatParams& q)
{
    return {{"p", q.p}, {"m", q.m}, {"s", q.s}, {"rho", q.rho()}, {"N", q.N}, {"g", q.g}};
}

std::string q(const ffk::Rational& r) { return ffk::to_string(r); }

// ---------------------------------------------------------------------------

int cmd_rho(long p)
{
    if (p < 3 || !ffk::poly::is_prime(static_cast<std::uint64_t>(p))) {
        throw ffk::ParameterError("p = " + std::to_string(p) + " is not an odd prime");
    }
    const auto dr = ffk::poly::double_roots(static_cast<unsigned>(p));
    json roots = json::array();
    for (auto r : dr.roots) roots.push_back(r);
    json results = {{"s", dr.count}, {"rho_over_m", dr.count}, {"double_roots", roots}, {"psi_degree", p - 3}};
    std::vector<ffk::verify::Check> checks = {
        {"2s <= p - 3", 2 * static_cast<long>(dr.count) <= p - 3,
         "2s = " + std::to_string(2 * dr.count) + ", p - 3 = " + std::to_string(p - 3)}};
    std::cout << envelope("rho", {{"p", p}}, results, checks).dump(2) << "\n";
    return verdict(checks);
}

json component_rows(const ffk::fermat::FermatModel& model, const ffk::fiber::FiberConfig& config)
{
    json rows = json::array();
    for (ffk::fiber::ComponentId c = 0; c < config.size(); ++c) {
        const auto& l = model.label(c);
        const auto& comp = config.component(c);
        long degree = 0;
        for (const auto& [n, k] : config.neighbours(c)) degree += k;
        rows.push_back({{"label", l.to_string()},
                        {"kind", ffk::fermat::kind_name(l.kind)},
                        {"i", l.i},
                        {"k", l.k},
                        {"j", l.j},
                        {"multiplicity", comp.multiplicity},
                        {"genus", comp.genus},
                        {"self_intersection", comp.self_intersection},
                        {"degree_in_graph", degree}});
    }
    return rows;
}

int cmd_fiber(const FiberSelection& sel, const std::string& format, const std::string& table,
              const std::string& mutate)
{
    const auto fibers = select_fibers(sel);
    if (format == "csv" && fibers.size() != 1) {
        throw ffk::ParameterError("CSV output covers one fiber; use --p and --m");
    }
    std::optional<ffk::fermat::Mutation> mutation;
    if (mutate == "selfint") mutation = ffk::fermat::Mutation::SelfIntersection;
    if (mutate == "adjacency") mutation = ffk::fermat::Mutation::Adjacency;
    if (mutate == "multiplicity") mutation = ffk::fermat::Mutation::Multiplicity;

    json reports = json::array();
    std::vector<ffk::verify::Check> checks;
    std::string csv;
    for (const auto& params : fibers) {
        ffk::fermat::FermatModel model = ffk::fermat::build_model(params, component_cap());
        if (mutation) model.config = ffk::fermat::mutate(model, *mutation);
        for (auto& c : ffk::verify::fiber_checks(model)) checks.push_back(std::move(c));
        for (const auto& c : ffk::fermat::fundamental_cycle_checks(model)) {
            checks.push_back({c.name + " (" + std::to_string(params.p) + "," + std::to_string(params.m) + ")", c.pass,
                              c.detail});
        }
        json census = json::object();
        for (const auto& [kind, n] : ffk::fermat::census(model)) census[ffk::fermat::kind_name(kind)] = n;
        const json rows = component_rows(model, model.config);
        reports.push_back({{"params", params_json(params)},
                           {"component_count", model.config.size()},
                           {"cusp_count", model.cusps.size()},
                           {"census", census},
                           {"components", rows}});

        if (format == "csv") {
            std::ostringstream out;
            if (table == "census") {
                out << "kind,count\n";
                for (const auto& [kind, n] : ffk::fermat::census(model)) out << ffk::fermat::kind_name(kind) << "," << n << "\n";
            } else {
                out << "kind,i,k,j,multiplicity,genus,self_intersection,degree_in_graph\n";
                for (const auto& r : rows) {
                    out << r["kind"].get<std::string>() << "," << r["i"] << "," << r["k"] << "," << r["j"] << ","
                        << r["multiplicity"] << "," << r["genus"] << "," << r["self_intersection"] << ","
                        << r["degree_in_graph"] << "\n";
                }
            }
            csv = out.str();
        }
    }
    json inputs = selection_inputs(sel);
    if (mutation) inputs["mutate"] = mutate;
    if (format == "csv") {
        std::cout << csv;
    } else {
        std::cout << envelope("fiber", inputs, {{"fibers", reports}}, checks).dump(2) << "\n";
    }
    return verdict(checks);
}

json us_probe(const ffk::fermat::FermatModel& model, const ffk::fermat::Cusp& cusp)
{
    using namespace ffk::divisors;
    const auto& params = model.params;
    const ffk::fiber::QDivisor printed = u_s_printed(model, cusp);
    const std::vector<std::pair<std::string, ffk::fiber::QDivisor>> candidates = {
        {"printed_expansion", printed},
        {"pairing_self_squares", u_s_from_pairings(model, cusp, UsDefinition::SelfSquares)},
        {"pairing_cusp_square", u_s_from_pairings(model, cusp, UsDefinition::CuspSquare)},
    };
    json out = json::object();
    for (const auto& [name, u] : candidates) {
        const auto semi = semipos_values(model, cusp, u);
        const ffk::Rational vsussq = vsussq_value(model, cusp, u);
        const ffk::Rational kus = kus_value(model, u);
        out[name] = {{"equals_printed_expansion", u == printed},
                     {"semipositivity_min", q(*std::min_element(semi.begin(), semi.end()))},
                     {"vsussq", q(vsussq)},
                     {"kus", q(kus)},
                     {"beta", q(ffk::make_rational(1 - params.g, params.g) * vsussq + 2 * kus)}};
    }
    out["adopted"] = "pairing_self_squares";
    return out;
}

int cmd_divisors(const FiberSelection& sel, const std::string& cusp_text)
{
    long ci = 1;
    long ck = 1;
    if (!cusp_text.empty()) {
        char comma = 0;
        std::istringstream in(cusp_text);
        if (!(in >> ci >> comma >> ck) || comma != ',' || !in.eof()) {
            throw ffk::ParameterError("--cusp expects i,k, got '" + cusp_text + "'");
        }
    }
    const auto fibers = select_fibers(sel);
    json reports = json::array();
    std::vector<ffk::verify::Check> checks;
    for (const auto& params : fibers) {
        using namespace ffk::divisors;
        const auto model = ffk::fermat::build_model(params, component_cap());
        const auto& cusp = model.cusp(ci, ck);
        for (auto& c : ffk::verify::representative_checks(model, cusp, false)) checks.push_back(std::move(c));
        for (auto& c : ffk::verify::representative_checks(model, cusp, true)) checks.push_back(std::move(c));
        for (auto& c : ffk::verify::cusp_checks(model, cusp)) checks.push_back(std::move(c));
        checks.push_back(ffk::verify::cusp_independence(model));

        const auto ln = lambda_nu(params);
        const auto vs = v_s(model, cusp);
        const auto gs = g_s(model, cusp);
        const auto beta = beta_values(model, cusp);
        const auto semi = semipos_values(model, cusp, u_s(model, cusp));
        const ffk::Rational vs2 = ffk::fiber::pair(model.config, vs, vs);
        const ffk::Rational gs2 = ffk::fiber::pair(model.config, gs, gs);
        reports.push_back({{"params", params_json(params)},
                           {"cusp", {ci, ck}},
                           {"lambda", q(ln.lambda)},
                           {"nu", q(ln.nu)},
                           {"lambda_plus_nu", q(ln.sum())},
                           {"V_S_sq", q(vs2)},
                           {"G_S_sq", q(gs2)},
                           {"beta_S", {{"graph", q(beta.graph)}, {"proposition", q(beta.proposition)},
                                       {"alpha_form", q(beta.alpha_form)}}},
                           {"per_prime_geometric", q(-2 * params.g * gs2 + (2 * params.g - 2) * vs2)},
                           {"semipositivity_min", q(*std::min_element(semi.begin(), semi.end()))},
                           {"u_s_probe", us_probe(model, cusp)}});
    }
    json inputs = selection_inputs(sel);
    inputs["cusp"] = {ci, ck};
    std::cout << envelope("divisors", inputs, {{"fibers", reports}}, checks).dump(2) << "\n";
    return verdict(checks);
}

json bound_json(const ffk::bounds::BoundReport& r)
{
    json primes = json::array();
    for (const auto& rec : r.primes) {
        primes.push_back({{"p", rec.p},
                          {"m", rec.m},
                          {"s", rec.s ? json(*rec.s) : json(nullptr)},
                          {"rho", rec.rho ? json(*rec.rho) : json(nullptr)},
                          {"Q", q(rec.q)},
                          {"beta", q(rec.beta)},
                          {"alpha", rec.alpha.get_str()},
                          {"lower_coefficient", q(rec.lower_coefficient)}});
    }
    json terms = json::array();
    for (const auto& t : r.geometric.terms) terms.push_back({{"p", t.p}, {"coefficient", q(t.coefficient)}, {"value", t.value}});
    json upper = nullptr;
    if (r.upper) upper = {{"value", *r.upper}, {"conditional", true}};
    return {{"N", r.N},
            {"g", r.g},
            {"phi", r.phi},
            {"primes", primes},
            {"geometric_contribution", {{"terms", terms}, {"total", r.geometric.total}}},
            {"upper_bound", upper},
            {"lower_bound", r.lower},
            {"simple_lower", r.simple},
            {"ratio", r.lower / r.simple},
            {"mertens_diag", r.mertens}};
}

// Flattens a JSON value into key,value rows; arrays are indexed.
void flatten(const json& j, const std::string& prefix, std::ostream& out)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else if (j.is_string()) {
        out << prefix << "," << j.get<std::string>() << "\n";
    } else if (j.is_number_float()) {
        out << prefix << "," << format_double(j.get<double>()) << "\n";
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

int cmd_bounds(long N, std::optional<double> k1, std::optional<double> k2, const std::string& format)
{
    if (k1.has_value() != k2.has_value()) throw ffk::ParameterError("give both --kappa1 and --kappa2, or neither");
    std::optional<ffk::bounds::Kappa> kappa;
    if (k1) kappa = ffk::bounds::Kappa{*k1, *k2};
    const auto report = ffk::bounds::bound_report(N, kappa, ffk::poly::kDefaultDegreeCap);

    std::vector<ffk::verify::Check> checks;
    checks.push_back({"lower_bound > simple_lower", report.lower > report.simple,
                      format_double(report.lower) + " vs " + format_double(report.simple)});
    bool positive = true;
    for (const auto& t : report.geometric.terms) positive = positive && t.coefficient > 0;
    checks.push_back({"geometric coefficients positive", positive, ""});
    bool alpha_positive = true;
    for (const auto& rec : report.primes) alpha_positive = alpha_positive && rec.alpha > 0;
    checks.push_back({"alpha(N,p) > 0", alpha_positive, ""});

    json inputs = {{"N", N}};
    if (kappa) {
        inputs["kappa1"] = kappa->kappa1;
        inputs["kappa2"] = kappa->kappa2;
    }
    const json results = bound_json(report);
    if (format == "csv") {
        std::cout << "key,value\n";
        flatten(results, "", std::cout);
    } else {
        std::cout << envelope("bounds", inputs, results, checks).dump(2) << "\n";
    }
    return verdict(checks);
}

int cmd_scan(long max_N, const std::string& path, unsigned threads)
{
    if (max_N < 15) std::cerr << "ffk: warning: no odd squarefree composite N <= " << max_N << "\n";
    const auto rows = ffk::bounds::scan(max_N, threads);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "N,phi,geometric,lower_bound,simple_lower,ratio\n";
    std::size_t bad = 0;
    for (const auto& r : rows) {
        std::string geo;
        for (const auto& t : r.geometric) geo += (geo.empty() ? "" : ";") + std::to_string(t.p) + ":" + q(t.coefficient);
        out << r.N << "," << r.phi << "," << geo << "," << format_double(r.lower) << "," << format_double(r.simple)
            << "," << format_double(r.ratio) << "\n";
        if (!(r.lower > r.simple)) ++bad;
    }
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");

    std::vector<ffk::verify::Check> checks = {
        {"lower_bound > simple_lower on every row", bad == 0, std::to_string(bad) + " rows violate"}};
    json results = {{"rows", rows.size()}, {"out", path}};
    if (!rows.empty()) {
        double min_ratio = rows.front().ratio;
        long at = rows.front().N;
        for (const auto& r : rows) {
            if (r.ratio < min_ratio) {
                min_ratio = r.ratio;
                at = r.N;
            }
        }
        results["min_ratio"] = {{"N", at}, {"ratio", min_ratio}};
    }
    std::cout << envelope("scan", {{"max_N", max_N}}, results, checks).dump(2) << "\n";
    return verdict(checks);
}

int cmd_verify(const std::string& suite)
{
    const auto results = ffk::verify::run_suites(suite);
    json suites = json::array();
    std::vector<ffk::verify::Check> checks;
    for (const auto& r : results) {
        suites.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"checks", checks_json(r.checks)}});
        checks.push_back({r.id + " " + r.title, r.pass(), r.pass() ? "" : r.first_failure()});
    }
    std::cout << envelope("verify", {{"suite", suite}}, {{"suites", suites}}, checks).dump(2) << "\n";
    return verdict(checks);
}

void add_selection(CLI::App* cmd, FiberSelection& sel, bool with_s)
{
    cmd->add_option("--N", sel.N, "odd squarefree composite N (all primes p | N)");
    cmd->add_option("--p", sel.p, "odd prime p");
    cmd->add_option("--m", sel.m, "cofactor m = N/p");
    if (with_s) cmd->add_option("--s", sel.s, "override the double-root count");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Special fibers of Fermat curves: intersection identities and bounds"};
    app.require_subcommand(1);

    long rho_p = 0;
    auto* rho = app.add_subcommand("rho", "double-root count s of Psi mod p");
    rho->add_option("--p", rho_p, "odd prime")->required();

    FiberSelection fiber_sel;
    std::string fiber_format = "json";
    std::string fiber_table = "components";
    std::string fiber_mutate;
    auto* fiber = app.add_subcommand("fiber", "build and validate the special-fiber configuration");
    add_selection(fiber, fiber_sel, true);
    fiber->add_option("--format", fiber_format)->check(CLI::IsMember({"json", "csv"}));
    fiber->add_option("--table", fiber_table, "CSV table")->check(CLI::IsMember({"components", "census"}));
    fiber->add_option("--mutate", fiber_mutate, "seed a defect")
        ->check(CLI::IsMember({"selfint", "adjacency", "multiplicity"}));

    FiberSelection div_sel;
    std::string cusp;
    auto* divisors = app.add_subcommand("divisors", "vertical Q-divisor identities");
    add_selection(divisors, div_sel, true);
    divisors->add_option("--cusp", cusp, "cusp i,k meeting Chain(1,k,i); default 1,1");

    long bounds_N = 0;
    std::optional<double> kappa1;
    std::optional<double> kappa2;
    std::string bounds_format = "json";
    auto* bounds = app.add_subcommand("bounds", "upper and lower bounds for N");
    bounds->add_option("--N", bounds_N)->required();
    bounds->add_option("--kappa1", kappa1);
    bounds->add_option("--kappa2", kappa2);
    bounds->add_option("--format", bounds_format)->check(CLI::IsMember({"json", "csv"}));

    long max_N = 0;
    std::string out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    auto* scan = app.add_subcommand("scan", "lower bound scan over N");
    scan->add_option("--max-N", max_N)->required();
    scan->add_option("--out", out_path)->required();
    scan->add_option("--threads", threads)->check(CLI::PositiveNumber);

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the check suites");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "polynomial", "fiber", "divisor", "bounds"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*rho) return cmd_rho(rho_p);
        if (*fiber) return cmd_fiber(fiber_sel, fiber_format, fiber_table, fiber_mutate);
        if (*divisors) return cmd_divisors(div_sel, cusp);
        if (*bounds) return cmd_bounds(bounds_N, kappa1, kappa2, bounds_format);
        if (*scan) return cmd_scan(max_N, out_path, threads);
        if (*verify) return cmd_verify(suite);
    } catch (const IoError& e) {
        std::cerr << "ffk: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "ffk: " << e.what() << "\n";
        return ffk::exit_code_for(e);
    }
    return 0;
}
