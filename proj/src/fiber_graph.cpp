#include "ffk/fiber_graph.hpp"

#include <algorithm>
#include <set>

#include "ffk/errors.hpp"

namespace ffk::fiber {

namespace {

// Exact sparse Gaussian elimination over Q. Pivots follow a Markowitz-style
// rule (shortest row, then least-populated column), so tree-shaped fibers
// are eliminated leaf-first with no fill-in.
struct SparseSystem {
    std::vector<std::map<std::size_t, Rational>> rows;
    std::vector<Rational> rhs;
    std::size_t columns = 0;
};

struct Elimination {
    std::size_t rank = 0;
    bool consistent = true;
    std::vector<Rational> solution;  // free columns set to zero
};

Elimination eliminate(SparseSystem sys)
{
    const std::size_t n_rows = sys.rows.size();
    if (sys.rhs.empty()) sys.rhs.assign(n_rows, Rational(0));

    std::vector<std::set<std::size_t>> col_rows(sys.columns);
    std::set<std::pair<std::size_t, std::size_t>> active;  // (row length, row)
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (const auto& [c, v] : sys.rows[r]) col_rows[c].insert(r);
        active.emplace(sys.rows[r].size(), r);
    }

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
    Elimination out;

    while (!active.empty()) {
        const std::size_t r = active.begin()->second;
        active.erase(active.begin());
        auto& row = sys.rows[r];
        if (row.empty()) {
            if (sys.rhs[r] != 0) out.consistent = false;
            continue;
        }
        std::size_t pivot_col = row.begin()->first;
        for (const auto& [c, v] : row) {
            if (col_rows[c].size() < col_rows[pivot_col].size()) pivot_col = c;
        }
        const Rational pivot = row.at(pivot_col);
        for (const auto& [c, v] : row) col_rows[c].erase(r);

        const std::vector<std::size_t> targets(col_rows[pivot_col].begin(), col_rows[pivot_col].end());
        for (const std::size_t r2 : targets) {
            auto& other = sys.rows[r2];
            active.erase({other.size(), r2});
            const Rational factor = other.at(pivot_col) / pivot;
            for (const auto& [c, v] : row) {
                auto [it, inserted] = other.try_emplace(c, 0);
                it->second -= factor * v;
                if (it->second == 0) {
                    other.erase(it);
                    col_rows[c].erase(r2);
                } else if (inserted) {
                    col_rows[c].insert(r2);
                }
            }
            sys.rhs[r2] -= factor * sys.rhs[r];
            active.emplace(other.size(), r2);
        }
        col_rows[pivot_col].clear();
        pivots.emplace_back(r, pivot_col);
    }

    out.rank = pivots.size();
    out.solution.assign(sys.columns, Rational(0));
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const auto& row = sys.rows[it->first];
        Rational acc = sys.rhs[it->first];
        for (const auto& [c, v] : row) {
            if (c != it->second) acc -= v * out.solution[c];
        }
        out.solution[it->second] = acc / row.at(it->second);
    }
    return out;
}

SparseSystem pairing_system(const FiberConfig& config)
{
    SparseSystem sys;
    sys.columns = config.size();
    sys.rows.resize(config.size());
    for (ComponentId c = 0; c < config.size(); ++c) {
        auto& row = sys.rows[c];
        if (config.component(c).self_intersection != 0) row[c] = config.component(c).self_intersection;
        for (const auto& [n, k] : config.neighbours(c)) row[n] = k;
    }
    return sys;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiberConfig

const Component& FiberConfig::component(ComponentId c) const
{
    if (c >= components_.size()) throw ParameterError("unknown component id " + std::to_string(c));
    return components_[c];
}

const std::vector<std::pair<ComponentId, long>>& FiberConfig::neighbours(ComponentId c) const
{
    if (c >= adjacency_.size()) throw ParameterError("unknown component id " + std::to_string(c));
    return adjacency_[c];
}

long FiberConfig::entry(ComponentId a, ComponentId b) const
{
    if (a == b) return component(a).self_intersection;
    const auto& nb = neighbours(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), std::pair<ComponentId, long>{b, 0},
                               [](const auto& x, const auto& y) { return x.first < y.first; });
    return (it != nb.end() && it->first == b) ? it->second : 0;
}

FiberConfig FiberConfig::with_component(ComponentId c, Component replacement) const
{
    FiberConfig copy = *this;
    copy.components_.at(c) = replacement;
    return copy;
}

FiberConfig FiberConfig::with_intersection(ComponentId a, ComponentId b, long count) const
{
    if (a == b) throw ParameterError("use with_component to change a self-intersection");
    FiberConfig copy = *this;
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        auto& nb = copy.adjacency_.at(x);
        auto it = std::find_if(nb.begin(), nb.end(), [y = y](const auto& e) { return e.first == y; });
        if (it != nb.end()) {
            if (count == 0) {
                nb.erase(it);
            } else {
                it->second = count;
            }
        } else if (count != 0) {
            nb.insert(std::upper_bound(nb.begin(), nb.end(), std::pair<ComponentId, long>{y, count},
                                       [](const auto& u, const auto& v) { return u.first < v.first; }),
                      {y, count});
        }
    }
    return copy;
}

FiberConfig::Builder::Builder(long generic_genus, std::size_t component_cap) : cap_(component_cap)
{
    config_.genus_ = generic_genus;
}

ComponentId FiberConfig::Builder::add_component(Component c)
{
    if (c.multiplicity < 1) throw ParameterError("component multiplicity must be >= 1");
    if (c.genus < 0) throw ParameterError("component genus must be >= 0");
    if (config_.components_.size() >= cap_) {
        throw CapExceeded("component count exceeds the cap " + std::to_string(cap_));
    }
    config_.components_.push_back(c);
    edges_.emplace_back();
    return config_.components_.size() - 1;
}

void FiberConfig::Builder::add_intersection(ComponentId a, ComponentId b, long count)
{
    if (a == b) throw ParameterError("intersection endpoints must differ");
    if (a >= edges_.size() || b >= edges_.size()) throw ParameterError("unknown component id");
    edges_[a][b] += count;
    edges_[b][a] += count;
}

FiberConfig FiberConfig::Builder::build() &&
{
    config_.adjacency_.resize(edges_.size());
    for (std::size_t c = 0; c < edges_.size(); ++c) {
        config_.adjacency_[c].assign(edges_[c].begin(), edges_[c].end());
    }
    return std::move(config_);
}

// ---------------------------------------------------------------------------
// QDivisor

QDivisor QDivisor::single(ComponentId c, const Rational& coeff)
{
    QDivisor d;
    d.set(c, coeff);
    return d;
}

QDivisor QDivisor::fiber(const FiberConfig& config)
{
    QDivisor d;
    for (ComponentId c = 0; c < config.size(); ++c) d.set(c, config.component(c).multiplicity);
    return d;
}

Rational QDivisor::coeff(ComponentId c) const
{
    auto it = coeffs_.find(c);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void QDivisor::set(ComponentId c, const Rational& value)
{
    if (value == 0) {
        coeffs_.erase(c);
    } else {
        coeffs_[c] = value;
    }
}

void QDivisor::add(ComponentId c, const Rational& value)
{
    if (value == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(c, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0) coeffs_.erase(it);
    }
}

QDivisor& QDivisor::operator+=(const QDivisor& other)
{
    for (const auto& [c, v] : other.coeffs_) add(c, v);
    return *this;
}

QDivisor& QDivisor::operator-=(const QDivisor& other)
{
    for (const auto& [c, v] : other.coeffs_) add(c, -v);
    return *this;
}

QDivisor& QDivisor::operator*=(const Rational& s)
{
    if (s == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [c, v] : coeffs_) v *= s;
    return *this;
}

// ---------------------------------------------------------------------------
// Pairings

std::vector<Rational> pair_with_components(const FiberConfig& config, const QDivisor& d)
{
    std::vector<Rational> out(config.size(), Rational(0));
    for (const auto& [c, v] : d.coefficients()) {
        out.at(c) += v * config.component(c).self_intersection;
        for (const auto& [n, k] : config.neighbours(c)) out[n] += v * k;
    }
    return out;
}

Rational pair(const FiberConfig& config, const QDivisor& d, const QDivisor& e)
{
    // Iterate over the smaller support.
    const QDivisor& a = d.coefficients().size() <= e.coefficients().size() ? d : e;
    const QDivisor& b = &a == &d ? e : d;
    Rational total = 0;
    for (const auto& [c, v] : a.coefficients()) {
        Rational row = b.coeff(c) * config.component(c).self_intersection;
        for (const auto& [n, k] : config.neighbours(c)) {
            auto it = b.coefficients().find(n);
            if (it != b.coefficients().end()) row += it->second * k;
        }
        total += v * row;
    }
    return total;
}

Rational section_pair(const FiberConfig& config, const CuspSection& s, const QDivisor& d)
{
    config.component(s.target);
    return d.coeff(s.target);
}

Rational a_number(const FiberConfig& config, ComponentId c)
{
    const Component& comp = config.component(c);
    return Rational(-comp.self_intersection + 2 * comp.genus - 2);
}

Rational canonical_pair(const FiberConfig& config, const QDivisor& d)
{
    Rational total = 0;
    for (const auto& [c, v] : d.coefficients()) total += v * a_number(config, c);
    return total;
}

Rational p_a_divisor(const FiberConfig& config, const QDivisor& d)
{
    if (d.is_zero()) throw ParameterError("arithmetic genus needs a nonzero divisor");
    for (const auto& [c, v] : d.coefficients()) {
        if (v < 0 || v.get_den() != 1) {
            throw ParameterError("arithmetic genus needs an effective integral divisor (component " +
                                 std::to_string(c) + " has coefficient " + to_string(v) + ")");
        }
    }
    return 1 + (pair(config, d, d) + canonical_pair(config, d)) / 2;
}

std::size_t pairing_rank(const FiberConfig& config) { return eliminate(pairing_system(config)).rank; }

std::vector<CheckResult> validate(const FiberConfig& config)
{
    std::vector<CheckResult> out;

    CheckResult symmetry{"matrix_symmetry", true, "", std::nullopt};
    for (ComponentId c = 0; c < config.size() && symmetry.pass; ++c) {
        for (const auto& [n, k] : config.neighbours(c)) {
            if (config.entry(n, c) != k) {
                symmetry.pass = false;
                symmetry.component = c;
                symmetry.detail = "entry (" + std::to_string(c) + "," + std::to_string(n) + ") differs from its transpose";
                break;
            }
        }
    }
    out.push_back(symmetry);

    CheckResult orth{"fiber_orthogonality", true, "", std::nullopt};
    const auto fiber_pairs = pair_with_components(config, QDivisor::fiber(config));
    for (ComponentId c = 0; c < config.size(); ++c) {
        if (fiber_pairs[c] != 0) {
            orth.pass = false;
            orth.component = c;
            orth.detail = "(F . C) = " + to_string(fiber_pairs[c]) + " at component " + std::to_string(c);
            break;
        }
    }
    out.push_back(orth);

    const std::size_t rank = pairing_rank(config);
    const std::size_t corank = config.size() - rank;
    out.push_back({"kernel_dimension", corank == 1, "corank " + std::to_string(corank), std::nullopt});

    Rational degree = 0;
    for (ComponentId c = 0; c < config.size(); ++c) degree += config.component(c).multiplicity * a_number(config, c);
    const Rational expected = 2 * config.generic_genus() - 2;
    out.push_back({"canonical_degree", degree == expected,
                   "sum d_C a_C = " + to_string(degree) + ", 2g-2 = " + to_string(expected), std::nullopt});
    return out;
}

QDivisor solve_gauge(const FiberConfig& config, const std::map<ComponentId, Rational>& targets,
                     std::pair<ComponentId, Rational> gauge)
{
    config.component(gauge.first);
    Rational weighted = 0;
    for (const auto& [c, t] : targets) weighted += config.component(c).multiplicity * t;
    if (weighted != 0) {
        throw NoSolution("targets are not orthogonal to the fiber: sum d_C t_C = " + to_string(weighted));
    }

    SparseSystem sys = pairing_system(config);
    sys.rhs.assign(config.size(), Rational(0));
    for (const auto& [c, t] : targets) sys.rhs.at(c) = t;
    sys.rows.push_back({{gauge.first, Rational(1)}});
    sys.rhs.push_back(gauge.second);

    const Elimination result = eliminate(std::move(sys));
    if (!result.consistent) throw NoSolution("pairing system is inconsistent for these targets");
    if (result.rank < config.size()) {
        throw ContractViolation("pairing matrix has corank above one (rank " + std::to_string(result.rank) +
                                " with gauge, " + std::to_string(config.size()) + " components)");
    }
    QDivisor v;
    for (ComponentId c = 0; c < config.size(); ++c) v.set(c, result.solution[c]);
    return v;
}

}  // namespace ffk::fiber
