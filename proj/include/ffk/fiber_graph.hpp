#pragma once

/**
 * @file fiber_graph.hpp
 * @brief Exact intersection theory on one special fiber.
 *
 * A fiber is a weighted graph: each vertex is an irreducible component with
 * multiplicity d_C, genus g_C and self-intersection C^2; each edge carries
 * the number of transversal intersection points. Vertical Q-divisors are
 * finite maps component -> Rational and pair bilinearly through this matrix.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffk/rational.hpp"

namespace ffk::fiber {

using ComponentId = std::size_t;

struct Component {
    long multiplicity = 1;
    long genus = 0;
    long self_intersection = 0;
};

/// Immutable special-fiber configuration with a sparse symmetric pairing matrix.
class FiberConfig {
public:
    class Builder;

    std::size_t size() const { return components_.size(); }
    const Component& component(ComponentId c) const;
    const std::vector<Component>& components() const { return components_; }
    /// Off-diagonal neighbours of c with their intersection counts, sorted by id.
    const std::vector<std::pair<ComponentId, long>>& neighbours(ComponentId c) const;
    /// Entry (a, b) of the pairing matrix (C^2 on the diagonal).
    long entry(ComponentId a, ComponentId b) const;
    /// Genus of the generic fiber.
    long generic_genus() const { return genus_; }

    /// Copy with one component replaced.
    FiberConfig with_component(ComponentId c, Component replacement) const;
    /// Copy with the (a, b) off-diagonal count set, 0 removes the edge.
    FiberConfig with_intersection(ComponentId a, ComponentId b, long count) const;

private:
    std::vector<Component> components_;
    std::vector<std::vector<std::pair<ComponentId, long>>> adjacency_;
    long genus_ = 0;
};

class FiberConfig::Builder {
public:
    Builder(long generic_genus, std::size_t component_cap);

    ComponentId add_component(Component c);
    /// Adds `count` transversal points between distinct components a and b.
    void add_intersection(ComponentId a, ComponentId b, long count = 1);
    FiberConfig build() &&;

private:
    FiberConfig config_;
    std::vector<std::map<ComponentId, long>> edges_;
    std::size_t cap_;
};

/// Default limit on the number of fiber components.
inline constexpr std::size_t kDefaultComponentCap = 1'000'000;

/// Vertical Q-divisor in normalized form: no zero coefficients are stored.
class QDivisor {
public:
    QDivisor() = default;

    static QDivisor single(ComponentId c, const Rational& coeff = 1);
    /// F_pi = sum of d_C * C.
    static QDivisor fiber(const FiberConfig& config);

    Rational coeff(ComponentId c) const;
    void set(ComponentId c, const Rational& value);
    void add(ComponentId c, const Rational& value);
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<ComponentId, Rational>& coefficients() const { return coeffs_; }

    QDivisor& operator+=(const QDivisor& other);
    QDivisor& operator-=(const QDivisor& other);
    QDivisor& operator*=(const Rational& s);
    friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
    friend QDivisor operator-(QDivisor a, const QDivisor& b) { return a -= b; }
    friend QDivisor operator*(const Rational& s, QDivisor a) { return a *= s; }
    friend bool operator==(const QDivisor& a, const QDivisor& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::map<ComponentId, Rational> coeffs_;
};

/// Closure of a horizontal section meeting exactly one vertical component transversally.
struct CuspSection {
    ComponentId target;
};

/// (D . C) for every component C, as a dense vector.
std::vector<Rational> pair_with_components(const FiberConfig& config, const QDivisor& d);
Rational pair(const FiberConfig& config, const QDivisor& d, const QDivisor& e);
Rational section_pair(const FiberConfig& config, const CuspSection& s, const QDivisor& d);

/// a_C = -C^2 + 2 g_C - 2, the canonical pairing (K . C).
Rational a_number(const FiberConfig& config, ComponentId c);
/// (K . D) = sum coeff_C(D) a_C.
Rational canonical_pair(const FiberConfig& config, const QDivisor& d);
/// Arithmetic genus 1 + (D^2 + K.D)/2 of a nonzero effective integral divisor.
Rational p_a_divisor(const FiberConfig& config, const QDivisor& d);

/// Rank of the pairing matrix, by exact sparse elimination.
std::size_t pairing_rank(const FiberConfig& config);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    /// Offending component, if the check localizes one.
    std::optional<ComponentId> component;
};

/// Symmetry, fiber orthogonality, kernel dimension one, sum d_C a_C = 2g - 2.
std::vector<CheckResult> validate(const FiberConfig& config);

/// Solves (V . C) = targets[C] for all C with coeff_{gauge.first}(V) = gauge.second.
/// Components missing from `targets` have target 0. Throws NoSolution when the
/// targets are not orthogonal to the kernel, ContractViolation when the
/// pairing matrix has corank above one.
QDivisor solve_gauge(const FiberConfig& config, const std::map<ComponentId, Rational>& targets,
                     std::pair<ComponentId, Rational> gauge);

}  // namespace ffk::fiber
