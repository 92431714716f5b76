#pragma once

/**
 * @file fermat_model.hpp
 * @brief The special fiber of the minimal regular model of x^N + y^N = z^N
 *        at a prime p | N, N = p m.
 *
 * Components: one F_m of multiplicity p, 3m components L^(i) of multiplicity
 * m, each carrying p chains L_{1,k}^(i) - ... - L_{m-1,k}^(i) of (-2)-curves,
 * m s components L_gamma^(i) with p leaves each, and the remaining L_delta^(i)
 * meeting F_m once. The 3N cusp sections meet the chain ends L_{1,k}^(i).
 */

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ffk/fiber_graph.hpp"

namespace ffk::fermat {

struct FermatParams {
    long p = 0;
    long m = 0;
    long s = 0;
    long N = 0;
    long g = 0;

    /// Validates and fills N and g. Throws ParameterError naming the violated condition.
    static FermatParams make(long p, long m, long s);
    /// As make(), with s = double_root_count(p).
    static FermatParams derive(long p, long m);

    long rho() const { return m * s; }
    long ldelta_count() const { return m * m * (p - 3) - 2 * m * s; }
};

enum class Kind { Fm, LXYZ, Chain, Lgamma, LgammaLeaf, Ldelta };

const char* kind_name(Kind kind);
inline constexpr Kind kAllKinds[] = {Kind::Fm, Kind::LXYZ, Kind::Chain, Kind::Lgamma, Kind::LgammaLeaf, Kind::Ldelta};

/// Component label. Chain uses (j, k, i); LgammaLeaf uses (j, i); LXYZ, Lgamma
/// and Ldelta use i; unused indices are 0.
struct FermatLabel {
    Kind kind = Kind::Fm;
    long i = 0;
    long k = 0;
    long j = 0;

    static FermatLabel fm() { return {Kind::Fm, 0, 0, 0}; }
    static FermatLabel lxyz(long i) { return {Kind::LXYZ, i, 0, 0}; }
    static FermatLabel chain(long j, long k, long i) { return {Kind::Chain, i, k, j}; }
    static FermatLabel lgamma(long i) { return {Kind::Lgamma, i, 0, 0}; }
    static FermatLabel leaf(long j, long i) { return {Kind::LgammaLeaf, i, 0, j}; }
    static FermatLabel ldelta(long i) { return {Kind::Ldelta, i, 0, 0}; }

    std::string to_string() const;
    friend auto operator<=>(const FermatLabel&, const FermatLabel&) = default;
};

struct Cusp {
    long i = 1;
    long k = 1;
    fiber::CuspSection section;
};

struct FermatModel {
    FermatParams params;
    fiber::FiberConfig config;
    std::vector<FermatLabel> labels;
    std::map<FermatLabel, fiber::ComponentId> index;
    /// Ordered by (i, k).
    std::vector<Cusp> cusps;

    fiber::ComponentId id(const FermatLabel& label) const;
    fiber::ComponentId fm() const { return id(FermatLabel::fm()); }
    const FermatLabel& label(fiber::ComponentId c) const { return labels.at(c); }
    /// Cusp meeting Chain(1, k, i). Throws ParameterError if out of range.
    const Cusp& cusp(long i, long k) const;
};

std::size_t expected_component_count(const FermatParams& params);

/// Builds the configuration; ids follow the lexicographic (kind, i, k, j) label order.
FermatModel build_model(const FermatParams& params, std::size_t component_cap = fiber::kDefaultComponentCap);

std::map<Kind, std::size_t> census(const FermatModel& model);
std::map<Kind, std::size_t> expected_census(const FermatParams& params);

/// I_C: sum over neighbours of multiplicity times intersection count.
long i_c(const fiber::FiberConfig& config, fiber::ComponentId c);

/// 2g - 2 = sum I_C + 2 sum d_C g_C - 2 sum d_C, and 2g - 2 = m^2 p^2 - 3mp.
bool transversality_check(const fiber::FiberConfig& config, const FermatParams& params);

/// p_a = 0 for every resolution chain and every L_gamma leaf.
std::vector<fiber::CheckResult> fundamental_cycle_checks(const FermatModel& model);

long genus_formula(long N);

/// Seeded defects for sensitivity tests.
enum class Mutation {
    SelfIntersection,  ///< Chain(1,1,1) self-intersection raised by one
    Adjacency,         ///< edge Chain(m-1,1,1) - LXYZ(1) removed
    Multiplicity,      ///< LXYZ(1) multiplicity raised by one
};
fiber::FiberConfig mutate(const FermatModel& model, Mutation mutation);

}  // namespace ffk::fermat
