#pragma once

/**
 * @file divisor_calc.hpp
 * @brief Vertical Q-divisors V_D, V_S, U_S, G_S on the Fermat special fiber
 *        and the intersection identities they satisfy.
 *
 * V_D is characterised by (V_D . C) = a_C/(2g-2) - delta_{D,C}/d_C with the
 * F_m coefficient fixed to (p-2)/(2g-2). For chain components L_{r,s} with
 * r >= 2 the commonly displayed representative pairs to -1 (not -1/r) with
 * L_{r,s}; v_divisor() returns the representative that satisfies the
 * characterisation, v_divisor_printed() the displayed one.
 */

#include <optional>
#include <utility>
#include <vector>

#include "ffk/fermat_model.hpp"
#include "ffk/fiber_graph.hpp"

namespace ffk::divisors {

using fermat::Cusp;
using fermat::FermatModel;
using fermat::FermatParams;
using fiber::ComponentId;
using fiber::QDivisor;

struct LambdaNu {
    Rational lambda;
    Rational nu;
    Rational sum() const { return lambda + nu; }
};

/// lambda = -(m(p-2)/(2(g-1)))^2, nu = (p-2)/(p(g-1)).
LambdaNu lambda_nu(const FermatParams& params);

QDivisor v_fm(const FermatModel& model);
QDivisor v_divisor(const FermatModel& model, ComponentId d);
QDivisor v_divisor_printed(const FermatModel& model, ComponentId d);

/// a_C/(2g-2) - delta_{D,C}/d_C.
Rational v_target(const FermatModel& model, ComponentId d, ComponentId c);

/// Closed form of V_D^2 for the v_divisor() representative.
Rational v_self_closed(const FermatModel& model, ComponentId d);
/// Displayed closed form; the chain case reads lambda + r nu - (r + N - rp)/N.
Rational v_self_printed(const FermatModel& model, ComponentId d);
/// Closed form, checked against the graph pairing (ContractViolation on mismatch).
Rational v_self(const FermatModel& model, ComponentId d);

/// Closed form of (V_S . V_D) for the v_divisor() representatives.
Rational vs_cross_closed(const FermatModel& model, const Cusp& cusp, ComponentId d);
/// Displayed closed form; chain case lambda + (r+1)nu/2 - r delta/N - (m-r) delta delta/m.
Rational vs_cross_printed(const FermatModel& model, const Cusp& cusp, ComponentId d);

/// V_S = V of the chain end met by the cusp.
QDivisor v_s(const FermatModel& model, const Cusp& cusp);

/// U_S = sum d_C (2(V_C . V_S) - V_C^2) C - (lambda + nu) F, in closed form.
QDivisor u_s(const FermatModel& model, const Cusp& cusp);
/// The displayed expansion: chain coefficient j mu_{j,1}, leaf coefficient (1+p)/p.
QDivisor u_s_printed(const FermatModel& model, const Cusp& cusp);

enum class UsDefinition {
    /// d_C (2(V_C . V_S) - V_C^2), shifted by -(lambda + nu) F.
    SelfSquares,
    /// d_C (2(V_C . V_S) - V_S^2), shifted by -(lambda + nu) F.
    CuspSquare,
};
/// U_S evaluated from its pairing definition on the graph.
QDivisor u_s_from_pairings(const FermatModel& model, const Cusp& cusp, UsDefinition definition);

/// a_C + 2(S . C) - (U . C) for every component.
std::vector<Rational> semipos_values(const FermatModel& model, const Cusp& cusp, const QDivisor& u);
std::vector<std::pair<ComponentId, Rational>> semipos_check(const FermatModel& model, const Cusp& cusp);

/// (2V_S + U)^2 and its closed form -(N(lambda+nu))^2.
Rational vsussq_value(const FermatModel& model, const Cusp& cusp, const QDivisor& u);
Rational vsussq_closed(const FermatParams& params);
/// (K . U) and its closed form (2m-3) N (lambda+nu).
Rational kus_value(const FermatModel& model, const QDivisor& u);
Rational kus_closed(const FermatParams& params);

struct BetaValues {
    Rational graph;
    Rational proposition;  ///< N(l+n)(N(l+n)(g-1)/g + 4m - 6)
    Rational alpha_form;   ///< alpha(N,p)(Np+2N-6p)(p-2)/((N-1)(N-2)(N-3)^3 p^4)
};
/// beta_S = (1-g)/g (2V_S+U_S)^2 + 2(K . U_S) from the graph, plus both closed forms.
BetaValues beta_values(const FermatModel& model, const Cusp& cusp);
/// Graph value, checked against both closed forms (ContractViolation on mismatch).
Rational beta_s(const FermatModel& model, const Cusp& cusp);

/// G_S = V_S - V_{F_m}.
QDivisor g_s(const FermatModel& model, const Cusp& cusp);
/// -(N - p + 1)/N.
Rational g_s_sq_closed(const FermatParams& params);
/// First component where (S + G_S . C) differs from 0 (C != F_m) or 1/p (C = F_m).
std::optional<ComponentId> g_s_defect(const FermatModel& model, const Cusp& cusp);

/// -2g G_S^2 + (2g-2) V_S^2, checked against Q(N, p) (ContractViolation on mismatch).
Rational per_prime_geometric(const FermatModel& model, const Cusp& cusp);

}  // namespace ffk::divisors
