#pragma once

/**
 * @file bounds.hpp
 * @brief Bounds for the arithmetic self-intersection of the dualizing sheaf
 *        of the Fermat curve F_N, assembled over the primes p | N.
 *
 * Every per-prime quantity is an exact rational; floating point enters only
 * when the coefficient of log p is multiplied out.
 */

#include <optional>
#include <vector>

#include "ffk/rational.hpp"

namespace ffk::bounds {

/// Prime factors of an odd squarefree composite N, increasing. ParameterError
/// names the violated condition (unit, even, prime, squareful).
std::vector<long> factor_odd_squarefree(long N);

long euler_phi(const std::vector<long>& primes);
long euler_phi(long N);

/// (3N^2 - 2Np - 10N + 6p - 6 - 4m^2 + 12m) / (N(N-3)), m = N/p.
Rational geometric_q(long N, long p);
/// 4N^4p - 6N^3p^2 - 24N^3p + 37N^2p^2 + 44N^2p - 72Np^2 - 4N^2 - 12Np + 36p^2.
Integer alpha(long N, long p);
/// alpha(N,p)(Np + 2N - 6p)(p - 2) / ((N-1)(N-2)(N-3)^3 p^4).
Rational beta_sp_closed(long N, long p);

struct GeometricTerm {
    long p = 0;
    /// Coefficient of log p: phi(N)/phi(p) * Q(N, p).
    Rational coefficient;
    double value = 0.0;
};

struct Geometric {
    std::vector<GeometricTerm> terms;
    double total = 0.0;
};

Geometric geometric_contribution(long N);

/// (2g-2)(phi(N)(k1 log N + k2) + geometric). Each kappa finite and >= 0, k1 + k2 > 0.
double upper_bound(long N, double kappa1, double kappa2);
/// phi(N) sum_p beta_sp_closed(N,p)/(p-1) log p.
double lower_bound(long N);
/// phi(N) log N / (5 N^2).
double simple_lower(long N);
/// sum_p log p / (p-1).
double mertens_diag(long N);

struct PrimeRecord {
    long p = 0;
    long m = 0;
    /// Double-root count; absent when p is above the polynomial degree cap.
    std::optional<long> s;
    std::optional<long> rho;
    Rational q;
    Rational beta;
    Integer alpha;
    /// phi(N)/(p-1) * beta, the coefficient of log p in the lower bound.
    Rational lower_coefficient;
};

struct BoundReport {
    long N = 0;
    long g = 0;
    long phi = 0;
    std::vector<PrimeRecord> primes;
    Geometric geometric;
    std::optional<double> upper;
    double lower = 0.0;
    double simple = 0.0;
    double mertens = 0.0;
};

struct Kappa {
    double kappa1;
    double kappa2;
};

BoundReport bound_report(long N, std::optional<Kappa> kappa, unsigned degree_cap);

}  // namespace ffk::bounds

namespace ffk::bounds {

bool is_odd_squarefree_composite(long N);

struct ScanRow {
    long N = 0;
    long phi = 0;
    std::vector<GeometricTerm> geometric;
    double lower = 0.0;
    double simple = 0.0;
    double ratio = 0.0;
};

/// One row per odd squarefree composite N <= max_N, increasing; rows are
/// computed on `threads` workers.
std::vector<ScanRow> scan(long max_N, unsigned threads);

}  // namespace ffk::bounds
