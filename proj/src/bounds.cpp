#include "ffk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ffk/errors.hpp"
#include "ffk/polyarith.hpp"

namespace ffk::bounds {

namespace {

void require_divisor(long N, long p)
{
    if (p < 3 || N % p != 0) {
        throw ParameterError(std::to_string(p) + " is not an odd prime divisor of " + std::to_string(N));
    }
}

}  // namespace

std::vector<long> factor_odd_squarefree(long N)
{
    if (N < 3) throw ParameterError("N = " + std::to_string(N) + " must be >= 3 (unit or too small)");
    if (N % 2 == 0) throw ParameterError("N = " + std::to_string(N) + " is even");
    std::vector<long> primes;
    long rest = N;
    for (long d = 3; d * d <= rest; d += 2) {
        if (rest % d != 0) continue;
        rest /= d;
        if (rest % d == 0) throw ParameterError("N = " + std::to_string(N) + " is squareful");
        primes.push_back(d);
    }
    if (rest > 1) primes.push_back(rest);
    if (primes.size() < 2) throw ParameterError("N = " + std::to_string(N) + " is prime");
    return primes;
}

long euler_phi(const std::vector<long>& primes)
{
    long phi = 1;
    for (long p : primes) phi *= p - 1;
    return phi;
}

long euler_phi(long N) { return euler_phi(factor_odd_squarefree(N)); }

Rational geometric_q(long N, long p)
{
    require_divisor(N, p);
    const Integer n = N;
    const Integer q = p;
    const Integer m = N / p;
    const Integer num = 3 * n * n - 2 * n * q - 10 * n + 6 * q - 6 - 4 * m * m + 12 * m;
    Rational r(num, n * (n - 3));
    r.canonicalize();
    return r;
}

Integer alpha(long N, long p)
{
    require_divisor(N, p);
    const Integer n = N;
    const Integer q = p;
    const Integer n2 = n * n;
    const Integer n3 = n2 * n;
    const Integer q2 = q * q;
    return 4 * n3 * n * q - 6 * n3 * q2 - 24 * n3 * q + 37 * n2 * q2 + 44 * n2 * q - 72 * n * q2 - 4 * n2 -
           12 * n * q + 36 * q2;
}

Rational beta_sp_closed(long N, long p)
{
    const Integer n = N;
    const Integer q = p;
    const Integer n3 = n - 3;
    const Integer q2 = q * q;
    Rational r(alpha(N, p) * (n * q + 2 * n - 6 * q) * (q - 2), (n - 1) * (n - 2) * n3 * n3 * n3 * q2 * q2);
    r.canonicalize();
    return r;
}

Geometric geometric_contribution(long N)
{
    const auto primes = factor_odd_squarefree(N);
    const long phi = euler_phi(primes);
    Geometric out;
    for (long p : primes) {
        GeometricTerm t;
        t.p = p;
        t.coefficient = Rational(phi) / (p - 1) * geometric_q(N, p);
        t.value = t.coefficient.get_d() * std::log(static_cast<double>(p));
        out.total += t.value;
        out.terms.push_back(std::move(t));
    }
    return out;
}

double upper_bound(long N, double kappa1, double kappa2)
{
    if (!std::isfinite(kappa1) || !std::isfinite(kappa2) || kappa1 < 0 || kappa2 < 0 || kappa1 + kappa2 <= 0) {
        throw ParameterError("kappa1, kappa2 must be finite, non-negative and not both zero");
    }
    const long phi = euler_phi(N);
    const double two_g_minus_2 = static_cast<double>((N - 1) * (N - 2) - 2);
    return two_g_minus_2 * (static_cast<double>(phi) * (kappa1 * std::log(static_cast<double>(N)) + kappa2) +
                            geometric_contribution(N).total);
}

double lower_bound(long N)
{
    const auto primes = factor_odd_squarefree(N);
    const long phi = euler_phi(primes);
    double total = 0.0;
    for (long p : primes) {
        const Rational c = Rational(phi) * beta_sp_closed(N, p) / (p - 1);
        total += c.get_d() * std::log(static_cast<double>(p));
    }
    return total;
}

double simple_lower(long N)
{
    const double n = static_cast<double>(N);
    return static_cast<double>(euler_phi(N)) * std::log(n) / (5.0 * n * n);
}

double mertens_diag(long N)
{
    double total = 0.0;
    for (long p : factor_odd_squarefree(N)) total += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    return total;
}

BoundReport bound_report(long N, std::optional<Kappa> kappa, unsigned degree_cap)
{
    BoundReport r;
    const auto primes = factor_odd_squarefree(N);
    r.N = N;
    r.g = (N - 1) * (N - 2) / 2;
    r.phi = euler_phi(primes);
    for (long p : primes) {
        PrimeRecord rec;
        rec.p = p;
        rec.m = N / p;
        if (p <= static_cast<long>(degree_cap)) {
            rec.s = static_cast<long>(poly::double_root_count(static_cast<unsigned>(p)));
            rec.rho = rec.m * *rec.s;
        }
        rec.q = geometric_q(N, p);
        rec.beta = beta_sp_closed(N, p);
        rec.alpha = alpha(N, p);
        rec.lower_coefficient = Rational(r.phi) * rec.beta / (p - 1);
        r.primes.push_back(std::move(rec));
    }
    r.geometric = geometric_contribution(N);
    if (kappa) r.upper = upper_bound(N, kappa->kappa1, kappa->kappa2);
    r.lower = lower_bound(N);
    r.simple = simple_lower(N);
    r.mertens = mertens_diag(N);
    return r;
}

}  // namespace ffk::bounds

namespace ffk::bounds {

bool is_odd_squarefree_composite(long N)
{
    if (N < 3 || N % 2 == 0) return false;
    int factors = 0;
    long rest = N;
    for (long d = 3; d * d <= rest; d += 2) {
        if (rest % d != 0) continue;
        rest /= d;
        if (rest % d == 0) return false;
        ++factors;
    }
    if (rest > 1) ++factors;
    return factors >= 2;
}

std::vector<ScanRow> scan(long max_N, unsigned threads)
{
    std::vector<long> values;
    for (long N = 15; N <= max_N; N += 2) {
        if (is_odd_squarefree_composite(N)) values.push_back(N);
    }
    std::vector<ScanRow> rows(values.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t idx = begin; idx < values.size(); idx += stride) {
            const long N = values[idx];
            ScanRow& row = rows[idx];
            row.N = N;
            row.phi = euler_phi(N);
            row.geometric = geometric_contribution(N).terms;
            row.lower = lower_bound(N);
            row.simple = simple_lower(N);
            row.ratio = row.lower / row.simple;
        }
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
    work(0, threads);
    for (auto& th : pool) th.join();
    return rows;
}

}  // namespace ffk::bounds
