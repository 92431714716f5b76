#pragma once

/**
 * @file polyarith.hpp
 * @brief Integer and prime-field polynomials behind the splitting
 *        X^N + Y^N - 1 = (X^m + Y^m - 1)^p + p * psi(X^m, Y^m).
 *
 * psi(a, b) = (a^p + b^p - 1 - (a + b - 1)^p) / p has integer coefficients,
 * and psi(a, 1 - a) = a (a - 1) Psi(a). Over F_p every repeated factor of
 * Psi is linear with a root in F_p and has multiplicity exactly two; the
 * number of such roots is the double-root count s.
 */

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ffk/rational.hpp"

namespace ffk::poly {

/// Dense univariate polynomial over Z, index = degree. Zero has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);

    static IntPoly monomial(const Integer& c, std::size_t degree);
    static IntPoly constant(const Integer& c) { return monomial(c, 0); }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const Integer& leading() const { return coeffs_.back(); }
    Integer coeff(std::size_t k) const;
    const std::vector<Integer>& coefficients() const { return coeffs_; }

    Integer eval(const Integer& x) const;
    IntPoly derivative() const;
    IntPoly pow(unsigned e) const;

    /// Divides every coefficient by d; throws ContractViolation if inexact.
    IntPoly exact_div(const Integer& d) const;
    /// Quotient by a monic divisor; throws ContractViolation on a nonzero remainder.
    IntPoly exact_div(const IntPoly& monic_divisor) const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const Integer& c, const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Sparse bivariate polynomial over Z keyed by exponent pair (deg_x, deg_y).
class BiPoly {
public:
    using Exponents = std::pair<unsigned, unsigned>;

    BiPoly() = default;

    void add_term(unsigned i, unsigned j, const Integer& c);
    Integer coeff(unsigned i, unsigned j) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Integer>& terms() const { return terms_; }

    Integer eval(const Integer& x, const Integer& y) const;
    /// Substitutes (x, y) -> (x^m, y^m).
    BiPoly inflate(unsigned m) const;
    /// Substitutes y -> 1 - x, yielding a univariate polynomial in x.
    IntPoly on_antidiagonal() const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const Integer& c, const BiPoly& a);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

private:
    std::map<Exponents, Integer> terms_;
};

/// Dense polynomial over F_p (p < 2^31), coefficients reduced to [0, p).
class FpPoly {
public:
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    explicit FpPoly(std::uint64_t p) : p_(p) {}

    static FpPoly reduce(const IntPoly& f, std::uint64_t p);
    static FpPoly monomial(std::uint64_t p, std::uint64_t c, std::size_t degree);

    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::uint64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
    const std::vector<std::uint64_t>& coefficients() const { return c_; }

    std::uint64_t eval(std::uint64_t x) const;
    FpPoly derivative() const;
    FpPoly monic() const;

    /// (quotient, remainder); divisor must be nonzero.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;
    /// x^e mod this.
    FpPoly x_power_mod(std::uint64_t e) const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

private:
    void trim();
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

/// Monic gcd over F_p (zero if both inputs are zero).
FpPoly gcd(FpPoly a, FpPoly b);

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);

/// Above this modulus root counting switches from enumeration to deg gcd(f, x^p - x).
inline constexpr std::uint64_t kEnumerationLimit = 1000;

/// Number of distinct roots of f in F_p.
std::size_t count_roots(const FpPoly& f);

/// Bivariate psi(a, b) for an odd prime p.
BiPoly psi_poly(unsigned p);
/// psi(a, 1 - a), expanded directly from (a^p + (1 - a)^p - 1) / p.
IntPoly psi_diag(unsigned p);
/// Psi(a) = psi(a, 1 - a) / (a (a - 1)).
IntPoly capital_psi(unsigned p);
/// Psi mod p from ψ(a,1-a) ≡ -Σ_{k=1}^{p-1} a^k / k (mod p); avoids big binomials.
FpPoly capital_psi_mod_p(unsigned p);

struct DoubleRoots {
    unsigned p = 0;
    /// Number of F_p-rational roots of Psi mod p; each has multiplicity two.
    std::size_t count = 0;
    /// The roots in increasing order.
    std::vector<std::uint64_t> roots;
};

/// Squarefree analysis of Psi mod p. Throws ContractViolation if a repeated
/// factor is non-linear, lacks an F_p root, has multiplicity >= 3, or if an
/// F_p-rational root is simple.
DoubleRoots double_roots(unsigned p);
std::size_t double_root_count(unsigned p);
/// rho = m * s.
std::uint64_t rho(unsigned p, unsigned m);

/// Default bound on N = p m for the bivariate splitting check.
inline constexpr unsigned kDefaultDegreeCap = 2000;

/// Verifies X^N + Y^N - 1 == (X^m + Y^m - 1)^p + p psi(X^m, Y^m) by expansion.
bool fermat_split_check(unsigned p, unsigned m, unsigned degree_cap = kDefaultDegreeCap);

}  // namespace ffk::poly
