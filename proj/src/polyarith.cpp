#include "ffk/polyarith.hpp"

#include <algorithm>
#include <string>

#include "ffk/errors.hpp"

namespace ffk::poly {

namespace {

void require_odd_prime(unsigned p)
{
    if (p < 3 || !is_prime(p)) {
        throw ParameterError("p must be an odd prime, got " + std::to_string(p));
    }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    base %= p;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1U;
    }
    return r;
}

// Threshold below which Psi mod p is reduced from the exact integer polynomial.
constexpr unsigned kExactReductionLimit = 211;

}  // namespace

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t degree)
{
    std::vector<Integer> v(degree + 1);
    v[degree] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Integer(0); }

Integer IntPoly::eval(const Integer& x) const
{
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::derivative() const
{
    if (coeffs_.size() <= 1) return {};
    std::vector<Integer> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
    return IntPoly(std::move(d));
}

IntPoly IntPoly::pow(unsigned e) const
{
    IntPoly result = constant(1);
    IntPoly base = *this;
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

IntPoly IntPoly::exact_div(const Integer& d) const
{
    std::vector<Integer> q(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!mpz_divisible_p(coeffs_[k].get_mpz_t(), d.get_mpz_t())) {
            throw ContractViolation("coefficient of degree " + std::to_string(k) + " is not divisible by " +
                                    d.get_str());
        }
        mpz_divexact(q[k].get_mpz_t(), coeffs_[k].get_mpz_t(), d.get_mpz_t());
    }
    return IntPoly(std::move(q));
}

IntPoly IntPoly::exact_div(const IntPoly& monic_divisor) const
{
    if (monic_divisor.is_zero() || monic_divisor.leading() != 1) {
        throw ParameterError("exact polynomial division needs a monic divisor");
    }
    if (degree() < monic_divisor.degree()) {
        if (is_zero()) return {};
        throw ContractViolation("polynomial division leaves a nonzero remainder");
    }
    std::vector<Integer> rem = coeffs_;
    const auto dd = static_cast<std::size_t>(monic_divisor.degree());
    std::vector<Integer> q(rem.size() - dd);
    for (std::size_t k = q.size(); k-- > 0;) {
        const Integer c = rem[k + dd];
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= c * monic_divisor.coeffs_[i];
    }
    for (const auto& r : rem) {
        if (r != 0) throw ContractViolation("polynomial division leaves a nonzero remainder");
    }
    return IntPoly(std::move(q));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b)
{
    std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b)
{
    std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(c));
}

IntPoly operator*(const Integer& c, const IntPoly& a)
{
    std::vector<Integer> v = a.coeffs_;
    for (auto& x : v) x *= c;
    return IntPoly(std::move(v));
}

// ---------------------------------------------------------------------------
// BiPoly

void BiPoly::add_term(unsigned i, unsigned j, const Integer& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Integer BiPoly::coeff(unsigned i, unsigned j) const
{
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Integer(0) : it->second;
}

Integer BiPoly::eval(const Integer& x, const Integer& y) const
{
    Integer acc = 0;
    for (const auto& [e, c] : terms_) {
        Integer xi;
        Integer yj;
        mpz_pow_ui(xi.get_mpz_t(), x.get_mpz_t(), e.first);
        mpz_pow_ui(yj.get_mpz_t(), y.get_mpz_t(), e.second);
        acc += c * xi * yj;
    }
    return acc;
}

BiPoly BiPoly::inflate(unsigned m) const
{
    BiPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(Exponents{e.first * m, e.second * m}, c);
    return out;
}

IntPoly BiPoly::on_antidiagonal() const
{
    const IntPoly one_minus_x({Integer(1), Integer(-1)});
    IntPoly out;
    for (const auto& [e, c] : terms_) out = out + c * (IntPoly::monomial(1, e.first) * one_minus_x.pow(e.second));
    return out;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b)
{
    BiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e.first, e.second, c);
    return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b)
{
    BiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e.first, e.second, -c);
    return out;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    BiPoly out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    }
    return out;
}

BiPoly operator*(const Integer& c, const BiPoly& a)
{
    BiPoly out;
    for (const auto& [e, x] : a.terms_) out.add_term(e.first, e.second, c * x);
    return out;
}

// ---------------------------------------------------------------------------
// FpPoly

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs))
{
    for (auto& x : c_) x %= p_;
    trim();
}

FpPoly FpPoly::reduce(const IntPoly& f, std::uint64_t p)
{
    std::vector<std::uint64_t> c(f.coefficients().size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = mpz_fdiv_ui(f.coefficients()[k].get_mpz_t(), p);
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::monomial(std::uint64_t p, std::uint64_t c, std::size_t degree)
{
    std::vector<std::uint64_t> v(degree + 1, 0);
    v[degree] = c;
    return FpPoly(p, std::move(v));
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t FpPoly::eval(std::uint64_t x) const
{
    std::uint64_t acc = 0;
    x %= p_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulmod(acc, x, p_) + *it) % p_;
    return acc;
}

FpPoly FpPoly::derivative() const
{
    if (c_.size() <= 1) return FpPoly(p_);
    std::vector<std::uint64_t> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = mulmod(c_[k], k % p_, p_);
    return FpPoly(p_, std::move(d));
}

FpPoly FpPoly::monic() const
{
    if (is_zero()) return *this;
    const std::uint64_t inv = inverse_mod(c_.back(), p_);
    std::vector<std::uint64_t> v = c_;
    for (auto& x : v) x = mulmod(x, inv, p_);
    return FpPoly(p_, std::move(v));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const
{
    if (divisor.is_zero()) throw ParameterError("division by the zero polynomial");
    if (degree() < divisor.degree()) return {FpPoly(p_), *this};
    std::vector<std::uint64_t> rem = c_;
    const auto dd = static_cast<std::size_t>(divisor.degree());
    const std::uint64_t inv_lead = inverse_mod(divisor.c_.back(), p_);
    std::vector<std::uint64_t> q(rem.size() - dd, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::uint64_t c = mulmod(rem[k + dd], inv_lead, p_);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dd; ++i) {
            rem[k + i] = (rem[k + i] + p_ - mulmod(c, divisor.c_[i], p_)) % p_;
        }
    }
    rem.resize(dd);
    return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::x_power_mod(std::uint64_t e) const
{
    FpPoly result = FpPoly::monomial(p_, 1, 0).divmod(*this).second;
    FpPoly base = FpPoly::monomial(p_, 1, 1).divmod(*this).second;
    while (e != 0) {
        if (e & 1U) result = (result * base).divmod(*this).second;
        e >>= 1U;
        if (e != 0) base = (base * base).divmod(*this).second;
    }
    return result;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b)
{
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a.coeff(k) + b.coeff(k)) % a.p_;
    return FpPoly(a.p_, std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b)
{
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a.coeff(k) + a.p_ - b.coeff(k)) % a.p_;
    return FpPoly(a.p_, std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b)
{
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
    }
    return FpPoly(a.p_, std::move(c));
}

FpPoly gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0) throw ParameterError("zero has no inverse modulo " + std::to_string(p));
    return powmod(a, p - 2, p);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::size_t count_roots(const FpPoly& f)
{
    if (f.is_zero()) throw ParameterError("the zero polynomial has every element as a root");
    if (f.degree() == 0) return 0;
    const std::uint64_t p = f.modulus();
    if (p <= kEnumerationLimit) {
        std::size_t n = 0;
        for (std::uint64_t x = 0; x < p; ++x) n += f.eval(x) == 0 ? 1 : 0;
        return n;
    }
    // Roots in F_p are exactly the linear factors shared with x^p - x.
    const FpPoly xp = f.x_power_mod(p) - FpPoly::monomial(p, 1, 1);
    return static_cast<std::size_t>(gcd(f, xp).degree());
}

// ---------------------------------------------------------------------------
// psi, Psi

BiPoly psi_poly(unsigned p)
{
    require_odd_prime(p);
    BiPoly linear;  // a + b - 1
    linear.add_term(1, 0, 1);
    linear.add_term(0, 1, 1);
    linear.add_term(0, 0, -1);
    BiPoly power;
    power.add_term(0, 0, 1);
    for (unsigned k = 0; k < p; ++k) power = power * linear;

    BiPoly numerator;
    numerator.add_term(p, 0, 1);
    numerator.add_term(0, p, 1);
    numerator.add_term(0, 0, -1);
    numerator = numerator - power;

    BiPoly out;
    const Integer pz = p;
    for (const auto& [e, c] : numerator.terms()) {
        if (!mpz_divisible_p(c.get_mpz_t(), pz.get_mpz_t())) {
            throw ContractViolation("psi has a non-integral coefficient");
        }
        Integer q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t());
        out.add_term(e.first, e.second, q);
    }
    return out;
}

IntPoly psi_diag(unsigned p)
{
    require_odd_prime(p);
    const IntPoly one_minus_a({Integer(1), Integer(-1)});
    const IntPoly numerator = IntPoly::monomial(1, p) + one_minus_a.pow(p) - IntPoly::constant(1);
    return numerator.exact_div(Integer(p));
}

IntPoly capital_psi(unsigned p)
{
    const IntPoly a_times_a_minus_1({Integer(0), Integer(-1), Integer(1)});
    return psi_diag(p).exact_div(a_times_a_minus_1);
}

FpPoly capital_psi_mod_p(unsigned p)
{
    require_odd_prime(p);
    std::vector<std::uint64_t> c(p, 0);
    for (unsigned k = 1; k < p; ++k) c[k] = (p - inverse_mod(k, p)) % p;
    const FpPoly diag(p, std::move(c));
    const FpPoly a_times_a_minus_1(p, {0, p - 1, 1});
    auto [q, r] = diag.divmod(a_times_a_minus_1);
    if (!r.is_zero()) throw ContractViolation("a(a-1) does not divide psi(a,1-a) mod p");
    return q;
}

DoubleRoots double_roots(unsigned p)
{
    require_odd_prime(p);
    const FpPoly f = p <= kExactReductionLimit ? FpPoly::reduce(capital_psi(p), p) : capital_psi_mod_p(p);
    if (f.degree() != static_cast<long>(p) - 3) {
        throw ContractViolation("Psi mod " + std::to_string(p) + " has degree " + std::to_string(f.degree()) +
                                ", expected " + std::to_string(p - 3));
    }
    DoubleRoots out;
    out.p = p;
    if (f.degree() <= 0) return out;

    const FpPoly repeated = gcd(f, f.derivative());
    if (repeated.degree() <= 0) {
        if (count_roots(f) != 0) {
            throw ContractViolation("Psi mod " + std::to_string(p) + " has a simple root in F_p");
        }
        return out;
    }
    if (gcd(repeated, repeated.derivative()).degree() > 0) {
        throw ContractViolation("Psi mod " + std::to_string(p) + " has a factor of multiplicity >= 3");
    }
    const std::size_t split = count_roots(repeated);
    if (split != static_cast<std::size_t>(repeated.degree())) {
        throw ContractViolation("a repeated factor of Psi mod " + std::to_string(p) +
                                " has no root in F_p");
    }
    if (count_roots(f) != split) {
        throw ContractViolation("Psi mod " + std::to_string(p) + " has a simple root in F_p");
    }
    out.count = split;
    for (std::uint64_t x = 0; x < p && out.roots.size() < split; ++x) {
        if (repeated.eval(x) == 0) out.roots.push_back(x);
    }
    if (2 * out.count > p - 3) throw ContractViolation("double-root count exceeds (p-3)/2");
    return out;
}

std::size_t double_root_count(unsigned p) { return double_roots(p).count; }

std::uint64_t rho(unsigned p, unsigned m)
{
    if (m == 0) throw ParameterError("m must be positive");
    return static_cast<std::uint64_t>(m) * double_root_count(p);
}

bool fermat_split_check(unsigned p, unsigned m, unsigned degree_cap)
{
    require_odd_prime(p);
    if (m == 0) throw ParameterError("m must be positive");
    const unsigned long n = static_cast<unsigned long>(p) * m;
    if (n > degree_cap) {
        throw CapExceeded("N = " + std::to_string(n) + " exceeds the degree cap " + std::to_string(degree_cap));
    }
    BiPoly fm;
    fm.add_term(m, 0, 1);
    fm.add_term(0, m, 1);
    fm.add_term(0, 0, -1);
    BiPoly lhs;
    lhs.add_term(0, 0, 1);
    for (unsigned k = 0; k < p; ++k) lhs = lhs * fm;
    lhs = lhs + Integer(p) * psi_poly(p).inflate(m);

    BiPoly fermat;
    fermat.add_term(static_cast<unsigned>(n), 0, 1);
    fermat.add_term(0, static_cast<unsigned>(n), 1);
    fermat.add_term(0, 0, -1);
    return lhs == fermat;
}

}  // namespace ffk::poly
