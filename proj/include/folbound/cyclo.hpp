#ifndef FOLBOUND_CYCLO_HPP
#define FOLBOUND_CYCLO_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace folbound
{

// Canonical big rational (denominator > 0, reduced).
using Rat = mpq_class;
using BigInt = mpz_class;

std::string to_string(const Rat &r);

// Coefficients of the N-th cyclotomic polynomial, low degree first. Cached.
const std::vector<BigInt> &cyclotomic_polynomial(unsigned n);

// Euler totient, i.e. deg Phi_N.
unsigned totient(unsigned n);

class CycloField
{
public:
    explicit CycloField(unsigned order);

    // Shared instance per order.
    static std::shared_ptr<const CycloField> get(unsigned order);

    unsigned order() const noexcept
    {
        return order_;
    }
    std::size_t degree() const noexcept
    {
        return modulus_.size() - 1;
    }
    const std::vector<BigInt> &modulus() const noexcept
    {
        return modulus_;
    }

    // Reduce an arbitrary representative modulo Phi_N in place; result has length degree().
    void reduce(std::vector<Rat> &poly) const;

private:
    unsigned order_;
    std::vector<BigInt> modulus_;
};

// Element of Q(zeta_N), stored as its canonical residue modulo Phi_N.
// Elements of different orders are combined by embedding zeta_a -> zeta_N^(N/a)
// when one order divides the other.
class CycloNum
{
public:
    CycloNum();
    CycloNum(long v);
    CycloNum(const Rat &r);

    // Canonical residue of sum_k coeffs[k] zeta_N^k.
    static CycloNum from_poly(std::vector<Rat> coeffs, unsigned order);
    static CycloNum zeta(unsigned order, long power);

    unsigned order() const noexcept
    {
        return field_->order();
    }
    const std::vector<Rat> &coeffs() const noexcept
    {
        return c_;
    }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Constant coefficient; meaningful as the value when is_rational().
    const Rat &rational_part() const
    {
        return c_[0];
    }

    // Same element viewed in Q(zeta_M); requires order() | M.
    CycloNum embed(unsigned m) const;

    CycloNum inverse() const;
    CycloNum pow(long e) const;

    CycloNum &operator+=(const CycloNum &o);
    CycloNum &operator-=(const CycloNum &o);
    CycloNum &operator*=(const CycloNum &o);
    CycloNum &operator/=(const CycloNum &o);
    CycloNum operator-() const;

    friend CycloNum operator+(CycloNum a, const CycloNum &b)
    {
        return a += b;
    }
    friend CycloNum operator-(CycloNum a, const CycloNum &b)
    {
        return a -= b;
    }
    friend CycloNum operator*(CycloNum a, const CycloNum &b)
    {
        return a *= b;
    }
    friend CycloNum operator/(CycloNum a, const CycloNum &b)
    {
        return a /= b;
    }

    friend bool operator==(const CycloNum &a, const CycloNum &b);
    // Arbitrary but total order on canonical forms, used for keyed containers.
    friend std::strong_ordering operator<=>(const CycloNum &a, const CycloNum &b);

    // "p/q" for rationals, "[c0,c1,...]" otherwise (powers of zeta, low to high).
    std::string str() const;

private:
    CycloNum(std::shared_ptr<const CycloField> f, std::vector<Rat> c);
    static unsigned common_order(const CycloNum &a, const CycloNum &b);

    std::shared_ptr<const CycloField> field_;
    std::vector<Rat> c_;
};

std::ostream &operator<<(std::ostream &os, const CycloNum &x);

// cyclo_normalize: canonical residue of a representative polynomial in zeta_N.
inline CycloNum cyclo_normalize(std::vector<Rat> poly_coeffs, unsigned order)
{
    return CycloNum::from_poly(std::move(poly_coeffs), order);
}

} // namespace folbound

#endif
