#ifndef FOLBOUND_POLY_HPP
#define FOLBOUND_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <folbound/cyclo.hpp>
#include <folbound/series.hpp>

namespace folbound
{

// Dense univariate polynomial, coefficients low degree first, no trailing zeros.
class UPoly
{
public:
    UPoly() = default;
    explicit UPoly(std::vector<CycloNum> c);
    static UPoly constant(const CycloNum &c)
    {
        return UPoly({c});
    }
    // x - r
    static UPoly linear_root(const CycloNum &r);

    bool is_zero() const noexcept
    {
        return c_.empty();
    }
    // -1 for the zero polynomial.
    int degree() const noexcept
    {
        return static_cast<int>(c_.size()) - 1;
    }
    const std::vector<CycloNum> &coeffs() const noexcept
    {
        return c_;
    }
    CycloNum coeff(int e) const;
    CycloNum lead() const;

    CycloNum eval(const CycloNum &x) const;
    UPoly derivative() const;
    UPoly monic() const;
    // Multiplicity of r as a root (0 if p(r) != 0); p must be nonzero.
    int root_multiplicity(const CycloNum &r) const;
    // Lowest exponent with a nonzero coefficient (order at 0); kInfinity for zero.
    int low_order() const;

    UPoly &operator+=(const UPoly &o);
    UPoly &operator-=(const UPoly &o);
    friend UPoly operator+(UPoly a, const UPoly &b)
    {
        return a += b;
    }
    friend UPoly operator-(UPoly a, const UPoly &b)
    {
        return a -= b;
    }
    friend UPoly operator*(const UPoly &a, const UPoly &b);
    friend bool operator==(const UPoly &a, const UPoly &b)
    {
        return a.c_ == b.c_;
    }

    static void divmod(const UPoly &a, const UPoly &b, UPoly &q, UPoly &r);
    // Exact quotient; throws if b does not divide a.
    static UPoly exact_div(const UPoly &a, const UPoly &b);
    static UPoly gcd(UPoly a, UPoly b);

    std::string str(char var = 'x') const;

private:
    void trim();
    std::vector<CycloNum> c_;
};

using Monomial = std::pair<int, int>; // (i, j) for x^i y^j

// Bivariate polynomial in x, y. An optional precision K marks every monomial
// x^i y^j with i >= K as unknown: the polynomial is "p + O(x^K)". Blow-ups
// along the divisor {x = 0} only ever lose x-adic precision, so this is the
// natural jet notion for the resolution engine.
class BiPoly
{
public:
    BiPoly() = default;
    explicit BiPoly(std::map<Monomial, CycloNum> terms, std::optional<int> prec = std::nullopt);

    static BiPoly monomial(const CycloNum &c, int i, int j);
    static BiPoly x()
    {
        return monomial(CycloNum(1L), 1, 0);
    }
    static BiPoly y()
    {
        return monomial(CycloNum(1L), 0, 1);
    }
    static BiPoly constant(const CycloNum &c)
    {
        return monomial(c, 0, 0);
    }

    const std::map<Monomial, CycloNum> &terms() const noexcept
    {
        return terms_;
    }
    bool is_exact() const noexcept
    {
        return !prec_.has_value();
    }
    int precision() const noexcept
    {
        return prec_ ? *prec_ : kInfinity;
    }
    bool is_exact_zero() const
    {
        return is_exact() && terms_.empty();
    }
    // Known to be zero up to its precision (possibly not exactly zero).
    bool known_terms_empty() const
    {
        return terms_.empty();
    }

    CycloNum coeff(int i, int j) const;
    // nu_0: minimal total degree; kInfinity for exact zero; TruncationInsufficient if undecided.
    // Unknown terms have total degree >= precision(), so the order is decided up to it.
    int order() const;
    int total_degree() const;
    int degree_x() const;
    int degree_y() const;
    // Degree-d homogeneous part; requires d < precision().
    BiPoly homogeneous_part(int d) const;

    BiPoly truncated(int k) const;
    BiPoly dx() const;
    BiPoly dy() const;
    BiPoly scaled(const CycloNum &c) const;
    // p(x + x0, y + y0); truncated jets only allow y-translations.
    BiPoly translated(const CycloNum &x0, const CycloNum &y0) const;
    // Largest k with x^k (resp. y^k) dividing every known term; kInfinity for zero.
    int x_adic_order() const;
    int y_adic_order() const;
    BiPoly divide_x(int k) const;
    BiPoly divide_y(int k) const;

    // p(x, 0) and p(0, y) as univariate polynomials (known terms only; p(x, 0)
    // is exact below x^precision()).
    UPoly restrict_y0() const;
    UPoly restrict_x0() const;
    // p viewed in y with coefficients in K[x]: result[j] = coeff of y^j.
    std::vector<UPoly> coeffs_in_y() const;
    std::vector<UPoly> coeffs_in_x() const;

    CycloNum eval(const CycloNum &x0, const CycloNum &y0) const;

    BiPoly &operator+=(const BiPoly &o);
    BiPoly &operator-=(const BiPoly &o);
    BiPoly operator-() const;
    friend BiPoly operator+(BiPoly a, const BiPoly &b)
    {
        return a += b;
    }
    friend BiPoly operator-(BiPoly a, const BiPoly &b)
    {
        return a -= b;
    }
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b);
    friend bool operator==(const BiPoly &a, const BiPoly &b)
    {
        return a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }
    BiPoly pow(int e) const;

    std::string str() const;

private:
    void normalize();
    std::map<Monomial, CycloNum> terms_;
    std::optional<int> prec_;
};

// F(s1(t), s2(t)); for truncated F, s1 must have positive order.
USeries poly_eval_series(const BiPoly &f, const USeries &s1, const USeries &s2);

// Resultant with respect to y of two exact polynomials, as a polynomial in x.
UPoly resultant_y(const BiPoly &f, const BiPoly &g);

} // namespace folbound

#endif
