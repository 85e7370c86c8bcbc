#ifndef FOLBOUND_SERIES_HPP
#define FOLBOUND_SERIES_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <folbound/cyclo.hpp>

namespace folbound
{

// Order value with an infinity sentinel, used for nu_0(0) and for exact series.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

// Univariate power series in t with coefficients in Q(zeta_N).
//
// Coefficients of t^e are exact for e < known_order(); everything from
// known_order() on is unknown (the series is "s + O(t^K)"). A series with no
// known_order is an exact polynomial.
class USeries
{
public:
    USeries() = default;
    explicit USeries(std::vector<CycloNum> coeffs, std::optional<int> known_order = std::nullopt);

    static USeries monomial(const CycloNum &c, int e);
    static USeries zero()
    {
        return USeries{};
    }

    bool is_exact() const noexcept
    {
        return !known_.has_value();
    }
    // kInfinity for exact series.
    int known_order() const noexcept
    {
        return known_ ? *known_ : kInfinity;
    }
    // Highest stored exponent + 1.
    int stored_length() const noexcept
    {
        return static_cast<int>(c_.size());
    }

    // Coefficient of t^e; throws OrderBeyondTruncation if e is not known.
    CycloNum coeff(int e) const;
    const std::vector<CycloNum> &coeffs() const noexcept
    {
        return c_;
    }

    // ord(s): kInfinity for an exactly zero series, OrderBeyondTruncation if undecided.
    int order() const;
    // Certified lower bound for ord(s) (never throws).
    int valuation_bound() const;
    bool is_exact_zero() const
    {
        return is_exact() && c_.empty();
    }
    CycloNum leading_coeff() const;

    USeries truncated(int k) const;
    // s / t^k; the first k coefficients must be known to vanish.
    USeries shift_down(int k) const;
    USeries shift_up(int k) const;
    USeries derivative() const;
    USeries scaled(const CycloNum &c) const;

    // 1/s for ord(s) = 0, accurate to O(t^prec) at most.
    USeries inverse(int prec) const;

    USeries &operator+=(const USeries &o);
    USeries &operator-=(const USeries &o);
    USeries operator-() const;
    friend USeries operator+(USeries a, const USeries &b)
    {
        return a += b;
    }
    friend USeries operator-(USeries a, const USeries &b)
    {
        return a -= b;
    }
    friend USeries operator*(const USeries &a, const USeries &b);

    // a / b where ord(b) is certain; quotient accurate to O(t^prec) at most.
    static USeries divide(const USeries &a, const USeries &b, int prec);

    USeries pow(int e) const;

    std::string str() const;

private:
    void normalize();

    std::vector<CycloNum> c_;
    std::optional<int> known_;
};

int series_order(const USeries &s);

// f(g(t)); requires ord(g) >= 1 (CompositionDivergent otherwise).
USeries series_compose(const USeries &f, const USeries &g);

} // namespace folbound

#endif
