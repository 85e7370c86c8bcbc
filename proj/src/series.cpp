#include <folbound/errors.hpp>
#include <folbound/series.hpp>

#include <algorithm>
#include <sstream>

namespace folbound
{

namespace
{

// Saturating sum of orders; kInfinity absorbs.
int add_orders(long long a, long long b)
{
    const long long s = a + b;
    return s >= kInfinity ? kInfinity : static_cast<int>(s);
}

std::optional<int> as_known(int k)
{
    return k == kInfinity ? std::nullopt : std::optional<int>(k);
}

} // namespace

USeries::USeries(std::vector<CycloNum> coeffs, std::optional<int> known_order) : c_(std::move(coeffs)), known_(known_order)
{
    normalize();
}

USeries USeries::monomial(const CycloNum &c, int e)
{
    std::vector<CycloNum> v(static_cast<std::size_t>(e) + 1);
    v[static_cast<std::size_t>(e)] = c;
    return USeries(std::move(v));
}

void USeries::normalize()
{
    if (known_ && *known_ < 0) {
        known_ = 0;
    }
    if (known_ && static_cast<int>(c_.size()) > *known_) {
        c_.resize(static_cast<std::size_t>(*known_));
    }
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

CycloNum USeries::coeff(int e) const
{
    if (e < 0) {
        return CycloNum{};
    }
    if (e >= known_order()) {
        fail(ErrorKind::OrderBeyondTruncation,
             "coefficient of t^" + std::to_string(e) + " requested beyond known order " + std::to_string(known_order()));
    }
    return e < stored_length() ? c_[static_cast<std::size_t>(e)] : CycloNum{};
}

int USeries::order() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            return static_cast<int>(i);
        }
    }
    if (is_exact()) {
        return kInfinity;
    }
    fail(ErrorKind::OrderBeyondTruncation,
         "series vanishes up to its known order " + std::to_string(*known_) + "; order undecided");
}

int USeries::valuation_bound() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            return static_cast<int>(i);
        }
    }
    return known_order();
}

CycloNum USeries::leading_coeff() const
{
    const int o = order();
    if (o == kInfinity) {
        return CycloNum{};
    }
    return c_[static_cast<std::size_t>(o)];
}

USeries USeries::truncated(int k) const
{
    USeries out = *this;
    if (k < out.known_order()) {
        out.known_ = k;
        out.normalize();
    }
    return out;
}

USeries USeries::shift_down(int k) const
{
    if (k <= 0) {
        return shift_up(-k);
    }
    for (int e = 0; e < k; ++e) {
        if (!coeff(e).is_zero()) {
            fail(ErrorKind::Internal, "shift_down on a series with a nonzero low coefficient");
        }
    }
    std::vector<CycloNum> v;
    if (stored_length() > k) {
        v.assign(c_.begin() + k, c_.end());
    }
    return USeries(std::move(v), known_ ? std::optional<int>(*known_ - k) : std::nullopt);
}

USeries USeries::shift_up(int k) const
{
    if (k <= 0) {
        return k == 0 ? *this : shift_down(-k);
    }
    std::vector<CycloNum> v(static_cast<std::size_t>(k));
    v.insert(v.end(), c_.begin(), c_.end());
    return USeries(std::move(v), known_ ? std::optional<int>(*known_ + k) : std::nullopt);
}

USeries USeries::derivative() const
{
    std::vector<CycloNum> v;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        v.push_back(c_[i] * CycloNum(static_cast<long>(i)));
    }
    return USeries(std::move(v), known_ ? std::optional<int>(*known_ - 1) : std::nullopt);
}

USeries USeries::scaled(const CycloNum &c) const
{
    if (c.is_zero()) {
        return USeries{};
    }
    USeries out = *this;
    for (auto &x : out.c_) {
        x *= c;
    }
    return out;
}

USeries &USeries::operator+=(const USeries &o)
{
    const int k = std::min(known_order(), o.known_order());
    known_ = as_known(k);
    if (c_.size() < o.c_.size()) {
        c_.resize(o.c_.size());
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        c_[i] += o.c_[i];
    }
    normalize();
    return *this;
}

USeries USeries::operator-() const
{
    return scaled(CycloNum(-1L));
}

USeries &USeries::operator-=(const USeries &o)
{
    return *this += -o;
}

USeries operator*(const USeries &a, const USeries &b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) {
        return USeries{};
    }
    const int k = std::min(add_orders(a.known_order(), b.valuation_bound()),
                           add_orders(b.known_order(), a.valuation_bound()));
    std::size_t len = a.c_.size() + b.c_.size();
    if (k != kInfinity) {
        len = std::min(len, static_cast<std::size_t>(k));
    }
    std::vector<CycloNum> v(len);
    for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
        if (a.c_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) {
            if (!b.c_[j].is_zero()) {
                v[i + j] += a.c_[i] * b.c_[j];
            }
        }
    }
    return USeries(std::move(v), as_known(k));
}

USeries USeries::inverse(int prec) const
{
    const CycloNum u0 = coeff(0);
    if (u0.is_zero()) {
        fail(ErrorKind::Internal, "inverse of a non-unit series");
    }
    const CycloNum inv0 = u0.inverse();
    if (is_exact() && c_.size() <= 1) {
        return USeries({inv0});
    }
    const int k = std::min(prec, known_order());
    std::vector<CycloNum> v(static_cast<std::size_t>(std::max(k, 0)));
    if (k > 0) {
        v[0] = inv0;
    }
    for (int e = 1; e < k; ++e) {
        CycloNum acc;
        for (int i = 1; i <= e && i < stored_length(); ++i) {
            if (!c_[static_cast<std::size_t>(i)].is_zero()) {
                acc += c_[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(e - i)];
            }
        }
        v[static_cast<std::size_t>(e)] = -(acc * inv0);
    }
    return USeries(std::move(v), k);
}

USeries USeries::divide(const USeries &a, const USeries &b, int prec)
{
    const int k = b.order();
    if (k == kInfinity) {
        fail(ErrorKind::InvalidInput, "series division by zero");
    }
    const USeries num = a.shift_down(k);
    const USeries den = b.shift_down(k);
    if (den.is_exact() && den.stored_length() == 1) {
        return num.scaled(den.c_[0].inverse());
    }
    return (num * den.inverse(prec)).truncated(prec);
}

USeries USeries::pow(int e) const
{
    USeries out({CycloNum(1L)});
    for (int i = 0; i < e; ++i) {
        out = out * *this;
    }
    return out;
}

std::string USeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << c_[i].str() << "*t^" << i;
    }
    if (first) {
        os << "0";
    }
    if (known_) {
        os << " + O(t^" << *known_ << ")";
    }
    return os.str();
}

int series_order(const USeries &s)
{
    return s.order();
}

USeries series_compose(const USeries &f, const USeries &g)
{
    const int vg = g.valuation_bound();
    if (vg < 1) {
        fail(ErrorKind::CompositionDivergent, "series_compose requires ord(g) >= 1");
    }
    int k = kInfinity;
    if (!f.is_exact()) {
        k = static_cast<int>(std::min<long long>(static_cast<long long>(f.known_order()) * vg, kInfinity));
    }
    if (!(f.is_exact() && f.stored_length() <= 1)) {
        k = std::min(k, g.known_order());
    }
    // Horner, truncating at k.
    const USeries gk = k == kInfinity ? g : g.truncated(k);
    USeries acc;
    for (int i = f.stored_length(); i-- > 0;) {
        acc = acc * gk;
        acc += USeries({f.coeffs()[static_cast<std::size_t>(i)]});
        if (k != kInfinity) {
            acc = acc.truncated(k);
        }
    }
    if (k != kInfinity) {
        acc = acc.truncated(k);
        // Horner over a truncated g yields at least precision k.
        std::vector<CycloNum> v = acc.coeffs();
        return USeries(std::move(v), k);
    }
    return acc;
}

} // namespace folbound
