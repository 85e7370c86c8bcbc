#include <folbound/cyclo.hpp>
#include <folbound/errors.hpp>

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace folbound
{

std::string to_string(const Rat &r)
{
    return r.get_str();
}

namespace
{

std::mutex cache_mutex;

// Exact division of integer polynomials (divisor monic).
std::vector<BigInt> divide_exact(std::vector<BigInt> num, const std::vector<BigInt> &den)
{
    const std::size_t dn = den.size() - 1;
    std::vector<BigInt> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const BigInt c = num[i];
        q[i - dn] = c;
        if (c == 0) {
            continue;
        }
        for (std::size_t k = 0; k <= dn; ++k) {
            num[i - dn + k] -= c * den[k];
        }
    }
    for (std::size_t i = 0; i < dn; ++i) {
        ensure(num[i] == 0, "cyclotomic division remainder");
    }
    return q;
}

void trim(std::vector<Rat> &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

// Polynomial remainder and quotient over Q.
void divmod(const std::vector<Rat> &a, const std::vector<Rat> &b, std::vector<Rat> &q, std::vector<Rat> &r)
{
    r = a;
    trim(r);
    q.clear();
    if (r.size() < b.size()) {
        return;
    }
    q.assign(r.size() - b.size() + 1, Rat(0));
    const Rat lead = b.back();
    while (!r.empty() && r.size() >= b.size()) {
        const std::size_t shift = r.size() - b.size();
        const Rat c = r.back() / lead;
        q[shift] = c;
        for (std::size_t k = 0; k < b.size(); ++k) {
            r[shift + k] -= c * b[k];
        }
        r.pop_back();
        trim(r);
    }
}

std::vector<Rat> mul(const std::vector<Rat> &a, const std::vector<Rat> &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<Rat> sub(const std::vector<Rat> &a, const std::vector<Rat> &b)
{
    std::vector<Rat> out(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] -= b[i];
    }
    trim(out);
    return out;
}

} // namespace

unsigned totient(unsigned n)
{
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) {
                m /= p;
            }
            result -= result / p;
        }
    }
    if (m > 1) {
        result -= result / m;
    }
    return result;
}

const std::vector<BigInt> &cyclotomic_polynomial(unsigned n)
{
    if (n == 0) {
        fail(ErrorKind::InvalidInput, "cyclotomic order must be >= 1");
    }
    static std::map<unsigned, std::vector<BigInt>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) {
            return it->second;
        }
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    std::vector<BigInt> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) {
            poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(n, std::move(poly)).first->second;
}

CycloField::CycloField(unsigned order) : order_(order), modulus_(cyclotomic_polynomial(order)) {}

std::shared_ptr<const CycloField> CycloField::get(unsigned order)
{
    static std::mutex fields_mutex;
    static std::map<unsigned, std::shared_ptr<const CycloField>> fields;
    std::lock_guard<std::mutex> lock(fields_mutex);
    auto it = fields.find(order);
    if (it != fields.end()) {
        return it->second;
    }
    return fields.emplace(order, std::make_shared<const CycloField>(order)).first->second;
}

void CycloField::reduce(std::vector<Rat> &poly) const
{
    const std::size_t d = degree();
    for (std::size_t i = poly.size(); i-- > d;) {
        if (poly[i] == 0) {
            continue;
        }
        const Rat c = poly[i];
        // modulus is monic of degree d
        for (std::size_t k = 0; k < d; ++k) {
            if (modulus_[k] != 0) {
                poly[i - d + k] -= c * modulus_[k];
            }
        }
        poly[i] = 0;
    }
    poly.resize(d, Rat(0));
}

CycloNum::CycloNum() : CycloNum(Rat(0)) {}

CycloNum::CycloNum(long v) : CycloNum(Rat(v)) {}

CycloNum::CycloNum(const Rat &r) : field_(CycloField::get(1)), c_{r} {}

CycloNum::CycloNum(std::shared_ptr<const CycloField> f, std::vector<Rat> c) : field_(std::move(f)), c_(std::move(c)) {}

CycloNum CycloNum::from_poly(std::vector<Rat> coeffs, unsigned order)
{
    auto f = CycloField::get(order);
    f->reduce(coeffs);
    return CycloNum(std::move(f), std::move(coeffs));
}

CycloNum CycloNum::zeta(unsigned order, long power)
{
    long p = power % static_cast<long>(order);
    if (p < 0) {
        p += order;
    }
    std::vector<Rat> c(static_cast<std::size_t>(p) + 1, Rat(0));
    c[static_cast<std::size_t>(p)] = 1;
    return from_poly(std::move(c), order);
}

bool CycloNum::is_zero() const
{
    for (const auto &x : c_) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

bool CycloNum::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) {
            return false;
        }
    }
    return true;
}

bool CycloNum::is_one() const
{
    return is_rational() && c_[0] == 1;
}

CycloNum CycloNum::embed(unsigned m) const
{
    if (m == order()) {
        return *this;
    }
    if (is_rational()) {
        return from_poly({c_[0]}, m);
    }
    if (m % order() != 0) {
        fail(ErrorKind::FieldTooSmall,
             "cannot embed Q(zeta_" + std::to_string(order()) + ") into Q(zeta_" + std::to_string(m) + ")");
    }
    const std::size_t step = m / order();
    std::vector<Rat> out(c_.size() * step, Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
        out[k * step] = c_[k];
    }
    return from_poly(std::move(out), m);
}

unsigned CycloNum::common_order(const CycloNum &a, const CycloNum &b)
{
    const unsigned oa = a.order();
    const unsigned ob = b.order();
    if (oa == ob || b.is_rational()) {
        return oa;
    }
    if (a.is_rational()) {
        return ob;
    }
    return std::lcm(oa, ob);
}

CycloNum &CycloNum::operator+=(const CycloNum &o)
{
    const unsigned m = common_order(*this, o);
    if (m != order()) {
        *this = embed(m);
    }
    if (o.order() == m) {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
    } else if (o.is_rational()) {
        c_[0] += o.c_[0];
    } else {
        *this += o.embed(m);
    }
    return *this;
}

CycloNum &CycloNum::operator-=(const CycloNum &o)
{
    return *this += -o;
}

CycloNum CycloNum::operator-() const
{
    CycloNum out = *this;
    for (auto &x : out.c_) {
        x = -x;
    }
    return out;
}

CycloNum &CycloNum::operator*=(const CycloNum &o)
{
    if (o.is_rational()) {
        const Rat s = o.c_[0];
        for (auto &x : c_) {
            x *= s;
        }
        return *this;
    }
    if (is_rational()) {
        const Rat s = c_[0];
        *this = o;
        for (auto &x : c_) {
            x *= s;
        }
        return *this;
    }
    const unsigned m = common_order(*this, o);
    const CycloNum a = embed(m);
    const CycloNum b = o.embed(m);
    std::vector<Rat> prod = mul(a.c_, b.c_);
    a.field_->reduce(prod);
    field_ = a.field_;
    c_ = std::move(prod);
    return *this;
}

CycloNum CycloNum::inverse() const
{
    if (is_zero()) {
        fail(ErrorKind::InvalidInput, "division by zero in Q(zeta_" + std::to_string(order()) + ")");
    }
    if (is_rational()) {
        return CycloNum(field_, [&] {
            std::vector<Rat> c(c_.size(), Rat(0));
            c[0] = 1 / c_[0];
            return c;
        }());
    }
    // Extended Euclid: s*a + t*Phi = 1.
    std::vector<Rat> phi(field_->modulus().begin(), field_->modulus().end());
    std::vector<Rat> r0 = phi, r1 = c_;
    trim(r1);
    std::vector<Rat> s0{}, s1{Rat(1)};
    while (!r1.empty()) {
        std::vector<Rat> q, r;
        divmod(r0, r1, q, r);
        std::vector<Rat> s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    ensure(r0.size() == 1, "cyclotomic gcd must be a unit");
    for (auto &x : s0) {
        x /= r0[0];
    }
    field_->reduce(s0);
    return CycloNum(field_, std::move(s0));
}

CycloNum &CycloNum::operator/=(const CycloNum &o)
{
    return *this *= o.inverse();
}

CycloNum CycloNum::pow(long e) const
{
    if (e < 0) {
        return inverse().pow(-e);
    }
    CycloNum base = *this;
    CycloNum out = CycloNum(field_, [&] {
        std::vector<Rat> c(c_.size(), Rat(0));
        c[0] = 1;
        return c;
    }());
    while (e > 0) {
        if (e & 1) {
            out *= base;
        }
        e >>= 1;
        if (e > 0) {
            base *= base;
        }
    }
    return out;
}

bool operator==(const CycloNum &a, const CycloNum &b)
{
    if (a.order() == b.order()) {
        return a.c_ == b.c_;
    }
    if (a.is_rational() && b.is_rational()) {
        return a.c_[0] == b.c_[0];
    }
    return (a - b).is_zero();
}

std::strong_ordering operator<=>(const CycloNum &a, const CycloNum &b)
{
    if (a.is_rational() && b.is_rational()) {
        const int s = cmp(a.c_[0], b.c_[0]);
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    const unsigned m = CycloNum::common_order(a, b);
    const CycloNum x = a.embed(m);
    const CycloNum y = b.embed(m);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
        const int s = cmp(x.c_[i], y.c_[i]);
        if (s != 0) {
            return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

std::string CycloNum::str() const
{
    if (is_rational()) {
        return to_string(c_[0]);
    }
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << to_string(c_[i]);
    }
    os << ']';
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const CycloNum &x)
{
    return os << x.str();
}

} // namespace folbound
