#include <folbound/errors.hpp>
#include <folbound/poly.hpp>

#include <algorithm>
#include <sstream>

namespace folbound
{

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<CycloNum> c) : c_(std::move(c))
{
    trim();
}

UPoly UPoly::linear_root(const CycloNum &r)
{
    return UPoly({-r, CycloNum(1L)});
}

void UPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

CycloNum UPoly::coeff(int e) const
{
    return (e >= 0 && e < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(e)] : CycloNum{};
}

CycloNum UPoly::lead() const
{
    return c_.empty() ? CycloNum{} : c_.back();
}

CycloNum UPoly::eval(const CycloNum &x) const
{
    CycloNum acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * x + c_[i];
    }
    return acc;
}

UPoly UPoly::derivative() const
{
    std::vector<CycloNum> v;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        v.push_back(c_[i] * CycloNum(static_cast<long>(i)));
    }
    return UPoly(std::move(v));
}

UPoly UPoly::monic() const
{
    if (c_.empty()) {
        return *this;
    }
    const CycloNum inv = c_.back().inverse();
    std::vector<CycloNum> v = c_;
    for (auto &x : v) {
        x *= inv;
    }
    return UPoly(std::move(v));
}

int UPoly::root_multiplicity(const CycloNum &r) const
{
    ensure(!is_zero(), "root multiplicity of the zero polynomial");
    int m = 0;
    UPoly p = *this;
    const UPoly lin = linear_root(r);
    while (p.degree() >= 1 && p.eval(r).is_zero()) {
        p = exact_div(p, lin);
        ++m;
    }
    return m;
}

int UPoly::low_order() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            return static_cast<int>(i);
        }
    }
    return kInfinity;
}

UPoly &UPoly::operator+=(const UPoly &o)
{
    if (c_.size() < o.c_.size()) {
        c_.resize(o.c_.size());
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        c_[i] += o.c_[i];
    }
    trim();
    return *this;
}

UPoly &UPoly::operator-=(const UPoly &o)
{
    if (c_.size() < o.c_.size()) {
        c_.resize(o.c_.size());
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        c_[i] -= o.c_[i];
    }
    trim();
    return *this;
}

UPoly operator*(const UPoly &a, const UPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return UPoly{};
    }
    std::vector<CycloNum> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            v[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return UPoly(std::move(v));
}

void UPoly::divmod(const UPoly &a, const UPoly &b, UPoly &q, UPoly &r)
{
    if (b.is_zero()) {
        fail(ErrorKind::InvalidInput, "polynomial division by zero");
    }
    r = a;
    std::vector<CycloNum> qc(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
    const CycloNum inv = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int shift = r.degree() - b.degree();
        const CycloNum c = r.lead() * inv;
        qc[static_cast<std::size_t>(shift)] = c;
        for (std::size_t k = 0; k < b.c_.size(); ++k) {
            r.c_[static_cast<std::size_t>(shift) + k] -= c * b.c_[k];
        }
        r.c_.back() = CycloNum{};
        r.trim();
    }
    q = UPoly(std::move(qc));
}

UPoly UPoly::exact_div(const UPoly &a, const UPoly &b)
{
    UPoly q, r;
    divmod(a, b, q, r);
    ensure(r.is_zero(), "inexact polynomial division");
    return q;
}

UPoly UPoly::gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string UPoly::str(char var) const
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
        os << c_[i].str();
        if (i > 0) {
            os << '*' << var << '^' << i;
        }
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(std::map<Monomial, CycloNum> terms, std::optional<int> prec) : terms_(std::move(terms)), prec_(prec)
{
    normalize();
}

void BiPoly::normalize()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero() || (prec_ && it->first.first >= *prec_)) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

BiPoly BiPoly::monomial(const CycloNum &c, int i, int j)
{
    return BiPoly({{{i, j}, c}});
}

CycloNum BiPoly::coeff(int i, int j) const
{
    if (i >= precision()) {
        fail(ErrorKind::TruncationInsufficient, "monomial beyond the known x-adic order");
    }
    auto it = terms_.find({i, j});
    return it == terms_.end() ? CycloNum{} : it->second;
}

int BiPoly::order() const
{
    int best = kInfinity;
    for (const auto &[m, c] : terms_) {
        best = std::min(best, m.first + m.second);
    }
    // Unknown terms have total degree >= precision.
    if (prec_ && best > *prec_) {
        fail(ErrorKind::TruncationInsufficient, "multiplicity undecided below x-adic order " + std::to_string(*prec_));
    }
    return best;
}

int BiPoly::total_degree() const
{
    int d = -1;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.first + m.second);
    }
    return d;
}

int BiPoly::degree_x() const
{
    int d = -1;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.first);
    }
    return d;
}

int BiPoly::degree_y() const
{
    int d = -1;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.second);
    }
    return d;
}

BiPoly BiPoly::homogeneous_part(int d) const
{
    if (d >= precision()) {
        fail(ErrorKind::TruncationInsufficient,
             "homogeneous part of degree " + std::to_string(d) + " beyond jet order " + std::to_string(precision()));
    }
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, c] : terms_) {
        if (m.first + m.second == d) {
            out.emplace(m, c);
        }
    }
    return BiPoly(std::move(out));
}

BiPoly BiPoly::truncated(int k) const
{
    if (k >= precision()) {
        return *this;
    }
    return BiPoly(terms_, k);
}

BiPoly BiPoly::dx() const
{
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, c] : terms_) {
        if (m.first > 0) {
            out.emplace(Monomial{m.first - 1, m.second}, c * CycloNum(static_cast<long>(m.first)));
        }
    }
    return BiPoly(std::move(out), prec_ ? std::optional<int>(*prec_ - 1) : std::nullopt);
}

BiPoly BiPoly::dy() const
{
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, c] : terms_) {
        if (m.second > 0) {
            out.emplace(Monomial{m.first, m.second - 1}, c * CycloNum(static_cast<long>(m.second)));
        }
    }
    return BiPoly(std::move(out), prec_);
}

BiPoly BiPoly::scaled(const CycloNum &c) const
{
    std::map<Monomial, CycloNum> out;
    if (!c.is_zero()) {
        for (const auto &[m, v] : terms_) {
            out.emplace(m, v * c);
        }
    }
    return BiPoly(std::move(out), prec_);
}

namespace
{

// Binomial expansion table row: (z + a)^n coefficients of z^k, k = 0..n.
std::vector<CycloNum> shifted_power(const CycloNum &a, int n)
{
    std::vector<CycloNum> row(static_cast<std::size_t>(n) + 1);
    BigInt binom = 1;
    std::vector<CycloNum> apow(static_cast<std::size_t>(n) + 1);
    apow[0] = CycloNum(1L);
    for (int k = 1; k <= n; ++k) {
        apow[static_cast<std::size_t>(k)] = apow[static_cast<std::size_t>(k - 1)] * a;
    }
    for (int k = 0; k <= n; ++k) {
        row[static_cast<std::size_t>(k)] = apow[static_cast<std::size_t>(n - k)] * CycloNum(Rat(binom));
        binom = binom * (n - k) / (k + 1);
    }
    return row;
}

} // namespace

BiPoly BiPoly::translated(const CycloNum &x0, const CycloNum &y0) const
{
    ensure(is_exact() || x0.is_zero(), "x-translation of a truncated jet");
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, c] : terms_) {
        const auto rx = shifted_power(x0, m.first);
        const auto ry = shifted_power(y0, m.second);
        for (int a = 0; a <= m.first; ++a) {
            if (rx[static_cast<std::size_t>(a)].is_zero()) {
                continue;
            }
            for (int b = 0; b <= m.second; ++b) {
                if (ry[static_cast<std::size_t>(b)].is_zero()) {
                    continue;
                }
                out[{a, b}] += c * rx[static_cast<std::size_t>(a)] * ry[static_cast<std::size_t>(b)];
            }
        }
    }
    return BiPoly(std::move(out), prec_);
}

int BiPoly::x_adic_order() const
{
    int k = kInfinity;
    for (const auto &[m, c] : terms_) {
        k = std::min(k, m.first);
    }
    return k;
}

int BiPoly::y_adic_order() const
{
    int k = kInfinity;
    for (const auto &[m, c] : terms_) {
        k = std::min(k, m.second);
    }
    return k;
}

BiPoly BiPoly::divide_x(int k) const
{
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, c] : terms_) {
        ensure(m.first >= k, "divide_x on a non-multiple");
        out.emplace(Monomial{m.first - k, m.second}, c);
    }
    return BiPoly(std::move(out), prec_ ? std::optional<int>(*prec_ - k) : std::nullopt);
}

BiPoly BiPoly::divide_y(int k) const
{
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, c] : terms_) {
        ensure(m.second >= k, "divide_y on a non-multiple");
        out.emplace(Monomial{m.first, m.second - k}, c);
    }
    return BiPoly(std::move(out), prec_);
}

UPoly BiPoly::restrict_y0() const
{
    std::vector<CycloNum> v;
    for (const auto &[m, c] : terms_) {
        if (m.second == 0) {
            if (static_cast<int>(v.size()) <= m.first) {
                v.resize(static_cast<std::size_t>(m.first) + 1);
            }
            v[static_cast<std::size_t>(m.first)] = c;
        }
    }
    return UPoly(std::move(v));
}

UPoly BiPoly::restrict_x0() const
{
    std::vector<CycloNum> v;
    for (const auto &[m, c] : terms_) {
        if (m.first == 0) {
            if (static_cast<int>(v.size()) <= m.second) {
                v.resize(static_cast<std::size_t>(m.second) + 1);
            }
            v[static_cast<std::size_t>(m.second)] = c;
        }
    }
    return UPoly(std::move(v));
}

std::vector<UPoly> BiPoly::coeffs_in_y() const
{
    std::vector<std::vector<CycloNum>> rows(static_cast<std::size_t>(std::max(degree_y(), -1) + 1));
    for (const auto &[m, c] : terms_) {
        auto &r = rows[static_cast<std::size_t>(m.second)];
        if (static_cast<int>(r.size()) <= m.first) {
            r.resize(static_cast<std::size_t>(m.first) + 1);
        }
        r[static_cast<std::size_t>(m.first)] = c;
    }
    std::vector<UPoly> out;
    for (auto &r : rows) {
        out.emplace_back(std::move(r));
    }
    return out;
}

std::vector<UPoly> BiPoly::coeffs_in_x() const
{
    std::map<Monomial, CycloNum> swapped;
    for (const auto &[m, c] : terms_) {
        swapped.emplace(Monomial{m.second, m.first}, c);
    }
    return BiPoly(std::move(swapped)).coeffs_in_y();
}

CycloNum BiPoly::eval(const CycloNum &x0, const CycloNum &y0) const
{
    ensure(is_exact(), "point evaluation of a truncated jet");
    CycloNum acc;
    for (const auto &[m, c] : terms_) {
        acc += c * x0.pow(m.first) * y0.pow(m.second);
    }
    return acc;
}

BiPoly &BiPoly::operator+=(const BiPoly &o)
{
    if (o.precision() < precision()) {
        prec_ = o.prec_;
    }
    for (const auto &[m, c] : o.terms_) {
        terms_[m] += c;
    }
    normalize();
    return *this;
}

BiPoly BiPoly::operator-() const
{
    return scaled(CycloNum(-1L));
}

BiPoly &BiPoly::operator-=(const BiPoly &o)
{
    return *this += -o;
}

BiPoly operator*(const BiPoly &a, const BiPoly &b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) {
        return BiPoly{};
    }
    // Unknown part of a lies in x^Ka; times b it lands in x^(Ka + xval(b)).
    auto low = [](const BiPoly &p) {
        int best = p.precision();
        for (const auto &[m, c] : p.terms_) {
            best = std::min(best, m.first);
        }
        return best;
    };
    long long k = kInfinity;
    if (a.prec_) {
        k = std::min<long long>(k, static_cast<long long>(*a.prec_) + low(b));
    }
    if (b.prec_) {
        k = std::min<long long>(k, static_cast<long long>(*b.prec_) + low(a));
    }
    std::map<Monomial, CycloNum> out;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            const int i = ma.first + mb.first;
            const int j = ma.second + mb.second;
            if (i < k) {
                out[{i, j}] += ca * cb;
            }
        }
    }
    return BiPoly(std::move(out), k >= kInfinity ? std::nullopt : std::optional<int>(static_cast<int>(k)));
}

BiPoly BiPoly::pow(int e) const
{
    BiPoly out = constant(CycloNum(1L));
    for (int i = 0; i < e; ++i) {
        out = out * *this;
    }
    return out;
}

std::string BiPoly::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << c.str();
        if (m.first) {
            os << "*x^" << m.first;
        }
        if (m.second) {
            os << "*y^" << m.second;
        }
    }
    if (first) {
        os << "0";
    }
    if (prec_) {
        os << " + O(m^" << *prec_ << ")";
    }
    return os.str();
}

USeries poly_eval_series(const BiPoly &f, const USeries &s1, const USeries &s2)
{
    int cap = kInfinity;
    if (!f.is_exact()) {
        // The unknown part lies in x^K C{x,y}.
        const int v = s1.valuation_bound();
        if (v < 1 || s2.valuation_bound() < 0) {
            fail(ErrorKind::Internal, "truncated polynomial evaluated on a series with a constant term");
        }
        cap = static_cast<int>(std::min<long long>(static_cast<long long>(f.precision()) * v, kInfinity));
    }
    std::vector<USeries> p1{USeries({CycloNum(1L)})};
    std::vector<USeries> p2{USeries({CycloNum(1L)})};
    USeries acc;
    for (const auto &[m, c] : f.terms()) {
        while (static_cast<int>(p1.size()) <= m.first) {
            p1.push_back((p1.back() * s1).truncated(cap));
        }
        while (static_cast<int>(p2.size()) <= m.second) {
            p2.push_back((p2.back() * s2).truncated(cap));
        }
        acc += (p1[static_cast<std::size_t>(m.first)] * p2[static_cast<std::size_t>(m.second)]).scaled(c).truncated(cap);
    }
    if (cap != kInfinity) {
        acc = acc.truncated(cap);
        if (acc.is_exact()) {
            acc = USeries(acc.coeffs(), cap);
        }
    }
    return acc;
}

UPoly resultant_y(const BiPoly &f, const BiPoly &g)
{
    ensure(f.is_exact() && g.is_exact(), "resultant of truncated jets");
    const std::vector<UPoly> a = f.coeffs_in_y();
    const std::vector<UPoly> b = g.coeffs_in_y();
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    if (m < 0 || n < 0) {
        return UPoly{};
    }
    if (m == 0) {
        UPoly r = UPoly::constant(CycloNum(1L));
        for (int i = 0; i < n; ++i) {
            r = r * a[0];
        }
        return r;
    }
    if (n == 0) {
        UPoly r = UPoly::constant(CycloNum(1L));
        for (int i = 0; i < m; ++i) {
            r = r * b[0];
        }
        return r;
    }
    const int size = m + n;
    std::vector<std::vector<UPoly>> s(static_cast<std::size_t>(size), std::vector<UPoly>(static_cast<std::size_t>(size)));
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k <= m; ++k) {
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a[static_cast<std::size_t>(m - k)];
        }
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k <= n; ++k) {
            s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b[static_cast<std::size_t>(n - k)];
        }
    }
    // Fraction-free Bareiss elimination.
    UPoly prev = UPoly::constant(CycloNum(1L));
    bool negate = false;
    for (int k = 0; k < size - 1; ++k) {
        const auto K = static_cast<std::size_t>(k);
        if (s[K][K].is_zero()) {
            int piv = -1;
            for (int r = k + 1; r < size; ++r) {
                if (!s[static_cast<std::size_t>(r)][K].is_zero()) {
                    piv = r;
                    break;
                }
            }
            if (piv < 0) {
                return UPoly{};
            }
            std::swap(s[K], s[static_cast<std::size_t>(piv)]);
            negate = !negate;
        }
        for (int i = k + 1; i < size; ++i) {
            const auto I = static_cast<std::size_t>(i);
            for (int j = k + 1; j < size; ++j) {
                const auto J = static_cast<std::size_t>(j);
                s[I][J] = UPoly::exact_div(s[K][K] * s[I][J] - s[I][K] * s[K][J], prev);
            }
            s[I][K] = UPoly{};
        }
        prev = s[K][K];
    }
    UPoly det = s[static_cast<std::size_t>(size - 1)][static_cast<std::size_t>(size - 1)];
    if (negate) {
        det = UPoly{} - det;
    }
    return det;
}

} // namespace folbound
