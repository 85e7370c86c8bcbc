#include <folbound/branch.hpp>
#include <folbound/errors.hpp>

#include <algorithm>
#include <numeric>

namespace folbound
{

USeries PuiseuxBranch::x_series() const
{
    return USeries::monomial(CycloNum(1L), n);
}

PuiseuxBranch make_branch(std::string name, int n, USeries c)
{
    if (n < 1) {
        fail(ErrorKind::InvalidInput, "branch " + name + ": n must be positive");
    }
    if (!c.is_exact()) {
        fail(ErrorKind::InvalidInput, "branch " + name + ": the y-coordinate must be a polynomial");
    }
    int g = n;
    for (int e = 0; e < c.stored_length(); ++e) {
        if (!c.coeffs()[static_cast<std::size_t>(e)].is_zero()) {
            g = std::gcd(g, e);
        }
    }
    if (g != 1) {
        fail(ErrorKind::InvalidInput, "branch " + name + ": parametrization is not primitive (gcd " +
                                          std::to_string(g) + ")");
    }
    if (c.order() < n) {
        fail(ErrorKind::InvalidInput, "branch " + name + ": tangent cone is x = 0 (ord c < n)");
    }
    return PuiseuxBranch{std::move(name), n, std::move(c)};
}

PuiseuxBranch make_branch(std::string name, int n, const std::vector<std::pair<int, CycloNum>> &terms)
{
    USeries c;
    for (const auto &[e, v] : terms) {
        c += USeries::monomial(v, e);
    }
    return make_branch(std::move(name), n, std::move(c));
}

BranchInvariants branch_invariants(const PuiseuxBranch &g)
{
    BranchInvariants inv;
    inv.e_seq.push_back(g.n);
    inv.beta.push_back(g.n);
    int e = g.n;
    for (int k = 0; k < g.c.stored_length() && e > 1; ++k) {
        if (g.c.coeffs()[static_cast<std::size_t>(k)].is_zero() || k % e == 0) {
            continue;
        }
        e = std::gcd(e, k);
        inv.beta.push_back(k);
        inv.e_seq.push_back(e);
        const int d = std::gcd(k, g.n);
        inv.char_exps.push_back({k / d, g.n / d});
        inv.q_seq.push_back(g.n / e);
    }
    inv.genus = static_cast<int>(inv.char_exps.size());
    inv.mu = inv.genus >= 2 ? inv.q_seq[static_cast<std::size_t>(inv.genus - 2)] : 1;

    if (inv.genus == 0) {
        inv.mult_seq = {1};
    } else {
        // Euclid on (beta_1, n), then on (beta_{i+1} - beta_i, e_i).
        for (int i = 1; i <= inv.genus; ++i) {
            long a = i == 1 ? inv.beta[1] : inv.beta[static_cast<std::size_t>(i)] - inv.beta[static_cast<std::size_t>(i - 1)];
            long b = inv.e_seq[static_cast<std::size_t>(i - 1)];
            while (b > 0) {
                const long q = a / b;
                const long r = a % b;
                for (long k = 0; k < q; ++k) {
                    inv.mult_seq.push_back(static_cast<int>(b));
                }
                a = b;
                b = r;
            }
        }
    }
    for (int m : inv.mult_seq) {
        inv.delta += m * (m - 1) / 2;
    }
    return inv;
}

SmoothBranchSet ramified_lift(const std::vector<PuiseuxBranch> &branches, unsigned field_order)
{
    SmoothBranchSet out;
    out.field_order = field_order;
    long n = 1;
    for (const auto &b : branches) {
        n = std::lcm(n, static_cast<long>(b.n));
    }
    out.n = static_cast<int>(n);
    if (field_order % static_cast<unsigned>(n) != 0) {
        fail(ErrorKind::FieldTooSmall, "cyclotomic order " + std::to_string(field_order) +
                                           " is not a multiple of the ramification order " + std::to_string(n));
    }
    for (std::size_t j = 0; j < branches.size(); ++j) {
        const auto &b = branches[j];
        const int step = static_cast<int>(n) / b.n;
        for (int l = 0; l < b.n; ++l) {
            const CycloNum omega = CycloNum::zeta(field_order, static_cast<long>(l) * (field_order / static_cast<unsigned>(b.n)));
            USeries s;
            for (int e = 0; e < b.c.stored_length(); ++e) {
                const CycloNum &ce = b.c.coeffs()[static_cast<std::size_t>(e)];
                if (!ce.is_zero()) {
                    s += USeries::monomial(ce * omega.pow(e), e * step);
                }
            }
            out.series.push_back(std::move(s));
            out.origin.emplace_back(static_cast<int>(j), l);
        }
    }
    return out;
}

BiPoly implicitize(const PuiseuxBranch &g)
{
    // prod_l (y - c(zeta_n^l u)) in (u, y), then u^n -> x.
    BiPoly prod = BiPoly::constant(CycloNum(1L));
    for (int l = 0; l < g.n; ++l) {
        const CycloNum omega = CycloNum::zeta(static_cast<unsigned>(g.n), l);
        BiPoly factor = BiPoly::y();
        for (int e = 0; e < g.c.stored_length(); ++e) {
            const CycloNum &ce = g.c.coeffs()[static_cast<std::size_t>(e)];
            if (!ce.is_zero()) {
                factor -= BiPoly::monomial(ce * omega.pow(e), e, 0);
            }
        }
        prod = prod * factor;
    }
    std::map<Monomial, CycloNum> terms;
    for (const auto &[m, c] : prod.terms()) {
        ensure(m.first % g.n == 0, "implicitization left a fractional power of x");
        CycloNum v = c.is_rational() ? CycloNum(c.rational_part()) : c;
        terms.emplace(Monomial{m.first / g.n, m.second}, v);
    }
    return BiPoly(std::move(terms));
}

BiPoly curve_equation(const std::vector<PuiseuxBranch> &branches)
{
    BiPoly f = BiPoly::constant(CycloNum(1L));
    for (const auto &b : branches) {
        f = f * implicitize(b);
    }
    return f;
}

int intersection_multiplicity(const PuiseuxBranch &g, const PuiseuxBranch &h)
{
    const USeries v = poly_eval_series(implicitize(h), g.x_series(), g.c);
    return v.order();
}

int intersection_multiplicity_lifted(const PuiseuxBranch &g, const PuiseuxBranch &h, unsigned field_order)
{
    const SmoothBranchSet lifts = ramified_lift({g, h}, field_order);
    long total = 0;
    for (std::size_t a = 0; a < lifts.series.size(); ++a) {
        if (lifts.origin[a].first != 0) {
            continue;
        }
        for (std::size_t b = 0; b < lifts.series.size(); ++b) {
            if (lifts.origin[b].first != 1) {
                continue;
            }
            const int o = (lifts.series[a] - lifts.series[b]).order();
            if (o == kInfinity) {
                return kInfinity;
            }
            total += o;
        }
    }
    ensure(total % lifts.n == 0, "ramified intersection sum not divisible by n");
    return static_cast<int>(total / lifts.n);
}

int truncation_audit(const SmoothBranchSet &lifts, std::optional<int> audit_order)
{
    int worst = 0;
    for (std::size_t a = 0; a < lifts.series.size(); ++a) {
        for (std::size_t b = a + 1; b < lifts.series.size(); ++b) {
            const int o = (lifts.series[a] - lifts.series[b]).order();
            if (o == kInfinity) {
                fail(ErrorKind::TruncationInsufficient,
                     "lifts " + std::to_string(a) + " and " + std::to_string(b) + " coincide (repeated branch)");
            }
            if (audit_order && o >= *audit_order) {
                fail(ErrorKind::TruncationInsufficient, "lifts " + std::to_string(a) + " and " + std::to_string(b) +
                                                            " agree beyond the certified order " +
                                                            std::to_string(*audit_order));
            }
            worst = std::max(worst, o);
        }
    }
    return worst;
}

} // namespace folbound
