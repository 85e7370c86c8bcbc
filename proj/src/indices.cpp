#include <folbound/errors.hpp>
#include <folbound/indices.hpp>

#include <algorithm>
#include <functional>

namespace folbound
{

int multiplicity_foliation(const Field &X)
{
    return field_multiplicity(X);
}

int vanishing_order(const Field &X, const ParamBranch &g)
{
    const USeries A = poly_eval_series(X.a, g.x, g.y);
    const USeries B = poly_eval_series(X.b, g.x, g.y);
    const USeries dx = g.x.derivative();
    const USeries dy = g.y.derivative();
    const USeries defect = B * dx - A * dy;
    for (int e = 0; e < defect.stored_length(); ++e) {
        if (!defect.coeffs()[static_cast<std::size_t>(e)].is_zero()) {
            fail(ErrorKind::NotInvariant, "branch " + g.name + " is not invariant (defect at t^" + std::to_string(e) + ")");
        }
    }
    const bool use_x = !dx.is_exact_zero();
    const USeries &num = use_x ? A : B;
    const USeries &den = use_x ? dx : dy;
    const int o = num.order();
    if (o == kInfinity) {
        fail(ErrorKind::InvalidInput, "vector field vanishes along " + g.name);
    }
    const int z = o - den.order();
    ensure(z >= 0, "negative vanishing order");
    return z;
}

int vanishing_order(const Field &X, const PuiseuxBranch &g)
{
    return vanishing_order(X, param_of(g));
}

int tangency_order(const Field &X, const BiPoly &f, const ParamBranch &g)
{
    const BiPoly xf = X.a * f.dx() + X.b * f.dy();
    const USeries s = poly_eval_series(xf, g.x, g.y);
    if (s.is_exact_zero()) {
        fail(ErrorKind::InvariantCurve, "curve " + g.name + " is invariant; tangency order undefined");
    }
    return s.order();
}

int tangency_order(const Field &X, const PuiseuxBranch &g)
{
    return tangency_order(X, implicitize(g), param_of(g));
}

namespace
{

int axis_of(const TreePoint &p, int comp)
{
    if (p.div_x == comp) {
        return 0;
    }
    ensure(p.div_y == comp, "component does not pass through the point");
    return 1;
}

int index_at(const ResolutionTree &tree, const FieldAlongTree &field, int point, int comp)
{
    const TreePoint &p = tree.points[static_cast<std::size_t>(point)];
    return axis_index(field.at_point[static_cast<std::size_t>(point)], axis_of(p, comp), field.is_invariant(comp));
}

// Child of center c where the strict transform of comp meets the new divisor.
int corner_child(const ResolutionTree &tree, const Center &c, int comp)
{
    const TreePoint &p = tree.points[static_cast<std::size_t>(c.point)];
    for (int k : c.children) {
        const TreePoint &q = tree.points[static_cast<std::size_t>(k)];
        if (p.div_x == comp && q.step.kind == ChartKind::Inverse) {
            return k;
        }
        if (p.div_y == comp && q.step.kind == ChartKind::Slope && q.step.c.is_zero()) {
            return k;
        }
    }
    fail(ErrorKind::Internal, "missing corner point after blow-up");
}

} // namespace

IndexReport component_index_sums(const ResolutionTree &tree, const FieldAlongTree &field)
{
    IndexReport rep;
    for (const auto &comp : tree.components) {
        ComponentIndex ci;
        ci.component = comp.id;
        ci.weight = comp.weight;
        ci.invariant = field.is_invariant(comp.id);
        ci.sum = field.centers[static_cast<std::size_t>(comp.father)].creation_sum;
        rep.components.push_back(ci);
    }
    // A later blow-up on D moves the local index at the center to the new corner.
    for (const auto &c : tree.centers) {
        for (int d : c.through) {
            const int before = index_at(tree, field, c.point, d);
            const int after = index_at(tree, field, corner_child(tree, c, d), d);
            rep.components[static_cast<std::size_t>(d - 1)].sum += after - before;
        }
    }
    for (auto &ci : rep.components) {
        for (int q : tree.component(ci.component).neighbours) {
            if (field.is_invariant(q)) {
                ++ci.valence;
                if (ci.invariant) {
                    ++ci.invariant_corners;
                }
            }
        }
        ci.kappa_sum = ci.sum - ci.invariant_corners;
        ensure(ci.sum >= 0 && ci.kappa_sum >= 0, "negative index sum");
    }
    for (const auto &p : tree.points) {
        if (p.center >= 0) {
            continue;
        }
        const bool both = p.is_corner() && field.is_invariant(p.div_x) && field.is_invariant(p.div_y);
        for (int d : p.divisors()) {
            PointIndex pi;
            pi.component = d;
            pi.point = p.id;
            pi.corner = p.is_corner();
            pi.z_kind = field.is_invariant(d);
            pi.value = index_at(tree, field, p.id, d);
            pi.kappa = both ? pi.value - 1 : pi.value;
            rep.points.push_back(pi);
        }
    }
    return rep;
}

HertlingCheck hertling_check(const FieldAlongTree &field, const IndexReport &idx)
{
    HertlingCheck h;
    h.lhs = field.centers.at(0).nu + 1;
    for (const auto &ci : idx.components) {
        h.rhs += ci.weight * ci.kappa_sum;
        if (!ci.invariant) {
            h.rhs += ci.weight * (2 - ci.valence);
        }
    }
    h.equal = h.lhs == h.rhs;
    return h;
}

std::vector<std::vector<int>> invariant_groups(const ResolutionTree &tree, const FieldAlongTree &field)
{
    std::vector<std::vector<int>> groups;
    std::vector<bool> seen(tree.components.size() + 1, false);
    for (const auto &comp : tree.components) {
        if (seen[static_cast<std::size_t>(comp.id)] || !field.is_invariant(comp.id)) {
            continue;
        }
        std::vector<int> group;
        std::vector<int> stack{comp.id};
        seen[static_cast<std::size_t>(comp.id)] = true;
        while (!stack.empty()) {
            const int d = stack.back();
            stack.pop_back();
            group.push_back(d);
            for (int q : tree.component(d).neighbours) {
                if (!seen[static_cast<std::size_t>(q)] && field.is_invariant(q)) {
                    seen[static_cast<std::size_t>(q)] = true;
                    stack.push_back(q);
                }
            }
        }
        std::sort(group.begin(), group.end());
        groups.push_back(std::move(group));
    }
    return groups;
}

HiddenCheck hidden_contribution_check(const ResolutionTree &tree, const FieldAlongTree &field, const IndexReport &idx)
{
    HiddenCheck h;
    h.groups = invariant_groups(tree, field);
    for (const auto &g : h.groups) {
        int s = 0;
        int w = kInfinity;
        for (int d : g) {
            const auto &ci = idx.components[static_cast<std::size_t>(d - 1)];
            s += ci.weight * ci.kappa_sum;
            w = std::min(w, ci.weight);
        }
        h.weighted_kappa.push_back(s);
        h.min_weight.push_back(w);
        h.holds = h.holds && s >= w;
    }
    return h;
}

FollowResult follow_branch(const ResolutionTree &tree, const FieldAlongTree &field, int branch)
{
    FollowResult out;
    for (int l : tree.path(branch)) {
        const Center &c = tree.centers[static_cast<std::size_t>(l)];
        const auto &d = field.centers[static_cast<std::size_t>(l)];
        FollowStep s;
        s.center = l;
        const auto it = std::find(c.branches.begin(), c.branches.end(), branch);
        s.branch_mult = c.branch_mult[static_cast<std::size_t>(it - c.branches.begin())];
        s.field_mult = d.nu;
        s.dicritical = d.dicritical;
        s.tau = d.dicritical ? d.nu : d.nu - 1;
        out.steps.push_back(s);
    }
    const Attachment &a = tree.attach.at(static_cast<std::size_t>(branch));
    const TreePoint &p = tree.points[static_cast<std::size_t>(a.point)];
    out.final_z = vanishing_order(field.at_point[static_cast<std::size_t>(a.point)], p.local.front());
    return out;
}

ZRecursion z_recursion_check(const Field &X, const ResolutionTree &tree, const FieldAlongTree &field, int branch)
{
    ZRecursion z;
    z.direct = vanishing_order(X, tree.branches.at(static_cast<std::size_t>(branch)));
    z.follow = follow_branch(tree, field, branch);
    z.telescope = z.follow.final_z;
    for (const auto &s : z.follow.steps) {
        z.telescope += s.branch_mult * s.tau;
    }
    z.equal = z.direct == z.telescope;
    return z;
}

GeneralizedCurveCheck generalized_curve_check(const ResolutionTree &tree, const FieldAlongTree &hfield)
{
    GeneralizedCurveCheck g;
    for (const auto &c : tree.centers) {
        g.field_mult.push_back(hfield.centers[static_cast<std::size_t>(c.index)].nu);
        g.expected.push_back(c.curve_mult + static_cast<int>(c.through.size()) - 1);
        g.holds = g.holds && g.field_mult.back() == g.expected.back();
    }
    return g;
}

} // namespace folbound
