#include <folbound/errors.hpp>
#include <folbound/jets.hpp>
#include <folbound/theorems.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace folbound
{

namespace
{

void require_invariant(const Field &X, const std::vector<PuiseuxBranch> &curve)
{
    for (const auto &g : curve) {
        (void)vanishing_order(X, g);
    }
}

int curve_multiplicity(const std::vector<PuiseuxBranch> &curve)
{
    int m = 0;
    for (const auto &g : curve) {
        m += g.n;
    }
    return m;
}

FieldAlongTree along_adaptive(const ResolutionTree &tree, const Field &X)
{
    return with_adaptive_precision([&](int K) { return transform_along(tree, X, K); });
}

int axis_of(const TreePoint &p, int comp)
{
    return p.div_x == comp ? 0 : 1;
}

bool transverse(const ParamBranch &g, const ParamBranch &h)
{
    const CycloNum det = g.x.coeff(1) * h.y.coeff(1) - g.y.coeff(1) * h.x.coeff(1);
    return !det.is_zero();
}

// At most two smooth, mutually transverse branches.
bool normal_crossings(const std::vector<ParamBranch> &bs, const std::vector<int> &sel)
{
    if (sel.size() > 2) {
        return false;
    }
    for (int i : sel) {
        if (bs[static_cast<std::size_t>(i)].multiplicity() != 1) {
            return false;
        }
    }
    return sel.size() < 2 || transverse(bs[static_cast<std::size_t>(sel[0])], bs[static_cast<std::size_t>(sel[1])]);
}

ParamBranch axis_branch(int axis, const std::string &name)
{
    const USeries t = USeries::monomial(CycloNum(1L), 1);
    return axis == 0 ? ParamBranch{name, USeries{}, t} : ParamBranch{name, t, USeries{}};
}

} // namespace

unsigned working_field_order(const std::vector<PuiseuxBranch> &curve)
{
    unsigned n = 1;
    for (const auto &g : curve) {
        n = std::lcm(n, static_cast<unsigned>(g.n));
        for (const auto &c : g.c.coeffs()) {
            n = std::lcm(n, c.order());
        }
    }
    return n;
}

Theorem1Report check_theorem1(const Field &X, const std::vector<PuiseuxBranch> &curve)
{
    if (curve_multiplicity(curve) < 2) {
        fail(ErrorKind::HypothesisFailed, "the invariant curve is smooth");
    }
    require_invariant(X, curve);
    Theorem1Report r;
    r.nu = field_multiplicity(X);

    const SmoothBranchSet lifts = ramified_lift(curve, working_field_order(curve));
    const JetTree jets = build_jet_tree(lifts);
    const VirtualMultiplicities vm = virtual_multiplicities(jets);
    r.mu_T = vm.mu_T;
    r.mu_D = vm.mu_D;
    r.basic = r.nu >= r.mu_T && 2 * r.nu >= r.mu_D;

    const int n = lifts.n;
    r.ramification = n;
    std::map<Monomial, CycloNum> ga, gb;
    for (const auto &[m, c] : X.a.terms()) {
        ga[{n * m.first, m.second}] += c;
    }
    for (const auto &[m, c] : X.b.terms()) {
        gb[{n * m.first + n - 1, m.second}] += c * CycloNum(static_cast<long>(n));
    }
    Field G{BiPoly(ga), BiPoly(gb)};
    const int sat = std::min(G.a.x_adic_order(), G.b.x_adic_order());
    G = Field{G.a.divide_x(sat), G.b.divide_x(sat)};

    if (is_dicritical(X)) {
        const bool axis_invariant = X.a.restrict_x0().low_order() == kInfinity;
        r.lift_hypothesis = axis_invariant && field_multiplicity(blow_up_field(X, ChartStep{ChartKind::Inverse, CycloNum{}}).field) == 0;
    } else {
        r.lift_hypothesis = !X.a.coeff(0, r.nu).is_zero();
    }

    std::vector<ParamBranch> lifted;
    for (std::size_t k = 0; k < lifts.series.size(); ++k) {
        const auto [src, l] = lifts.origin[k];
        lifted.push_back(ParamBranch{curve[static_cast<std::size_t>(src)].name + "#" + std::to_string(l),
                                     USeries::monomial(CycloNum(1L), 1), lifts.series[k]});
    }
    const ResolutionTree tree = resolve_curve(lifted);
    const FieldAlongTree along = along_adaptive(tree, G);
    r.nu_lifted = along.centers.at(0).nu;
    r.lift_keeps_nu = r.nu_lifted == r.nu;

    int terminal = 0;
    std::set<int> met;
    for (const auto &c : tree.centers) {
        bool blown_again = false;
        for (int k : c.children) {
            blown_again = blown_again || tree.points[static_cast<std::size_t>(k)].center >= 0;
        }
        terminal += blown_again ? 0 : 1;
    }
    for (const auto &a : tree.attach) {
        met.insert(a.component);
    }
    r.tree_matches_jets = tree.centers.size() == jets.nodes.size() && terminal == r.mu_T &&
                          static_cast<int>(met.size()) == r.mu_D;

    for (std::size_t id = 1; id <= tree.components.size(); ++id) {
        r.dicritical_count += along.is_invariant(static_cast<int>(id)) ? 0 : 1;
    }
    r.groups = invariant_groups(tree, along);
    r.refined = r.dicritical_count;
    for (const auto &g : r.groups) {
        int c = 0;
        for (const auto &a : tree.attach) {
            c += std::find(g.begin(), g.end(), a.component) != g.end() ? 1 : 0;
        }
        r.group_branches.push_back(c);
        r.refined += std::max(c, 1) - 1;
    }
    r.refined_holds = r.nu >= r.refined;
    r.refined_dominates = r.refined >= r.mu_T && 2 * r.refined >= r.mu_D;
    r.lifted_hertling = hertling_check(along, component_index_sums(tree, along)).equal;
    r.pass = r.basic && r.refined_holds && r.refined_dominates;
    return r;
}

WeakIsolationReport weak_isolation_at(const Field &X, const std::vector<ParamBranch> &curve, int K)
{
    WeakIsolationReport r;
    r.singular = curve.size() >= 2 || (curve.size() == 1 && curve.front().multiplicity() >= 2);
    if (!r.singular) {
        return r;
    }
    const ResolutionTree tree = resolve_curve(curve);
    const FieldAlongTree along = transform_along(tree, X, K);
    for (const auto &a : tree.attach) {
        const TreePoint &p = tree.points[static_cast<std::size_t>(a.point)];
        AttachmentKappa ak;
        ak.branch = a.branch;
        ak.point = a.point;
        ak.component = a.component;
        ak.component_invariant = along.is_invariant(a.component);
        ak.kappa = axis_index(along.at_point[static_cast<std::size_t>(a.point)], axis_of(p, a.component), ak.component_invariant);
        r.attachments.push_back(ak);
        if (ak.kappa == 0) {
            r.nulls.push_back(a.branch);
        }
    }
    std::vector<int> smooth_rest;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const int b = static_cast<int>(i);
        if (std::find(r.nulls.begin(), r.nulls.end(), b) == r.nulls.end()) {
            r.isolated.push_back(b);
            if (curve[i].multiplicity() == 1) {
                smooth_rest.push_back(b);
            }
        }
    }
    if (!normal_crossings(curve, r.nulls)) {
        return r;
    }
    r.weakly_isolated = true;
    r.bar = r.nulls;
    // Count the admissible normal-crossings parts: nulls plus up to two smooth extras.
    const std::size_t extra = 2 - r.nulls.size();
    r.decompositions = 1;
    for (std::size_t i = 0; i < smooth_rest.size() && extra >= 1; ++i) {
        auto sel = r.nulls;
        sel.push_back(smooth_rest[i]);
        r.decompositions += normal_crossings(curve, sel) ? 1 : 0;
        for (std::size_t j = i + 1; j < smooth_rest.size() && extra >= 2; ++j) {
            auto sel2 = sel;
            sel2.push_back(smooth_rest[j]);
            r.decompositions += normal_crossings(curve, sel2) ? 1 : 0;
        }
    }
    return r;
}

WeakIsolationReport weak_isolation(const Field &X, const std::vector<ParamBranch> &curve)
{
    return with_adaptive_precision([&](int K) { return weak_isolation_at(X, curve, K); });
}

WeakIsolationReport weak_isolation(const Field &X, const std::vector<PuiseuxBranch> &curve)
{
    require_invariant(X, curve);
    // Rejects repeated branches before resolving.
    (void)resolve_curve(curve);
    std::vector<ParamBranch> ps;
    for (const auto &g : curve) {
        ps.push_back(param_of(g));
    }
    return weak_isolation(X, ps);
}

namespace
{

WeakIsolationReport singular_isolation(const Field &X, const std::vector<PuiseuxBranch> &curve)
{
    WeakIsolationReport iso = weak_isolation(X, curve);
    if (!iso.singular) {
        fail(ErrorKind::HypothesisFailed, "the invariant curve is smooth");
    }
    return iso;
}

bool contains(const std::vector<int> &v, int x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

Theorem2Report check_theorem2(const Field &X, const std::vector<PuiseuxBranch> &curve)
{
    Theorem2Report r;
    r.isolation = singular_isolation(X, curve);
    r.hypothesis = r.isolation.weakly_isolated;
    r.nu = field_multiplicity(X);
    r.curve_mult = curve_multiplicity(curve);
    r.bound = 2 * r.nu >= r.curve_mult;
    if (!r.hypothesis) {
        r.pass = r.bound;
        return r;
    }
    const ResolutionTree tree = resolve_curve(curve);
    const FieldAlongTree along = along_adaptive(tree, X);
    const IndexReport idx = component_index_sums(tree, along);

    const std::size_t nc = tree.centers.size();
    std::vector<bool> separating(nc, false);
    std::vector<int> owner(nc, -1);
    for (const auto &c : tree.centers) {
        separating[static_cast<std::size_t>(c.index)] =
            c.index == 0 || (c.through.size() == 1 && !along.is_invariant(c.through.front()));
        owner[static_cast<std::size_t>(c.index)] =
            separating[static_cast<std::size_t>(c.index)] ? c.index : owner[static_cast<std::size_t>(c.parent)];
    }
    const auto weight = [&](int comp) { return tree.component(comp).weight; };
    const auto &comps = idx.components;

    std::vector<int> delta_on(tree.components.size() + 1, 0);
    std::vector<int> covered(tree.components.size() + 1, 0);
    for (const auto &c : tree.centers) {
        if (!separating[static_cast<std::size_t>(c.index)]) {
            continue;
        }
        SeparatingBlock b;
        b.center = c.index;
        for (std::size_t l = 0; l < nc; ++l) {
            if (owner[l] == c.index) {
                b.components.push_back(static_cast<int>(l) + 1);
                ++covered[l + 1];
            }
        }
        if (c.index > 0) {
            b.host = c.through.front();
            b.host_weight = weight(b.host);
            int links = 0;
            for (int q : tree.component(b.host).neighbours) {
                if (contains(b.components, q)) {
                    b.link = q;
                    ++links;
                }
            }
            ensure(links == 1, "block of a separating center must meet its host once");
            b.delta = along.is_invariant(b.link) ? 1 : 0;
            delta_on[static_cast<std::size_t>(b.host)] += b.delta;
        }
        r.blocks.push_back(std::move(b));
    }
    r.blocks_partition = std::all_of(covered.begin() + 1, covered.end(), [](int k) { return k == 1; });

    r.ancestor_valence.assign(tree.components.size(), 0);
    for (const auto &ci : comps) {
        r.ancestor_valence[static_cast<std::size_t>(ci.component - 1)] = ci.valence - delta_on[static_cast<std::size_t>(ci.component)];
    }
    const auto groups = invariant_groups(tree, along);
    r.lemmas = true;
    for (auto &b : r.blocks) {
        int dicritical_part = 0;
        for (int d : b.components) {
            const auto &ci = comps[static_cast<std::size_t>(d - 1)];
            b.weighted_kappa += ci.weight * ci.kappa_sum;
            if (!ci.invariant) {
                dicritical_part += ci.weight * (2 - r.ancestor_valence[static_cast<std::size_t>(d - 1)]);
            }
        }
        b.energy = b.weighted_kappa - b.delta * b.host_weight + dicritical_part;
        for (const auto &a : tree.attach) {
            if (contains(b.components, a.component)) {
                const int m = tree.branches[static_cast<std::size_t>(a.branch)].multiplicity();
                b.branch_mult += m;
                if (!contains(r.isolation.bar, a.branch)) {
                    b.isolated_mult += m;
                }
            }
        }
        b.energy_at_least_weight = b.energy >= b.host_weight;
        b.energy_at_least_half = 2 * b.energy >= b.branch_mult;
        b.kappa_covers_branches = b.weighted_kappa >= b.isolated_mult;
        b.hidden_groups = true;
        for (const auto &g : groups) {
            if (!std::all_of(g.begin(), g.end(), [&](int d) { return contains(b.components, d); })) {
                continue;
            }
            int s = 0;
            for (int d : g) {
                s += comps[static_cast<std::size_t>(d - 1)].weight * comps[static_cast<std::size_t>(d - 1)].kappa_sum;
            }
            b.hidden_groups = b.hidden_groups && s >= b.host_weight;
        }
        r.energy_total += b.energy;
        r.lemmas = r.lemmas && b.energy_at_least_weight && b.energy_at_least_half && b.kappa_covers_branches && b.hidden_groups;
    }
    r.energy_sums_to_nu = r.energy_total == r.nu;
    r.pass = r.bound && r.energy_sums_to_nu && r.blocks_partition && r.lemmas;
    return r;
}

Theorem3Report check_theorem3(const Field &X, const std::vector<PuiseuxBranch> &curve, int branch)
{
    if (branch < 0 || branch >= static_cast<int>(curve.size())) {
        fail(ErrorKind::InvalidInput, "no branch with index " + std::to_string(branch));
    }
    Theorem3Report r;
    r.branch = branch;
    r.isolation = singular_isolation(X, curve);
    r.hypothesis = r.isolation.weakly_isolated;
    const Field H = hamiltonian(curve_equation(curve));
    r.z_field = vanishing_order(X, curve[static_cast<std::size_t>(branch)]);
    r.z_ham = vanishing_order(H, curve[static_cast<std::size_t>(branch)]);
    r.bound = 2 * r.z_field >= r.z_ham;
    if (!r.hypothesis) {
        r.pass = r.bound;
        return r;
    }

    const ResolutionTree tree = resolve_curve(curve);
    const FieldAlongTree fa = along_adaptive(tree, X);
    const FieldAlongTree ha = along_adaptive(tree, H);
    const FollowResult ff = follow_branch(tree, fa, branch);
    const FollowResult hf = follow_branch(tree, ha, branch);
    r.final_z_field = ff.final_z;
    r.final_z_ham = hf.final_z;
    const Attachment &att = tree.attach.at(static_cast<std::size_t>(branch));

    const std::vector<int> centers = tree.path(branch);
    const int k = static_cast<int>(centers.size());
    bool gen_curve = true;
    for (int j = 0; j < k; ++j) {
        const Center &c = tree.centers[static_cast<std::size_t>(centers[static_cast<std::size_t>(j)])];
        PathStep s;
        s.center = c.index;
        s.branch_mult = ff.steps[static_cast<std::size_t>(j)].branch_mult;
        s.curve_mult = c.curve_mult;
        s.divisors = static_cast<int>(c.through.size());
        for (int d : c.through) {
            s.all_invariant = s.all_invariant && fa.is_invariant(d);
        }
        s.field_mult = ff.steps[static_cast<std::size_t>(j)].field_mult;
        s.dicritical = ff.steps[static_cast<std::size_t>(j)].dicritical;
        s.tau = ff.steps[static_cast<std::size_t>(j)].tau;
        s.ham_mult = hf.steps[static_cast<std::size_t>(j)].field_mult;
        gen_curve = gen_curve && s.ham_mult == s.curve_mult + s.divisors - 1;
        r.path.push_back(s);
        if (s.curve_mult == 1) {
            r.i_one.push_back(j);
        }
        if (s.branch_mult > 1) {
            r.iota = j;
        }
    }
    // Data at the position after j: the next center, or the attachment point.
    const auto mult_after = [&](int j) { return j + 1 < k ? r.path[static_cast<std::size_t>(j + 1)].branch_mult : 1; };
    const auto point_after = [&](int j) {
        return j + 1 < k ? tree.centers[static_cast<std::size_t>(centers[static_cast<std::size_t>(j + 1)])].point : att.point;
    };
    const auto new_divisor_invariant = [&](int j) { return fa.is_invariant(r.path[static_cast<std::size_t>(j)].center + 1); };
    const auto all_invariant_after = [&](int j) {
        bool all = true;
        for (int d : tree.points[static_cast<std::size_t>(point_after(j))].divisors()) {
            all = all && fa.is_invariant(d);
        }
        return all;
    };

    const bool omega_nonempty = r.iota >= 0 && !r.i_one.empty() && !new_divisor_invariant(r.iota);
    if (omega_nonempty) {
        r.omega = r.i_one;
    }
    r.rho = (r.i_one.empty() ? k : r.i_one.front()) - 1;

    std::vector<int> rest; // I minus Omega_1
    for (int j = 0; j < k; ++j) {
        PathStep &s = r.path[static_cast<std::size_t>(j)];
        s.in_omega = contains(r.omega, j);
        if (s.in_omega) {
            continue;
        }
        rest.push_back(j);
        const bool dic_next = !new_divisor_invariant(j);
        bool unique_dicritical = false;
        if (dic_next) {
            int count = 0;
            for (int d : tree.points[static_cast<std::size_t>(point_after(j))].divisors()) {
                count += fa.is_invariant(d) ? 0 : 1;
            }
            unique_dicritical = count == 1;
        }
        s.precursor = (dic_next && mult_after(j) < s.branch_mult) || unique_dicritical || s.all_invariant;
        s.leader = s.precursor && s.all_invariant;
        s.theta2 = 2 * s.tau - (s.ham_mult - 1);
        int need = -2;
        if (s.all_invariant || s.dicritical) {
            need = 0;
        }
        if (s.all_invariant && s.dicritical) {
            need = 2;
        }
        s.theta_ok = s.theta2 >= need;
    }

    const auto runs = [&](bool leaders) {
        std::vector<std::vector<int>> out;
        for (int j : rest) {
            const PathStep &s = r.path[static_cast<std::size_t>(j)];
            const bool starts = leaders ? s.leader : s.precursor;
            if (out.empty() || starts || out.back().back() + 1 != j) {
                out.emplace_back();
            }
            out.back().push_back(j);
        }
        return out;
    };
    const auto theta_sum = [&](const std::vector<int> &set) {
        int t = 0;
        for (int j : set) {
            t += r.path[static_cast<std::size_t>(j)].branch_mult * r.path[static_cast<std::size_t>(j)].theta2;
        }
        return t;
    };
    r.fine = runs(false);
    r.coarse = runs(true);
    r.fine_bounds = true;
    for (const auto &set : r.fine) {
        const int t = theta_sum(set);
        r.fine_theta2.push_back(t);
        const int j = set.front();
        const int rr = set.back();
        const PathStep &s = r.path[static_cast<std::size_t>(j)];
        const int delta = s.all_invariant ? 1 : 0;
        bool ok = t >= 2 * (delta - 1) * s.branch_mult;
        if (!new_divisor_invariant(j) && !all_invariant_after(rr)) {
            ok = ok && t >= 2 * (mult_after(rr) + (delta - 1) * s.branch_mult);
        }
        if (new_divisor_invariant(j)) {
            ok = ok && t >= 0;
        }
        r.fine_bounds = r.fine_bounds && s.precursor && ok;
    }
    r.coarse_bounds = true;
    for (const auto &set : r.coarse) {
        const int t = theta_sum(set);
        r.coarse_theta2.push_back(t);
        bool ok = t >= 0 && r.path[static_cast<std::size_t>(set.front())].leader;
        if (!all_invariant_after(set.back())) {
            ok = ok && t >= 2 * mult_after(set.back());
        }
        r.coarse_bounds = r.coarse_bounds && ok;
    }

    r.theta_bounds = true;
    r.field_mult_positive = true;
    for (int j : rest) {
        r.theta_bounds = r.theta_bounds && r.path[static_cast<std::size_t>(j)].theta_ok;
        r.field_mult_positive = r.field_mult_positive && r.path[static_cast<std::size_t>(j)].field_mult >= 1;
    }
    r.omega_rule = r.omega.empty() || (r.iota >= 0 && !new_divisor_invariant(r.iota) && r.path[static_cast<std::size_t>(r.iota)].precursor);

    int tf = ff.final_z;
    int th = hf.final_z;
    for (const auto &s : r.path) {
        tf += s.branch_mult * s.tau;
        th += s.branch_mult * (s.ham_mult - 1);
    }
    r.telescopes = tf == r.z_field && th == r.z_ham && gen_curve;
    r.final_lemma = r.final_z_ham == 1 && (!fa.is_invariant(att.component) || r.final_z_field >= 1);

    r.lines_case = true;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        r.lines_case = r.lines_case && curve[i].n == 1;
        for (std::size_t j = 0; j < i; ++j) {
            r.lines_case = r.lines_case && curve[i].c.coeff(1) != curve[j].c.coeff(1);
        }
    }
    if (r.lines_case) {
        r.lines_lemma = r.z_field >= r.z_ham && r.z_ham >= 1;
    }
    r.diagnostics = r.telescopes && r.final_lemma && r.theta_bounds && r.fine_bounds && r.coarse_bounds && r.omega_rule &&
                    r.field_mult_positive && r.lines_lemma;
    r.pass = r.bound && r.diagnostics;
    return r;
}

VirtualBound virtual_bound_check(const Field &X, const PuiseuxBranch &g)
{
    (void)vanishing_order(X, g);
    VirtualBound v;
    v.nu = field_multiplicity(X);
    v.mu = branch_invariants(g).mu;
    v.pass = v.nu >= v.mu;
    return v;
}

BlowupIsolationReport weak_isolation_blowup_property(const Field &X, const std::vector<PuiseuxBranch> &curve)
{
    if (!singular_isolation(X, curve).weakly_isolated) {
        fail(ErrorKind::HypothesisFailed, "the invariant curve is not weakly isolated");
    }
    const ResolutionTree tree = resolve_curve(curve);
    BlowupIsolationReport r = with_adaptive_precision([&](int K) {
        BlowupIsolationReport out;
        const FieldAlongTree along = transform_along(tree, X, K);
        const bool divisor_invariant = along.is_invariant(1);
        for (int child : tree.centers.front().children) {
            const TreePoint &p = tree.points[static_cast<std::size_t>(child)];
            std::vector<ParamBranch> germ = p.local;
            bool singular = germ.size() >= 2;
            for (const auto &g : germ) {
                singular = singular || g.multiplicity() >= 2;
            }
            if (divisor_invariant) {
                germ.push_back(axis_branch(axis_of(p, 1), "D1"));
                singular = singular || germ.size() >= 2;
            }
            if (!singular) {
                continue;
            }
            BlowupIsolationPoint bp;
            bp.point = child;
            bp.components = static_cast<int>(germ.size());
            bp.divisor_included = divisor_invariant;
            bp.report = weak_isolation_at(along.at_point[static_cast<std::size_t>(child)], germ, K);
            out.points.push_back(std::move(bp));
        }
        return out;
    });
    r.vacuous = r.points.empty();
    r.pass = std::all_of(r.points.begin(), r.points.end(), [](const BlowupIsolationPoint &p) { return p.report.weakly_isolated; });
    return r;
}

} // namespace folbound
