#include <folbound/blowup.hpp>

#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace folbound
{

int ParamBranch::multiplicity() const
{
    return std::min(x.order(), y.order());
}

ParamBranch param_of(const PuiseuxBranch &b)
{
    return ParamBranch{b.name, USeries::monomial(CycloNum(1L), b.n), b.c};
}

Field hamiltonian(const BiPoly &f)
{
    return Field{f.dy(), -f.dx()};
}

int field_multiplicity(const Field &X)
{
    // One component may be decided while the other is only known to vanish.
    int m = kInfinity;
    for (const BiPoly *p : {&X.a, &X.b}) {
        for (const auto &[mono, c] : p->terms()) {
            m = std::min(m, mono.first + mono.second);
        }
    }
    if (m > X.precision()) {
        fail(ErrorKind::TruncationInsufficient, "field multiplicity undecided below x-adic order " + std::to_string(X.precision()));
    }
    if (m == kInfinity) {
        fail(ErrorKind::InvalidInput, "zero vector field");
    }
    return m;
}

BiPoly tangent_cone_form(const Field &X)
{
    const int m = field_multiplicity(X);
    return BiPoly::y() * X.a.homogeneous_part(m) - BiPoly::x() * X.b.homogeneous_part(m);
}

bool is_dicritical(const Field &X)
{
    return tangent_cone_form(X).known_terms_empty();
}

bool operator<(const ChartStep &a, const ChartStep &b)
{
    if (a.kind != b.kind) {
        return a.kind < b.kind;
    }
    return a.c < b.c;
}

namespace
{

// Coefficients of (v + c)^j, low degree first, cached per call site.
class ShiftedPowers
{
public:
    explicit ShiftedPowers(CycloNum c) : c_(std::move(c)) {}

    const std::vector<CycloNum> &row(int j)
    {
        while (static_cast<int>(rows_.size()) <= j) {
            if (rows_.empty()) {
                rows_.push_back({CycloNum(1L)});
                continue;
            }
            const auto &prev = rows_.back();
            std::vector<CycloNum> next(prev.size() + 1);
            for (std::size_t k = 0; k < prev.size(); ++k) {
                next[k + 1] += prev[k];
                if (!c_.is_zero()) {
                    next[k] += prev[k] * c_;
                }
            }
            rows_.push_back(std::move(next));
        }
        return rows_[static_cast<std::size_t>(j)];
    }

private:
    CycloNum c_;
    std::vector<std::vector<CycloNum>> rows_;
};

// p(x, x (v + c)); the x-adic precision is unchanged.
BiPoly substitute_slope(const BiPoly &p, ShiftedPowers &sp)
{
    const int K = p.precision();
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, coef] : p.terms()) {
        const int e = m.first + m.second;
        if (e >= K) {
            continue;
        }
        const auto &row = sp.row(m.second);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!row[k].is_zero()) {
                out[{e, static_cast<int>(k)}] += coef * row[k];
            }
        }
    }
    return BiPoly(std::move(out), p.is_exact() ? std::nullopt : std::optional<int>(K));
}

// p(u y, y); u inherits the x-adic precision.
BiPoly substitute_inverse(const BiPoly &p)
{
    std::map<Monomial, CycloNum> out;
    for (const auto &[m, coef] : p.terms()) {
        out.emplace(Monomial{m.first, m.first + m.second}, coef);
    }
    return BiPoly(std::move(out), p.is_exact() ? std::nullopt : std::optional<int>(p.precision()));
}

Field common_precision(Field f)
{
    const int k = f.precision();
    if (k != kInfinity) {
        f.a = f.a.truncated(k);
        f.b = f.b.truncated(k);
    }
    return f;
}

// Order at s = 0 of a restricted coefficient, certified below `known`.
int certified_low_order(const UPoly &p, int known)
{
    const int o = p.low_order();
    if (o >= known) {
        fail(ErrorKind::TruncationInsufficient, "axis restriction vanishes to its known order");
    }
    return o;
}

} // namespace

BlownField blow_up_field(const Field &X, const ChartStep &step)
{
    BlownField out;
    out.nu = field_multiplicity(X);
    out.dicritical = is_dicritical(X);
    const int s = out.dicritical ? out.nu : out.nu - 1;
    out.divided = s;
    if (step.kind == ChartKind::Slope) {
        ShiftedPowers sp(step.c);
        const BiPoly at = substitute_slope(X.a, sp);
        const BiPoly bt = substitute_slope(X.b, sp);
        const BiPoly vc = BiPoly::y() + BiPoly::constant(step.c);
        out.field.a = at.divide_x(s);
        out.field.b = (bt - vc * at).divide_x(s + 1);
    } else {
        ensure(step.c.is_zero(), "inverse chart only at its origin");
        const BiPoly at = substitute_inverse(X.a);
        const BiPoly bt = substitute_inverse(X.b);
        out.field.a = (at - BiPoly::x() * bt).divide_y(s + 1);
        out.field.b = bt.divide_y(s);
    }
    out.field = common_precision(std::move(out.field));
    return out;
}

ChartStep branch_direction(const ParamBranch &g)
{
    const int ox = g.x.order();
    const int oy = g.y.order();
    if (ox <= oy) {
        CycloNum c;
        if (ox == oy) {
            c = g.y.coeff(oy) / g.x.coeff(ox);
        }
        return ChartStep{ChartKind::Slope, c};
    }
    return ChartStep{ChartKind::Inverse, CycloNum{}};
}

ParamBranch blow_up_branch(const ParamBranch &g, const ChartStep &step, int prec)
{
    ParamBranch out{g.name, g.x, g.y};
    if (step.kind == ChartKind::Slope) {
        out.y = USeries::divide(g.y, g.x, prec) - USeries({step.c});
    } else {
        out.x = USeries::divide(g.x, g.y, prec);
    }
    return out;
}

std::vector<int> TreePoint::divisors() const
{
    std::vector<int> out;
    if (div_x >= 0) {
        out.push_back(div_x);
    }
    if (div_y >= 0) {
        out.push_back(div_y);
    }
    return out;
}

int ResolutionTree::corner_point(int p, int q) const
{
    for (const auto &pt : points) {
        if (pt.center < 0 && pt.is_corner() &&
            ((pt.div_x == p && pt.div_y == q) || (pt.div_x == q && pt.div_y == p))) {
            return pt.id;
        }
    }
    return -1;
}

std::vector<int> ResolutionTree::path(int branch) const
{
    std::vector<int> out;
    for (const auto &c : centers) {
        if (std::find(c.branches.begin(), c.branches.end(), branch) != c.branches.end()) {
            out.push_back(c.index);
        }
    }
    return out;
}

std::vector<int> ResolutionTree::mult_seq(int branch) const
{
    std::vector<int> out;
    for (int l : path(branch)) {
        const auto &c = centers[static_cast<std::size_t>(l)];
        const auto it = std::find(c.branches.begin(), c.branches.end(), branch);
        out.push_back(c.branch_mult[static_cast<std::size_t>(it - c.branches.begin())]);
    }
    return out;
}

bool ResolutionTree::descends(int l, int anc) const
{
    while (l >= 0) {
        if (l == anc) {
            return true;
        }
        l = centers[static_cast<std::size_t>(l)].parent;
    }
    return false;
}

namespace
{

bool needs_blow_up(const TreePoint &p)
{
    if (p.local.size() >= 2) {
        return true;
    }
    if (p.local.empty()) {
        return false;
    }
    const ParamBranch &g = p.local.front();
    if (g.multiplicity() > 1) {
        return true;
    }
    if (p.is_corner()) {
        return true;
    }
    // A smooth branch must cross the divisor transversally.
    if (p.div_x >= 0 && g.x.order() > 1) {
        return true;
    }
    if (p.div_y >= 0 && g.y.order() > 1) {
        return true;
    }
    return false;
}

void link(std::vector<Component> &comps, int p, int q)
{
    comps[static_cast<std::size_t>(p - 1)].neighbours.push_back(q);
    comps[static_cast<std::size_t>(q - 1)].neighbours.push_back(p);
}

void unlink(std::vector<Component> &comps, int p, int q)
{
    auto drop = [](std::vector<int> &v, int x) { v.erase(std::remove(v.begin(), v.end(), x), v.end()); };
    drop(comps[static_cast<std::size_t>(p - 1)].neighbours, q);
    drop(comps[static_cast<std::size_t>(q - 1)].neighbours, p);
}

} // namespace

ResolutionTree resolve_curve(const std::vector<ParamBranch> &branches, int series_prec)
{
    if (branches.empty()) {
        fail(ErrorKind::InvalidInput, "resolve_curve needs at least one branch");
    }
    ResolutionTree tree;
    tree.branches = branches;
    tree.attach.resize(branches.size());
    TreePoint root;
    root.id = 0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        root.branches.push_back(static_cast<int>(i));
        root.local.push_back(branches[i]);
        ensure(branches[i].multiplicity() >= 1, "branch " + branches[i].name + " does not pass through the origin");
    }
    tree.points.push_back(root);
    std::deque<int> pending{0};
    // Distinct branches separate after at most their contact order of blow-ups.
    const std::size_t depth_cap = static_cast<std::size_t>(series_prec) * branches.size() + 64;
    while (!pending.empty()) {
        if (tree.centers.size() > depth_cap) {
            fail(ErrorKind::InvalidInput, "branches do not separate; repeated branch in the input?");
        }
        const int pid = pending.front();
        pending.pop_front();
        if (pid != 0 && !needs_blow_up(tree.points[static_cast<std::size_t>(pid)])) {
            const TreePoint &pt = tree.points[static_cast<std::size_t>(pid)];
            if (!pt.branches.empty()) {
                const int comp = pt.div_x >= 0 ? pt.div_x : pt.div_y;
                tree.attach[static_cast<std::size_t>(pt.branches.front())] = Attachment{pt.branches.front(), pid, comp};
            }
            continue;
        }
        const int l = static_cast<int>(tree.centers.size());
        const int fresh = l + 1;
        TreePoint pt = tree.points[static_cast<std::size_t>(pid)];
        tree.points[static_cast<std::size_t>(pid)].center = l;

        Center c;
        c.index = l;
        c.point = pid;
        c.parent = pt.parent;
        c.through = pt.divisors();
        c.branches = pt.branches;
        for (const auto &g : pt.local) {
            c.branch_mult.push_back(g.multiplicity());
            c.curve_mult += c.branch_mult.back();
        }

        Component comp;
        comp.id = fresh;
        comp.father = l;
        comp.weight = 0;
        for (int d : c.through) {
            comp.weight += tree.component(d).weight;
        }
        if (c.through.empty()) {
            comp.weight = 1;
        }
        tree.components.push_back(comp);
        if (pt.is_corner()) {
            unlink(tree.components, pt.div_x, pt.div_y);
        }
        for (int d : c.through) {
            link(tree.components, d, fresh);
        }

        std::map<ChartStep, TreePoint> kids;
        auto kid = [&](const ChartStep &st) -> TreePoint & {
            auto it = kids.find(st);
            if (it == kids.end()) {
                TreePoint k;
                k.parent = l;
                k.step = st;
                if (st.kind == ChartKind::Slope) {
                    k.div_x = fresh;
                    k.div_y = st.c.is_zero() ? pt.div_y : -1;
                } else {
                    k.div_x = pt.div_x;
                    k.div_y = fresh;
                }
                it = kids.emplace(st, std::move(k)).first;
            }
            return it->second;
        };
        for (std::size_t k = 0; k < pt.local.size(); ++k) {
            const ChartStep st = branch_direction(pt.local[k]);
            TreePoint &target = kid(st);
            target.branches.push_back(pt.branches[k]);
            target.local.push_back(blow_up_branch(pt.local[k], st, series_prec));
        }
        if (pt.div_x >= 0) {
            kid(ChartStep{ChartKind::Inverse, CycloNum{}});
        }
        if (pt.div_y >= 0) {
            kid(ChartStep{ChartKind::Slope, CycloNum{}});
        }
        for (auto &[st, k] : kids) {
            k.id = static_cast<int>(tree.points.size());
            c.children.push_back(k.id);
            pending.push_back(k.id);
            tree.points.push_back(std::move(k));
        }
        tree.centers.push_back(std::move(c));
    }
    for (auto &comp : tree.components) {
        std::sort(comp.neighbours.begin(), comp.neighbours.end());
    }
    return tree;
}

namespace
{

// g and h are the same branch iff h.c(t) = g.c(zeta_n^l t) for some l.
bool same_branch(const PuiseuxBranch &g, const PuiseuxBranch &h)
{
    if (g.n != h.n || g.c.stored_length() != h.c.stored_length()) {
        return false;
    }
    for (int l = 0; l < g.n; ++l) {
        bool eq = true;
        for (int e = 0; e < g.c.stored_length() && eq; ++e) {
            const CycloNum &a = g.c.coeffs()[static_cast<std::size_t>(e)];
            const CycloNum &b = h.c.coeffs()[static_cast<std::size_t>(e)];
            eq = a.is_zero() ? b.is_zero() : a * CycloNum::zeta(static_cast<unsigned>(g.n), static_cast<long>(l) * e) == b;
        }
        if (eq) {
            return true;
        }
    }
    return false;
}

} // namespace

ResolutionTree resolve_curve(const std::vector<PuiseuxBranch> &branches, int series_prec)
{
    for (std::size_t i = 0; i < branches.size(); ++i) {
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            if (same_branch(branches[i], branches[j])) {
                fail(ErrorKind::InvalidInput, "branches " + branches[i].name + " and " + branches[j].name + " coincide");
            }
        }
    }
    std::vector<ParamBranch> ps;
    for (const auto &b : branches) {
        ps.push_back(param_of(b));
    }
    return resolve_curve(ps, series_prec);
}

int axis_index(const Field &X, int axis, bool invariant)
{
    const BiPoly &p = (axis == 0) == invariant ? X.b : X.a;
    if (axis == 0) {
        if (X.precision() < 1) {
            fail(ErrorKind::TruncationInsufficient, "jet carries no information on the axis");
        }
        const int o = p.restrict_x0().low_order();
        ensure(o != kInfinity, "field vanishes along an exceptional axis");
        return o;
    }
    return certified_low_order(p.restrict_y0(), X.precision());
}

namespace
{

// Sum over the new divisor of Z (non-dicritical) or tang (dicritical), by
// counting zeros of the restricted coefficient in both charts.
int creation_sum(const Field &X, int m, bool dicritical)
{
    const BiPoly P = X.a.homogeneous_part(m);
    const BiPoly Q = X.b.homogeneous_part(m);
    // Slope chart at x = 0: non-dicritical gives Q(1,v) - v P(1,v), dicritical P(1,v).
    // Inverse chart at y = 0: non-dicritical gives P(u,1) - u Q(u,1), dicritical Q(u,1).
    std::map<int, CycloNum> slope_row, inverse_row;
    auto add = [](std::map<int, CycloNum> &row, int e, const CycloNum &c) { row[e] += c; };
    for (const auto &[mono, c] : P.terms()) {
        if (dicritical) {
            add(slope_row, mono.second, c);
        } else {
            add(slope_row, mono.second + 1, -c);
            add(inverse_row, mono.first, c);
        }
    }
    for (const auto &[mono, c] : Q.terms()) {
        if (dicritical) {
            add(inverse_row, mono.first, c);
        } else {
            add(slope_row, mono.second, c);
            add(inverse_row, mono.first + 1, -c);
        }
    }
    int degree = -1;
    for (const auto &[e, c] : slope_row) {
        if (!c.is_zero()) {
            degree = std::max(degree, e);
        }
    }
    int at_infinity = kInfinity;
    for (const auto &[e, c] : inverse_row) {
        if (!c.is_zero()) {
            at_infinity = std::min(at_infinity, e);
        }
    }
    ensure(degree >= 0 && at_infinity != kInfinity, "restricted coefficient vanishes on the divisor");
    return degree + at_infinity;
}

} // namespace

FieldAlongTree transform_along(const ResolutionTree &tree, const Field &X, int K)
{
    FieldAlongTree out;
    out.at_point.resize(tree.points.size());
    out.centers.resize(tree.centers.size());
    out.invariant.resize(tree.components.size());
    out.at_point[0] = common_precision(Field{X.a.truncated(K), X.b.truncated(K)});
    for (const auto &c : tree.centers) {
        const Field &F = out.at_point[static_cast<std::size_t>(c.point)];
        CenterFieldData &d = out.centers[static_cast<std::size_t>(c.index)];
        d.nu = field_multiplicity(F);
        d.dicritical = is_dicritical(F);
        d.divided = d.dicritical ? d.nu : d.nu - 1;
        d.creation_sum = creation_sum(F, d.nu, d.dicritical);
        ensure(d.creation_sum == (d.dicritical ? d.nu - 1 : d.nu + 1), "index sum on a new divisor");
        out.invariant[static_cast<std::size_t>(c.index)] = !d.dicritical;
        for (int child : c.children) {
            const TreePoint &pt = tree.points[static_cast<std::size_t>(child)];
            out.at_point[static_cast<std::size_t>(child)] = blow_up_field(F, pt.step).field;
        }
    }
    return out;
}

int max_order()
{
    if (const char *env = std::getenv("FOLBOUND_MAX_ORDER")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1 << 20) {
            return static_cast<int>(v);
        }
        fail(ErrorKind::InvalidInput, std::string("FOLBOUND_MAX_ORDER is not a positive integer: ") + env);
    }
    return 1024;
}

std::string resolution_dot(const ResolutionTree &tree, const FieldAlongTree *field)
{
    std::ostringstream os;
    os << "graph resolution {\n";
    for (const auto &comp : tree.components) {
        os << "  D" << comp.id << " [label=\"D" << comp.id << "\\nw=" << comp.weight;
        if (field) {
            os << "\\n" << (field->is_invariant(comp.id) ? "invariant" : "dicritical");
        }
        os << "\"];\n";
    }
    for (const auto &comp : tree.components) {
        for (int q : comp.neighbours) {
            if (q > comp.id) {
                os << "  D" << comp.id << " -- D" << q << ";\n";
            }
        }
    }
    for (std::size_t i = 0; i < tree.attach.size(); ++i) {
        const auto &a = tree.attach[i];
        os << "  b" << i << " [shape=box,label=\"" << tree.branches[i].name << "\"];\n";
        os << "  b" << i << " -- D" << a.component << " [style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace folbound
