#ifndef FOLBOUND_BLOWUP_HPP
#define FOLBOUND_BLOWUP_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <folbound/branch.hpp>
#include <folbound/errors.hpp>
#include <folbound/poly.hpp>
#include <folbound/series.hpp>

namespace folbound
{

// A primitive parametrization t -> (x(t), y(t)) of a branch through the origin.
struct ParamBranch
{
    std::string name;
    USeries x;
    USeries y;
    // Local multiplicity min(ord x, ord y).
    int multiplicity() const;
};

ParamBranch param_of(const PuiseuxBranch &b);

// Vector field a d/dx + b d/dy.
struct Field
{
    BiPoly a;
    BiPoly b;
    int precision() const
    {
        return std::min(a.precision(), b.precision());
    }
};

Field hamiltonian(const BiPoly &f);
// nu_0(X) = min(nu_0(a), nu_0(b)).
int field_multiplicity(const Field &X);
// y P_m - x Q_m with m = nu_0(X).
BiPoly tangent_cone_form(const Field &X);
bool is_dicritical(const Field &X);

// Chart of one blow-up of the origin.
//   Slope:   (x, y) = (x, x (v + c)); new divisor {x = 0}; c is the slope of the center.
//   Inverse: (x, y) = (u y, y);       new divisor {y = 0}; only at u = 0.
enum class ChartKind
{
    Slope,
    Inverse
};

struct ChartStep
{
    ChartKind kind = ChartKind::Slope;
    CycloNum c;
};

bool operator<(const ChartStep &a, const ChartStep &b);

// Strict transform of X by the blow-up of the origin, read in the given chart.
struct BlownField
{
    Field field;
    int nu = 0;
    bool dicritical = false;
    // Power of the exceptional equation divided out: nu - 1 or nu.
    int divided = 0;
};
BlownField blow_up_field(const Field &X, const ChartStep &step);
ParamBranch blow_up_branch(const ParamBranch &g, const ChartStep &step, int prec);
// Chart through which the strict transform of g leaves the origin.
ChartStep branch_direction(const ParamBranch &g);

// A point of the tree of infinitely near points: a center that gets blown
// up, or a final point (branch attachment or corner) kept for index data.
struct TreePoint
{
    int id = 0;
    int parent = -1; // center index whose divisor carries the point
    ChartStep step;
    // Exceptional components through the point as local axes {x=0}, {y=0}.
    int div_x = -1;
    int div_y = -1;
    std::vector<int> branches;
    std::vector<ParamBranch> local;
    int center = -1;

    std::vector<int> divisors() const;
    bool is_corner() const
    {
        return div_x >= 0 && div_y >= 0;
    }
};

struct Center
{
    int index = 0;
    int point = 0;
    int parent = -1; // center whose blow-up created the point; -1 for P_0
    std::vector<int> through; // D(P_l)
    std::vector<int> branches;
    std::vector<int> branch_mult; // nu_{P_l}(gamma_l), parallel to branches
    int curve_mult = 0;           // nu_{P_l}(Gamma_l)
    // Children: point ids on the new divisor.
    std::vector<int> children;
};

struct Component
{
    int id = 0; // D_id is created by the blow-up of P_{id-1}
    int father = 0;
    int weight = 1;
    std::vector<int> neighbours; // final corners
};

struct Attachment
{
    int branch = 0;
    int point = 0;
    int component = 0;
};

struct ResolutionTree
{
    std::vector<ParamBranch> branches;
    std::vector<TreePoint> points;
    std::vector<Center> centers;
    std::vector<Component> components; // components[id - 1]
    std::vector<Attachment> attach;    // indexed by branch

    const Component &component(int id) const
    {
        return components.at(static_cast<std::size_t>(id - 1));
    }
    // Final corner point joining components p and q, or -1 if none was materialised.
    int corner_point(int p, int q) const;
    // Centers through which branch i passes, in order.
    std::vector<int> path(int branch) const;
    // Multiplicity sequence of branch i along its path.
    std::vector<int> mult_seq(int branch) const;
    // Is center l a descendant of (or equal to) center anc?
    bool descends(int l, int anc) const;
};

// Minimal resolution making the strict transforms smooth, disjoint and
// transverse to E at non-corner points. The origin is always blown up.
// Series quotients are carried to relative order series_prec.
ResolutionTree resolve_curve(const std::vector<ParamBranch> &branches, int series_prec = 256);
ResolutionTree resolve_curve(const std::vector<PuiseuxBranch> &branches, int series_prec = 256);

// Foliation data at every point of a tree.
struct CenterFieldData
{
    int nu = 0;
    bool dicritical = false;
    int divided = 0;
    // Degree-counted sum over the new divisor of Z (invariant) or tang (dicritical).
    int creation_sum = 0;
};

struct FieldAlongTree
{
    std::vector<Field> at_point;          // by point id
    std::vector<CenterFieldData> centers; // by center index
    // invariant[id - 1]: is D_id invariant
    std::vector<bool> invariant;

    bool is_invariant(int comp) const
    {
        return invariant.at(static_cast<std::size_t>(comp - 1));
    }
};

// The field is cut to x-adic order K at the origin.
FieldAlongTree transform_along(const ResolutionTree &tree, const Field &X, int K);

// Local index of the field along the axis {x=0} (axis 0) or {y=0} (axis 1):
// Z when the axis is invariant, tang otherwise.
int axis_index(const Field &X, int axis, bool invariant);

// Runs body(K) for K = 64, 128, ... while it throws precision errors, up to
// FOLBOUND_MAX_ORDER (default 1024).
int max_order();
template <class Body>
auto with_adaptive_precision(Body body) -> decltype(body(0))
{
    for (int K = 64;; K *= 2) {
        try {
            return body(K);
        } catch (const Error &e) {
            if (!e.is_precision() || 2 * K > max_order()) {
                throw;
            }
        }
    }
}

std::string resolution_dot(const ResolutionTree &tree, const FieldAlongTree *field = nullptr);

} // namespace folbound

#endif
