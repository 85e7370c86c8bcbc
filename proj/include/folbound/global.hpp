#ifndef FOLBOUND_GLOBAL_HPP
#define FOLBOUND_GLOBAL_HPP

#include <string>
#include <vector>

#include <folbound/blowup.hpp>
#include <folbound/poly.hpp>
#include <folbound/theorems.hpp>

namespace folbound
{

// t -> (x(t), y(t)) / den(t) in coordinates centered at the point, den(0) != 0.
// Covers Puiseux branches (den = 1) and images of them under projective maps.
struct RationalBranch
{
    std::string name;
    UPoly x;
    UPoly y;
    UPoly den = UPoly::constant(CycloNum(1L));
};

RationalBranch rational_of(const PuiseuxBranch &g);
ParamBranch expand(const RationalBranch &g, int K);

// A point of the affine curve. An empty branch list asks for the smooth
// branch of f through the point, computed by Newton iteration.
struct GlobalPoint
{
    std::string name;
    CycloNum x;
    CycloNum y;
    std::vector<RationalBranch> branches;
};

// Affine data of an invariant curve {f = 0} of a polynomial vector field, in a
// chart whose line at infinity is generic. The points must contain every
// singular point of the curve and every zero of the field on it.
struct GlobalInstance
{
    BiPoly f;
    Field X;
    std::vector<GlobalPoint> points;
};

struct InfinityReport
{
    int m = 0;            // deg f
    int field_degree = 0; // affine degree of (a, b)
    int d = 0;            // degree of the foliation
    bool line_invariant = true;
    bool singular_on_line = true;
    bool vertical_point = true; // [0:1:0] lies on the curve
    bool transverse = false;
    bool generic = false;
};

InfinityReport infinity_genericity(const BiPoly &f, const Field &X);

// Number of absolutely irreducible factors of a reduced polynomial.
int component_count(const BiPoly &f);

struct PointData
{
    std::string name;
    CycloNum x;
    CycloNum y;
    bool curve_singular = false;
    bool field_zero = false;
    int multiplicity = 0;
    int delta = 0;
    std::vector<int> z_field; // by branch
    std::vector<int> z_ham;
};

struct GlobalData
{
    InfinityReport infinity;
    int c = 0;
    std::vector<PointData> points;
    int delta_total = 0;
    int chi = 0;
    int genus_total = 0;
    int z_field = 0;
    int z_ham = 0;
    // Pole counts read off the second chart at infinity.
    int poles_field = 0;
    int poles_ham = 0;
    int audit_shear = 0; // x -> x + s y used by the completeness audit
};

// Validates the instance and computes all point data; throws InvalidInput,
// MissingSingularity or NonRationalSingularity.
GlobalData analyze_global(const GlobalInstance &inst);

// Needs only the curve and its singular points; the field is ignored.
int euler_characteristic(const GlobalInstance &inst);

struct PoincareHopfReport
{
    GlobalData data;
    int poles_field_formula = 0; // m (d - 1)
    int poles_ham_formula = 0;   // m (m - 3)
    bool poles_field_match = false;
    bool poles_ham_match = false;
    bool field_balance = false; // Z_F - P_F = chi
    bool ham_balance = false;   // Z_H - P_H = chi
    bool pass = false;
};

PoincareHopfReport poincare_hopf_check(const GlobalInstance &inst);

struct DegreeBoundReport
{
    GlobalData data;
    int m = 0;
    int d = 0;
    int c = 0;
    std::vector<WeakIsolationReport> isolation; // singular points of the curve, in order
    bool hypothesis = false;
    bool half_bound = false;        // 2 Z_Q(F) >= Z_Q(H) at every point of the normalization
    bool chain = false;             // m(d-1) >= m(m-3)/2 - c
    bool aux = false;               // 2 d m >= m^2 - m - 2c
    bool lines = false;             // every component a line
    bool lines_lemma = false;       // Z_Q(F) >= Z_Q(H) everywhere
    bool lines_bound = false;       // m <= d + 2
    bool bound = false;             // m <= 2 d + 2
    bool irreducible_bound = false; // m <= 2 d + 1, required when c = 1
    bool tight = false;             // m = 2 d + 1 with c = 1, or m = 2 d + 2
    bool pass = false;
};

DegreeBoundReport degree_bound_verdict(const GlobalInstance &inst);

} // namespace folbound

#endif
