#ifndef FOLBOUND_INDICES_HPP
#define FOLBOUND_INDICES_HPP

#include <string>
#include <vector>

#include <folbound/blowup.hpp>
#include <folbound/branch.hpp>

namespace folbound
{

int multiplicity_foliation(const Field &X);

// Z_0(X, gamma): order of alpha^* X for the parametrization alpha of gamma.
// Throws NotInvariant unless B x' = A y' along gamma.
int vanishing_order(const Field &X, const ParamBranch &g);
int vanishing_order(const Field &X, const PuiseuxBranch &g);

// tang_0(X, {f = 0}) = ord_t X(f)(alpha(t)) for an irreducible f with
// parametrization alpha. Throws InvariantCurve when X(f) vanishes on the curve.
int tangency_order(const Field &X, const BiPoly &f, const ParamBranch &g);
int tangency_order(const Field &X, const PuiseuxBranch &g);

// Index of the field at one point of one component.
struct PointIndex
{
    int component = 0;
    int point = 0;
    bool corner = false;
    bool z_kind = true; // Z on invariant components, tang on dicritical ones
    int value = 0;
    int kappa = 0;
};

struct ComponentIndex
{
    int component = 0;
    int weight = 1;
    bool invariant = true;
    // Sum over the component of Z (invariant) or tang (dicritical).
    int sum = 0;
    // Final corners with another invariant component (kappa = Z - 1 there).
    int invariant_corners = 0;
    int kappa_sum = 0;
    // Number of invariant components meeting it.
    int valence = 0;
};

struct IndexReport
{
    std::vector<ComponentIndex> components; // by component id - 1
    std::vector<PointIndex> points;         // corners and branch attachments
};

IndexReport component_index_sums(const ResolutionTree &tree, const FieldAlongTree &field);

struct HertlingCheck
{
    int lhs = 0; // nu_0(F) + 1
    int rhs = 0; // sum w kappa + sum over dicritical w (2 - valence)
    bool equal = false;
};
HertlingCheck hertling_check(const FieldAlongTree &field, const IndexReport &idx);

// For each connected set H of invariant components:
// sum over H of w kappa >= min over H of w.
struct HiddenCheck
{
    std::vector<std::vector<int>> groups;
    std::vector<int> weighted_kappa;
    std::vector<int> min_weight;
    bool holds = true;
};
HiddenCheck hidden_contribution_check(const ResolutionTree &tree, const FieldAlongTree &field, const IndexReport &idx);

// Connected components of the dual graph restricted to invariant components.
std::vector<std::vector<int>> invariant_groups(const ResolutionTree &tree, const FieldAlongTree &field);

// One infinitely near point of a followed branch.
struct FollowStep
{
    int center = 0;
    int branch_mult = 0; // nu_j^gamma
    int field_mult = 0;  // nu_{P_j}(F_j)
    bool dicritical = false;
    int tau = 0; // nu or nu - 1
};

struct FollowResult
{
    std::vector<FollowStep> steps;
    int final_z = 0; // Z_{P_k}(F_k, gamma_k) at the attachment point
};
FollowResult follow_branch(const ResolutionTree &tree, const FieldAlongTree &field, int branch);

struct ZRecursion
{
    FollowResult follow;
    int direct = 0;    // Z_0(F, gamma)
    int telescope = 0; // sum nu_j tau_j + final Z
    bool equal = false;
};
ZRecursion z_recursion_check(const Field &X, const ResolutionTree &tree, const FieldAlongTree &field, int branch);

// nu_{P_j}(H_j) = nu_{P_j}(Gamma_j) + #D(P_j) - 1 at every center.
struct GeneralizedCurveCheck
{
    std::vector<int> field_mult;
    std::vector<int> expected;
    bool holds = true;
};
GeneralizedCurveCheck generalized_curve_check(const ResolutionTree &tree, const FieldAlongTree &hfield);

} // namespace folbound

#endif
