#ifndef FOLBOUND_THEOREMS_HPP
#define FOLBOUND_THEOREMS_HPP

#include <string>
#include <vector>

#include <folbound/blowup.hpp>
#include <folbound/branch.hpp>
#include <folbound/indices.hpp>

namespace folbound
{

// Lower bounds for nu_0(F) from the geometry of a singular invariant curve.
struct Theorem1Report
{
    int nu = 0;
    int mu_T = 0;
    int mu_D = 0;
    bool basic = false; // nu >= mu_T and 2 nu >= mu_D

    // Ramified pullback G = (a(u^n, y), n u^(n-1) b(u^n, y)), saturated by u.
    int ramification = 1;
    int nu_lifted = 0;
    bool lift_keeps_nu = false;
    // Coordinates in which the ramification is known to keep nu: x = 0 is
    // off the tangent cone of F (or F is dicritical, {x=0} invariant and
    // its point on the first divisor regular).
    bool lift_hypothesis = false;
    bool tree_matches_jets = false;
    int dicritical_count = 0;                // N
    std::vector<std::vector<int>> groups;    // connected invariant parts of the lifted divisor
    std::vector<int> group_branches;         // c_H
    int refined = 0;                         // N + sum (max(c_H, 1) - 1)
    bool refined_holds = false;              // nu >= refined
    bool refined_dominates = false;          // refined >= max(mu_T, mu_D / 2)
    bool lifted_hertling = false;
    bool pass = false;
};

Theorem1Report check_theorem1(const Field &X, const std::vector<PuiseuxBranch> &curve);

struct AttachmentKappa
{
    int branch = 0;
    int point = 0;
    int component = 0;
    bool component_invariant = true;
    int kappa = 0;
};

struct WeakIsolationReport
{
    std::vector<AttachmentKappa> attachments;
    std::vector<int> nulls;
    std::vector<int> bar;      // branches placed in the normal-crossings part
    std::vector<int> isolated; // the remaining branches
    int decompositions = 0;    // admissible choices of the normal-crossings part
    bool singular = true;
    bool weakly_isolated = false;
};

WeakIsolationReport weak_isolation(const Field &X, const std::vector<ParamBranch> &curve);
WeakIsolationReport weak_isolation(const Field &X, const std::vector<PuiseuxBranch> &curve);
// Same with the field cut to x-adic order K; throws precision errors.
WeakIsolationReport weak_isolation_at(const Field &X, const std::vector<ParamBranch> &curve, int K);

// Data attached to one separating center P_l.
struct SeparatingBlock
{
    int center = 0;
    std::vector<int> components; // the block of components it controls
    int host = 0;                // the component carrying P_l (0 for P_0)
    int host_weight = 1;
    int link = 0;                // the component of the block meeting the host (0 for P_0)
    int delta = 1;
    int weighted_kappa = 0;
    int energy = 0;              // E_l
    int branch_mult = 0;         // multiplicities of all branches meeting the block
    int isolated_mult = 0;       // same, isolated branches only
    bool energy_at_least_weight = false;
    bool energy_at_least_half = false;
    bool kappa_covers_branches = false;
    bool hidden_groups = false;
};

// Without weak isolation only the inequality is evaluated; blocks stay empty.
struct Theorem2Report
{
    WeakIsolationReport isolation;
    bool hypothesis = false;
    int nu = 0;
    int curve_mult = 0;
    std::vector<SeparatingBlock> blocks;
    std::vector<int> ancestor_valence; // by component id - 1; only dicritical entries are meaningful
    int energy_total = 0;
    bool blocks_partition = false;
    bool energy_sums_to_nu = false;
    bool lemmas = false;
    bool bound = false; // 2 nu >= curve_mult
    bool pass = false;
};

Theorem2Report check_theorem2(const Field &X, const std::vector<PuiseuxBranch> &curve);

// One blow-up center on the path of the followed branch.
struct PathStep
{
    int center = 0;
    int branch_mult = 0;  // nu_j^gamma
    int curve_mult = 0;   // nu(Gamma_j)
    int divisors = 0;     // m_j
    bool all_invariant = true;
    int field_mult = 0;
    bool dicritical = false;
    int tau = 0;
    int ham_mult = 0;     // nu(H_j)
    bool in_omega = false;
    bool precursor = false;
    bool leader = false;
    int theta2 = 0;       // 2 theta_j
    bool theta_ok = true;
};

// Without weak isolation only Z_F, Z_H and the inequality are filled in.
struct Theorem3Report
{
    int branch = 0;
    WeakIsolationReport isolation;
    bool hypothesis = false;
    int z_field = 0;
    int z_ham = 0;
    std::vector<PathStep> path;
    std::vector<int> i_one;
    std::vector<int> omega;
    int iota = -1;
    int rho = -1;
    std::vector<std::vector<int>> fine;   // precursor runs, positions along the path
    std::vector<std::vector<int>> coarse; // leader runs
    std::vector<int> fine_theta2;
    std::vector<int> coarse_theta2;
    int final_z_field = 0;
    int final_z_ham = 0;
    bool telescopes = false;
    bool final_lemma = false;
    bool theta_bounds = false;
    bool fine_bounds = false;
    bool coarse_bounds = false;
    bool omega_rule = false;
    bool field_mult_positive = false;
    bool lines_case = false;
    bool lines_lemma = true;
    bool diagnostics = false;
    bool bound = false; // 2 Z_F >= Z_H
    bool pass = false;
};

Theorem3Report check_theorem3(const Field &X, const std::vector<PuiseuxBranch> &curve, int branch);

struct VirtualBound
{
    int nu = 0;
    int mu = 1;
    bool pass = false;
};
VirtualBound virtual_bound_check(const Field &X, const PuiseuxBranch &g);

struct BlowupIsolationPoint
{
    int point = 0;
    int components = 0;
    bool divisor_included = false;
    WeakIsolationReport report;
};

struct BlowupIsolationReport
{
    std::vector<BlowupIsolationPoint> points; // points of D_1 with a singular invariant germ
    bool vacuous = false;
    bool pass = false;
};

BlowupIsolationReport weak_isolation_blowup_property(const Field &X, const std::vector<PuiseuxBranch> &curve);

// Smallest cyclotomic order holding every coefficient of the branches and
// the roots of unity of their ramification.
unsigned working_field_order(const std::vector<PuiseuxBranch> &curve);

} // namespace folbound

#endif
