#ifndef FOLBOUND_BRANCH_HPP
#define FOLBOUND_BRANCH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <folbound/poly.hpp>
#include <folbound/series.hpp>

namespace folbound
{

// Irreducible branch (t^n, c(t)) with polynomial c, ord(c) >= n.
struct PuiseuxBranch {
    std::string name;
    int n = 1;
    USeries c;

    // (t^n, c(t)) as a pair of series.
    USeries x_series() const;
};

// Validates and builds a branch; rejects non-primitive parametrizations
// and tangent cones equal to {x = 0}.
PuiseuxBranch make_branch(std::string name, int n, USeries c);

// Convenience for rational polynomial coefficients: terms (exponent, value).
PuiseuxBranch make_branch(std::string name, int n, const std::vector<std::pair<int, CycloNum>> &terms);

struct CharExponent {
    int p = 0; // reduced numerator
    int q = 1; // reduced denominator
};

struct BranchInvariants {
    int genus = 0;
    std::vector<int> beta;  // characteristic exponents as integers of c (beta_0 = n first)
    std::vector<CharExponent> char_exps;
    std::vector<int> e_seq; // e_0 = n > e_1 > ... > e_g = 1
    std::vector<int> q_seq; // q_i = e_0 / e_i, i = 1..g
    std::vector<int> mult_seq;
    int mu = 1;
    int delta = 0;
};

BranchInvariants branch_invariants(const PuiseuxBranch &g);

// Ramified smooth-branch set: y = s_k(u) with x = u^n, n = lcm of the n_j.
struct SmoothBranchSet {
    int n = 1;
    unsigned field_order = 1;
    std::vector<USeries> series;
    // (index of the source branch, conjugacy index l)
    std::vector<std::pair<int, int>> origin;
};

SmoothBranchSet ramified_lift(const std::vector<PuiseuxBranch> &branches, unsigned field_order);

// Reduced equation of the branch, monic of degree n in y.
BiPoly implicitize(const PuiseuxBranch &g);

// Reduced equation of a union of branches.
BiPoly curve_equation(const std::vector<PuiseuxBranch> &branches);

// (g . h) at the origin; kInfinity when the branches coincide.
int intersection_multiplicity(const PuiseuxBranch &g, const PuiseuxBranch &h);

// Same number from the ramified lifts: (1/n) sum_{a,b} ord_u(s_a - s_b).
int intersection_multiplicity_lifted(const PuiseuxBranch &g, const PuiseuxBranch &h, unsigned field_order);

// Largest contact ord_u(s_a - s_b) over pairs of distinct lifts. Throws
// TruncationInsufficient when two lifts coincide, or when a contact reaches
// the audit order (given in the units of u) below which the input
// polynomials are certified.
int truncation_audit(const SmoothBranchSet &lifts, std::optional<int> audit_order = std::nullopt);

} // namespace folbound

#endif
