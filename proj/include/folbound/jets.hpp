#ifndef FOLBOUND_JETS_HPP
#define FOLBOUND_JETS_HPP

#include <string>
#include <vector>

#include <folbound/branch.hpp>

namespace folbound
{

// A jet sigma of order l shared by at least two lifted branches.
struct JetNode {
    int id = 0;
    int order = 0;
    std::vector<CycloNum> jet; // coefficients of u^0..u^order
    std::vector<int> fiber;    // indices into the SmoothBranchSet
    int parent = -1;
    std::vector<int> children;
    bool terminal = false;   // j_{l+1} injective on the fiber
    bool divisorial = false; // some extension has a single preimage
};

struct JetTree {
    SmoothBranchSet lifts;
    std::vector<JetNode> nodes; // breadth-first, nodes[0] is the root
    int max_contact = 0;

    std::vector<int> nodes_at_order(int l) const;
};

JetTree build_jet_tree(const SmoothBranchSet &lifts);

struct VirtualMultiplicities {
    int mu_T = 0;
    int mu_D = 0;
};

VirtualMultiplicities virtual_multiplicities(const JetTree &tree);

struct Package {
    int node = 0;
    std::vector<int> branches; // lifted branches whose strict transform meets this component
    int representative = 0;    // lowest branch id
};

struct PackagePartition {
    std::vector<Package> packages;
    // nu_0 of the subcurve made of one representative per package.
    int nu_subcurve = 0;
};

PackagePartition package_subcurve(const JetTree &tree);

// Dual tree of the resolution of the lifted curve, one vertex per jet.
std::string jet_tree_dot(const JetTree &tree);

} // namespace folbound

#endif
