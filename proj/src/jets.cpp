#include <folbound/errors.hpp>
#include <folbound/jets.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace folbound
{

namespace
{

CycloNum coeff_at(const USeries &s, int e)
{
    return s.coeff(e);
}

// Groups a fiber by the coefficient of u^e, keeping first-seen order stable.
std::map<CycloNum, std::vector<int>> split_fiber(const SmoothBranchSet &lifts, const std::vector<int> &fiber, int e)
{
    std::map<CycloNum, std::vector<int>> groups;
    for (int b : fiber) {
        groups[coeff_at(lifts.series[static_cast<std::size_t>(b)], e)].push_back(b);
    }
    return groups;
}

} // namespace

std::vector<int> JetTree::nodes_at_order(int l) const
{
    std::vector<int> out;
    for (const auto &n : nodes) {
        if (n.order == l) {
            out.push_back(n.id);
        }
    }
    return out;
}

JetTree build_jet_tree(const SmoothBranchSet &lifts)
{
    JetTree tree;
    tree.lifts = lifts;
    if (lifts.series.size() < 2) {
        fail(ErrorKind::InvalidInput, "the jet tree needs a singular curve (at least two lifted branches)");
    }
    tree.max_contact = truncation_audit(lifts);

    JetNode root;
    root.order = 0;
    for (std::size_t i = 0; i < lifts.series.size(); ++i) {
        root.fiber.push_back(static_cast<int>(i));
    }
    root.jet.push_back(coeff_at(lifts.series[0], 0));
    for (int b : root.fiber) {
        ensure(coeff_at(lifts.series[static_cast<std::size_t>(b)], 0).is_zero(), "lifted branch off the origin");
    }
    tree.nodes.push_back(root);

    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        const int l = tree.nodes[static_cast<std::size_t>(id)].order;
        const auto groups = split_fiber(lifts, tree.nodes[static_cast<std::size_t>(id)].fiber, l + 1);
        bool injective = true;
        bool singleton = false;
        for (const auto &[c, members] : groups) {
            if (members.size() == 1) {
                singleton = true;
                continue;
            }
            injective = false;
            JetNode child;
            child.id = static_cast<int>(tree.nodes.size());
            child.order = l + 1;
            child.jet = tree.nodes[static_cast<std::size_t>(id)].jet;
            child.jet.push_back(c);
            child.fiber = members;
            child.parent = id;
            tree.nodes[static_cast<std::size_t>(id)].children.push_back(child.id);
            queue.push_back(child.id);
            tree.nodes.push_back(std::move(child));
        }
        tree.nodes[static_cast<std::size_t>(id)].terminal = injective;
        tree.nodes[static_cast<std::size_t>(id)].divisorial = singleton;
    }
    return tree;
}

VirtualMultiplicities virtual_multiplicities(const JetTree &tree)
{
    VirtualMultiplicities v;
    for (const auto &n : tree.nodes) {
        v.mu_T += n.terminal ? 1 : 0;
        v.mu_D += n.divisorial ? 1 : 0;
    }
    ensure(v.mu_D >= v.mu_T, "mu_D < mu_T");
    return v;
}

PackagePartition package_subcurve(const JetTree &tree)
{
    PackagePartition out;
    for (const auto &n : tree.nodes) {
        if (!n.divisorial) {
            continue;
        }
        Package p;
        p.node = n.id;
        for (const auto &[c, members] : split_fiber(tree.lifts, n.fiber, n.order + 1)) {
            if (members.size() == 1) {
                p.branches.push_back(members.front());
            }
        }
        std::sort(p.branches.begin(), p.branches.end());
        p.representative = p.branches.front();
        out.packages.push_back(std::move(p));
    }
    // Every representative is a smooth branch, so each contributes 1.
    out.nu_subcurve = static_cast<int>(out.packages.size());
    return out;
}

std::string jet_tree_dot(const JetTree &tree)
{
    std::ostringstream os;
    os << "graph jet_tree {\n";
    os << "  node [shape=circle];\n";
    for (const auto &n : tree.nodes) {
        os << "  j" << n.id << " [label=\"l=" << n.order << "\\n#" << n.fiber.size();
        if (n.terminal || n.divisorial) {
            os << "\\n" << (n.terminal ? "T" : "") << (n.divisorial ? "D" : "");
        }
        os << "\"";
        if (n.terminal) {
            os << ", shape=doublecircle";
        }
        os << "];\n";
    }
    for (const auto &n : tree.nodes) {
        if (n.parent >= 0) {
            os << "  j" << n.parent << " -- j" << n.id << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace folbound
