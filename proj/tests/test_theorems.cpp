#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"

#include <folbound/errors.hpp>
#include <folbound/theorems.hpp>

using namespace folbound;
using corpus::br;

namespace
{

std::vector<PuiseuxBranch> three_lines()
{
    return {br("y0", 1, {}), br("diag", 1, {{1, 1}}), br("anti", 1, {{1, -1}})};
}

} // namespace

TEST_CASE("theorem 1 on the cusp")
{
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    const Theorem1Report h = check_theorem1(corpus::hamiltonian_of(cusp), cusp);
    CHECK(h.nu == 1);
    CHECK(h.mu_T == 1);
    CHECK(h.mu_D == 1);
    CHECK(h.ramification == 2);
    CHECK(h.nu_lifted == 1);
    CHECK(h.lift_hypothesis);
    CHECK(h.tree_matches_jets);
    CHECK(h.dicritical_count == 0);
    CHECK(h.group_branches == std::vector<int>{2});
    CHECK(h.refined == 1);
    CHECK(h.lifted_hertling);
    CHECK(h.pass);

    const Theorem1Report d = check_theorem1(corpus::linear(2, 3), cusp);
    CHECK(d.nu == 1);
    CHECK(d.nu_lifted == 1);
    CHECK_FALSE(d.lift_hypothesis);
    CHECK(d.dicritical_count == 1);
    CHECK(d.refined == 1);
    CHECK(d.pass);
}

TEST_CASE("theorem 1 on the node and the four-branch example")
{
    const Theorem1Report n = check_theorem1(corpus::node_saddle(), corpus::node());
    CHECK(n.nu == 1);
    CHECK(n.mu_T == 1);
    CHECK(n.mu_D == 1);
    CHECK(n.pass);

    const auto four = corpus::example_four_branches();
    const Theorem1Report f = check_theorem1(corpus::hamiltonian_of(four), four);
    CHECK(f.nu == 20);
    CHECK(f.mu_T == 6);
    CHECK(f.mu_D == 9);
    CHECK(f.tree_matches_jets);
    CHECK(f.lift_keeps_nu);
    CHECK(f.lifted_hertling);
    CHECK(f.refined <= 20);
    CHECK(f.pass);
}

TEST_CASE("theorem 1 needs an invariant singular curve")
{
    CHECK_THROWS_AS(check_theorem1(corpus::radial(), {br("line", 1, {{1, 1}})}), Error);
    CHECK_THROWS_AS(check_theorem1(corpus::linear(1, 2), {corpus::cusp()}), Error);
}

TEST_CASE("weak isolation")
{
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    const WeakIsolationReport h = weak_isolation(corpus::hamiltonian_of(cusp), cusp);
    CHECK(h.weakly_isolated);
    CHECK(h.nulls.empty());
    CHECK(h.attachments.front().kappa >= 1);

    const WeakIsolationReport nr = weak_isolation(corpus::radial(), corpus::node());
    CHECK(nr.weakly_isolated);
    CHECK(nr.nulls == std::vector<int>{0, 1});
    CHECK(nr.isolated.empty());
    CHECK(nr.decompositions == 1);

    const WeakIsolationReport tl = weak_isolation(corpus::radial(), three_lines());
    CHECK(tl.nulls.size() == 3);
    CHECK_FALSE(tl.weakly_isolated);

    // The quasi-homogeneous field has the cusp as a null branch.
    const WeakIsolationReport q = weak_isolation(corpus::linear(2, 3), cusp);
    CHECK(q.nulls == std::vector<int>{0});
    CHECK_FALSE(q.weakly_isolated);

    // Saddle on the node: both branches isolated, either may join the normal-crossings part.
    const WeakIsolationReport s = weak_isolation(corpus::node_saddle(), corpus::node());
    CHECK(s.weakly_isolated);
    CHECK(s.nulls.empty());
    CHECK(s.decompositions == 4);
}

TEST_CASE("theorem 2")
{
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    const Theorem2Report h = check_theorem2(corpus::hamiltonian_of(cusp), cusp);
    CHECK(h.hypothesis);
    CHECK(h.nu == 1);
    CHECK(h.curve_mult == 2);
    CHECK(h.energy_total == 1);
    CHECK(h.energy_sums_to_nu);
    CHECK(h.blocks.size() == 1);
    CHECK(h.pass);

    const Theorem2Report nr = check_theorem2(corpus::radial(), corpus::node());
    CHECK(nr.hypothesis);
    CHECK(2 * nr.nu == nr.curve_mult);
    CHECK(nr.energy_sums_to_nu);
    CHECK(nr.pass);

    const auto four = corpus::example_four_branches();
    const Theorem2Report f = check_theorem2(corpus::hamiltonian_of(four), four);
    CHECK(f.nu == 20);
    CHECK(f.curve_mult == 21);
    CHECK(f.energy_total == 20);
    CHECK(f.lemmas);
    CHECK(f.pass);

    const Theorem2Report tl = check_theorem2(corpus::radial(), three_lines());
    CHECK_FALSE(tl.hypothesis);
    CHECK_FALSE(tl.bound);
    CHECK(tl.blocks.empty());
}

TEST_CASE("separating centers after a dicritical first divisor")
{
    for (const auto &inst : corpus::dicritical_instances()) {
        CAPTURE(inst.name);
        const Theorem2Report r = check_theorem2(inst.X, inst.curve);
        CHECK(r.hypothesis);
        CHECK(r.blocks.size() == 2);
        CHECK(r.blocks[1].center == 1);
        CHECK(r.blocks[1].host == 1);
        CHECK(r.energy_sums_to_nu);
        CHECK(r.lemmas);
        CHECK(r.pass);
    }
    // D1 and D2 dicritical, D3 invariant; the line is null and stays in the normal-crossings part.
    const auto inst = corpus::dicritical_instances().back();
    const WeakIsolationReport w = weak_isolation(inst.X, inst.curve);
    CHECK(w.nulls == std::vector<int>{1});
    CHECK(w.attachments[0].component == 3);
    CHECK(w.attachments[0].component_invariant);
    CHECK(w.attachments[1].component == 2);
    CHECK_FALSE(w.attachments[1].component_invariant);
}

TEST_CASE("all weakly isolated instances")
{
    for (const auto &inst : corpus::weakly_isolated_instances()) {
        CAPTURE(inst.name);
        CHECK(weak_isolation(inst.X, inst.curve).weakly_isolated);
        CHECK(check_theorem2(inst.X, inst.curve).pass);
        for (int b = 0; b < static_cast<int>(inst.curve.size()); ++b) {
            const Theorem3Report t = check_theorem3(inst.X, inst.curve, b);
            CHECK(t.hypothesis);
            CHECK(t.diagnostics);
            CHECK(t.pass);
        }
        CHECK(weak_isolation_blowup_property(inst.X, inst.curve).pass);
    }
}

TEST_CASE("theorem 3")
{
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    const Theorem3Report q = check_theorem3(corpus::linear(2, 3), cusp, 0);
    CHECK(q.z_field == 1);
    CHECK(q.z_ham == 2);
    CHECK(q.bound);
    CHECK_FALSE(q.hypothesis);

    const Theorem3Report h = check_theorem3(corpus::hamiltonian_of(cusp), cusp, 0);
    CHECK(h.hypothesis);
    CHECK(h.z_field == h.z_ham);
    CHECK(h.telescopes);
    CHECK(h.final_z_ham == 1);
    CHECK(h.diagnostics);
    CHECK(h.pass);

    const Theorem3Report l = check_theorem3(corpus::node_saddle(), corpus::node(), 0);
    CHECK(l.hypothesis);
    CHECK(l.lines_case);
    CHECK(l.z_field >= l.z_ham);
    CHECK(l.z_ham >= 1);
    CHECK(l.pass);

    const auto four = corpus::example_four_branches();
    const Field H = corpus::hamiltonian_of(four);
    for (int b = 0; b < 4; ++b) {
        const Theorem3Report r = check_theorem3(H, four, b);
        CHECK(r.telescopes);
        CHECK(r.theta_bounds);
        CHECK(r.coarse_bounds);
        CHECK(r.fine_bounds);
        CHECK(r.pass);
    }
}

TEST_CASE("virtual multiplicity bound")
{
    const PuiseuxBranch g = br("g", 6, {{8, 1}, {10, 1}, {11, 1}});
    const VirtualBound v = virtual_bound_check(corpus::hamiltonian_of({g}), g);
    CHECK(v.mu == 3);
    CHECK(v.pass);
    CHECK(virtual_bound_check(corpus::linear(2, 3), corpus::cusp()).pass);
}

TEST_CASE("weak isolation survives one blow-up")
{
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    const BlowupIsolationReport h = weak_isolation_blowup_property(corpus::hamiltonian_of(cusp), cusp);
    CHECK_FALSE(h.vacuous);
    CHECK(h.points.size() == 1);
    CHECK(h.points.front().divisor_included);
    CHECK(h.pass);

    const BlowupIsolationReport nr = weak_isolation_blowup_property(corpus::radial(), corpus::node());
    CHECK(nr.vacuous);
    CHECK(nr.pass);

    const auto four = corpus::example_four_branches();
    const BlowupIsolationReport f = weak_isolation_blowup_property(corpus::hamiltonian_of(four), four);
    CHECK_FALSE(f.vacuous);
    CHECK(f.pass);
}
