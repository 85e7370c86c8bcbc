// Acceptance runner: one PASS/FAIL line per criterion. With an argument N it
// runs criterion N only and exits nonzero on failure.

#include "corpus.hpp"

#include <folbound/errors.hpp>
#include <folbound/global.hpp>
#include <folbound/indices.hpp>
#include <folbound/jets.hpp>
#include <folbound/theorems.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace folbound;
using corpus::br;
using corpus::field;

namespace
{

struct Verdict
{
    bool pass = true;
    std::ostringstream note;

    void expect(bool cond, const std::string &what)
    {
        if (!cond) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// y^2 - x^p hamiltonian: 2y d/dx + p x^(p-1) d/dy
Field cusp_hamiltonian(long p)
{
    return field({{0, 1, 2}}, {{static_cast<int>(p) - 1, 0, p}});
}

FieldAlongTree along(const ResolutionTree &t, const Field &X)
{
    return with_adaptive_precision([&](int K) { return transform_along(t, X, K); });
}

// Invariant pairs (field, curve) with a singular curve.
std::vector<corpus::Instance> invariant_corpus()
{
    std::vector<corpus::Instance> out = corpus::weakly_isolated_instances();
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    out.push_back({"cusp quasi-homogeneous", corpus::linear(2, 3), cusp});
    out.push_back({"(3,4) quasi-homogeneous", corpus::linear(3, 4), {br("c34", 3, {{4, 1}})}});
    out.push_back({"(2,5) quasi-homogeneous", corpus::linear(2, 5), {br("c25", 2, {{5, 1}})}});
    out.push_back({"(2,7) hamiltonian", cusp_hamiltonian(7), {br("c27", 2, {{7, 1}})}});
    out.push_back({"three lines radial", corpus::radial(),
                   {br("y0", 1, {}), br("diag", 1, {{1, 1}}), br("anti", 1, {{1, -1}})}});
    out.push_back({"node and cusp radial-type",
                   corpus::hamiltonian_of({corpus::cusp(), br("axis", 1, {})}),
                   {corpus::cusp(), br("axis", 1, {})}});
    return out;
}

// Multiplicity sequences may differ only by trailing 1s.
bool same_up_to_ones(const std::vector<int> &a, const std::vector<int> &b)
{
    const std::size_t k = std::min(a.size(), b.size());
    if (!std::equal(a.begin(), a.begin() + static_cast<long>(k), b.begin())) {
        return false;
    }
    const auto &longer = a.size() > b.size() ? a : b;
    return std::all_of(longer.begin() + static_cast<long>(k), longer.end(), [](int m) { return m == 1; });
}

void four_branch_example(Verdict &v)
{
    const auto t0 = std::chrono::steady_clock::now();
    const JetTree tree = build_jet_tree(ramified_lift(corpus::example_four_branches(), 6));
    const VirtualMultiplicities vm = virtual_multiplicities(tree);
    const PackagePartition pk = package_subcurve(tree);
    const double secs = seconds_since(t0);
    v.note << "mu_T=" << vm.mu_T << " mu_D=" << vm.mu_D << " jet nodes=" << tree.nodes.size()
           << " packages=" << pk.packages.size() << " nu(subcurve)=" << pk.nu_subcurve << " in " << secs << " s";
    v.expect(vm.mu_T == 6 && vm.mu_D == 9, "mu_T = 6, mu_D = 9");
    v.expect(tree.nodes.size() == 29, "29 jet nodes");
    // Chain of 8 nodes carrying all 21 lifts, then three sub-trees of 7.
    int chain = 0;
    for (int id = 0; id >= 0 && tree.nodes[static_cast<std::size_t>(id)].children.size() == 1;
         id = tree.nodes[static_cast<std::size_t>(id)].children.front()) {
        v.expect(tree.nodes[static_cast<std::size_t>(id)].fiber.size() == 21, "chain fiber 21");
        ++chain;
    }
    v.expect(chain == 7, "8-node chain");
    v.expect(pk.packages.size() == 9 && pk.nu_subcurve == 9, "9 packages with nu = 9");
    v.expect(secs < 1.0, "under 1 s");
}

void quasi_homogeneous_family(Verdict &v)
{
    for (long p : {3L, 5L, 7L}) {
        const PuiseuxBranch g = br("g", 2, {{static_cast<int>(p), 1}});
        const int zf = vanishing_order(corpus::linear(2, p), g);
        const int zh = vanishing_order(corpus::hamiltonian_of({g}), g);
        v.note << "p=" << p << ": Z_F=" << zf << " Z_H=" << zh << "; ";
        v.expect(zf == 1 && zh == p - 1, "Z_F = 1 and Z_H = p - 1 for p = " + std::to_string(p));
    }
}

void hertling_identity(Verdict &v)
{
    struct Inst
    {
        const char *name;
        std::vector<PuiseuxBranch> curve;
        Field X;
    };
    const auto four = corpus::example_four_branches();
    const std::vector<Inst> list{
        {"node, non-dicritical linear", corpus::node(), corpus::linear(1, 2)},
        {"node, radial", corpus::node(), corpus::radial()},
        {"line, radial", {br("axis", 1, {})}, corpus::radial()},
        {"cusp hamiltonian", {corpus::cusp()}, cusp_hamiltonian(3)},
        {"cusp, 2x dx + 3y dy", {corpus::cusp()}, corpus::linear(2, 3)},
        {"(2,5) hamiltonian", {br("g", 2, {{5, 1}})}, cusp_hamiltonian(5)},
        {"(3,4), 3x dx + 4y dy", {br("g", 3, {{4, 1}})}, corpus::linear(3, 4)},
        {"(3,4), radial", {br("g", 3, {{4, 1}})}, corpus::radial()},
        {"cusp, mixed dicritical", {corpus::cusp()}, field({{1, 0, 1}, {0, 2, 1}}, {{0, 1, 1}})},
        {"cusp and axis hamiltonian", {corpus::cusp(), br("axis", 1, {})},
         corpus::hamiltonian_of({corpus::cusp(), br("axis", 1, {})})},
        {"four-branch hamiltonian", four, corpus::hamiltonian_of(four)},
        {"four branches, x dx + 3y dy", four, corpus::linear(1, 3)},
    };
    const auto t0 = std::chrono::steady_clock::now();
    int equal = 0;
    for (const auto &inst : list) {
        const ResolutionTree t = resolve_curve(inst.curve);
        const FieldAlongTree f = along(t, inst.X);
        const IndexReport idx = component_index_sums(t, f);
        const HertlingCheck h = hertling_check(f, idx);
        v.expect(h.equal, std::string(inst.name) + ": " + std::to_string(h.lhs) + " vs " + std::to_string(h.rhs));
        equal += h.equal ? 1 : 0;
        if (std::string(inst.name) == "cusp hamiltonian") {
            std::vector<int> w;
            for (const auto &c : t.components) {
                w.push_back(c.weight);
            }
            v.expect(w == std::vector<int>{1, 1, 2}, "cusp weights (1, 1, 2)");
        }
    }
    const double secs = seconds_since(t0);
    v.note << equal << "/" << list.size() << " instances equal in " << secs << " s";
    v.expect(list.size() >= 10, "at least 10 instances");
    v.expect(secs < 5.0, "under 5 s");
}

void recursion_consistency(Verdict &v)
{
    auto pairs = invariant_corpus();
    for (auto &i : corpus::dicritical_instances()) {
        pairs.push_back(std::move(i));
    }
    for (long p : {3L, 5L, 7L}) {
        const PuiseuxBranch g = br("g", 2, {{static_cast<int>(p), 1}});
        pairs.push_back({"family field", corpus::linear(2, p), {g}});
        pairs.push_back({"family hamiltonian", cusp_hamiltonian(p), {g}});
    }
    pairs.push_back({"line radial", corpus::radial(), {br("axis", 1, {})}});
    int checked = 0;
    for (const auto &inst : pairs) {
        const ResolutionTree t = resolve_curve(inst.curve);
        const FieldAlongTree f = along(t, inst.X);
        for (int b = 0; b < static_cast<int>(inst.curve.size()); ++b) {
            const ZRecursion z = z_recursion_check(inst.X, t, f, b);
            v.expect(z.equal, std::string(inst.name) + " branch " + std::to_string(b));
            ++checked;
        }
    }
    v.note << checked << " (F, branch) pairs from " << pairs.size() << " instances";
}

void generalized_curves(Verdict &v)
{
    const std::vector<std::vector<PuiseuxBranch>> curves{
        {corpus::cusp()}, corpus::node(), {br("g", 3, {{4, 1}})}, {br("g", 3, {{5, 1}})},
        {corpus::cusp(), br("axis", 1, {})}, {br("a", 2, {{3, 1}}), br("b", 2, {{3, 2}})},
        {br("l1", 1, {}), br("l2", 1, {{1, 1}}), br("l3", 1, {{1, -1}})},
        {br("g", 4, {{6, 1}, {7, 1}})}, {br("g", 2, {{5, 1}}), br("p", 1, {{2, 1}})},
        corpus::example_four_branches()};
    int centers = 0;
    for (const auto &bs : curves) {
        const ResolutionTree t = resolve_curve(bs);
        const GeneralizedCurveCheck g = generalized_curve_check(t, along(t, corpus::hamiltonian_of(bs)));
        v.expect(g.holds, "hamiltonian of " + bs.front().name);
        centers += static_cast<int>(t.centers.size());
    }
    v.note << curves.size() << " hamiltonians, " << centers << " centers";
}

void theorem1(Verdict &v)
{
    int n = 0;
    for (const auto &inst : invariant_corpus()) {
        const Theorem1Report r = check_theorem1(inst.X, inst.curve);
        v.expect(r.basic, std::string(inst.name) + ": nu >= max(mu_T, mu_D / 2)");
        v.expect(r.refined_holds && r.refined_dominates, std::string(inst.name) + ": refined bound");
        ++n;
    }
    const Theorem1Report d = check_theorem1(corpus::linear(2, 3), {corpus::cusp()});
    v.note << n << " instances; cusp with 2x dx + 3y dy: nu=" << d.nu << " mu_T=" << d.mu_T;
    v.expect(d.nu == 1 && d.mu_T == 1, "tight cusp instance");
}

void theorem2(Verdict &v)
{
    const auto cusp = std::vector<PuiseuxBranch>{corpus::cusp()};
    const Theorem2Report h = check_theorem2(corpus::hamiltonian_of(cusp), cusp);
    const Theorem2Report nr = check_theorem2(corpus::radial(), corpus::node());
    v.note << "cusp+H: 2*" << h.nu << " >= " << h.curve_mult << "; node+radial: 2*" << nr.nu << " >= " << nr.curve_mult;
    v.expect(h.pass && 2 * h.nu == h.curve_mult, "cusp + hamiltonian tight");
    v.expect(nr.pass && 2 * nr.nu == nr.curve_mult, "node + radial tight");
    int runs = 0;
    for (const auto &inst : corpus::weakly_isolated_instances()) {
        const Theorem2Report r = check_theorem2(inst.X, inst.curve);
        v.expect(r.pass, inst.name);
        v.expect(r.energy_total == r.nu && r.energy_sums_to_nu, std::string(inst.name) + ": energies sum to nu");
        ++runs;
    }
    v.note << "; energy sum exact on " << runs << " runs";
}

void theorem3(Verdict &v)
{
    const Theorem3Report q = check_theorem3(corpus::linear(2, 3), {corpus::cusp()}, 0);
    v.note << "cusp with 2x dx + 3y dy: Z_F=" << q.z_field << " Z_H=" << q.z_ham
           << (q.hypothesis ? "" : " (not weakly isolated: inequality only)");
    v.expect(q.z_field == 1 && q.z_ham == 2 && q.bound, "tight cusp instance");
    int branches = 0;
    for (const auto &inst : corpus::weakly_isolated_instances()) {
        for (int b = 0; b < static_cast<int>(inst.curve.size()); ++b) {
            const Theorem3Report r = check_theorem3(inst.X, inst.curve, b);
            v.expect(r.bound, std::string(inst.name) + ": 2 Z_F >= Z_H");
            // theta_j >= -1, Theta >= 0 on every run
            v.expect(r.theta_bounds && r.fine_bounds && r.coarse_bounds, std::string(inst.name) + ": theta bounds");
            v.expect(r.diagnostics, std::string(inst.name) + ": diagnostics");
            ++branches;
        }
        for (const auto &blk : check_theorem2(inst.X, inst.curve).blocks) {
            v.expect(blk.energy_at_least_weight, std::string(inst.name) + ": energy >= weight");
        }
    }
    v.note << "; diagnostics on " << branches << " branches";
}

void blowup_isolation(Verdict &v)
{
    int vacuous = 0;
    int effective = 0;
    for (const auto &inst : corpus::weakly_isolated_instances()) {
        const BlowupIsolationReport r = weak_isolation_blowup_property(inst.X, inst.curve);
        v.expect(r.pass, inst.name);
        (r.vacuous ? vacuous : effective) += 1;
    }
    v.note << effective << " effective, " << vacuous << " vacuous";
}

void global_balance(Verdict &v)
{
    for (const auto &g : corpus::global_instances()) {
        const PoincareHopfReport ph = poincare_hopf_check(g.inst);
        const DegreeBoundReport db = degree_bound_verdict(g.inst);
        const int m = ph.data.infinity.m;
        const int d = ph.data.infinity.d;
        v.note << g.name << ": " << ph.data.z_field << " - " << m * (d - 1) << " = " << ph.data.chi << " = "
               << ph.data.z_ham << " - " << m * (m - 3) << ", m=" << m << " d=" << d << "; ";
        v.expect(ph.pass, std::string(g.name) + ": balance");
        v.expect(ph.data.z_field - m * (d - 1) == ph.data.chi && ph.data.z_ham - m * (m - 3) == ph.data.chi,
                 std::string(g.name) + ": exact identity");
        v.expect(db.pass && db.bound, std::string(g.name) + ": degree bound");
        if (db.c == 1) {
            v.expect(db.irreducible_bound, std::string(g.name) + ": m <= 2d + 1");
        }
    }
    const DegreeBoundReport line = degree_bound_verdict(corpus::line_global().inst);
    v.note << "line: " << line.m << " = 2*" << line.d << " + 1";
    v.expect(line.m == 1 && line.d == 0 && line.tight, "degree-0 tight case");
}

// Random branch with at most two characteristic exponents and Q(i) coefficients.
PuiseuxBranch random_branch(std::mt19937 &rng, const std::string &name)
{
    auto gauss = [&] {
        const long a = static_cast<long>(rng() % 7) - 3;
        const long b = static_cast<long>(rng() % 5) - 2;
        const long den = 1 + static_cast<long>(rng() % 3);
        std::vector<Rat> c{Rat(a == 0 && b == 0 ? 1 : a, den), Rat(b, den)};
        return CycloNum::from_poly(c, 4);
    };
    static const int ns[] = {1, 2, 3, 4, 6};
    const int n = ns[rng() % 5];
    std::vector<int> exps;
    switch (n) {
    case 1:
        exps = {1 + static_cast<int>(rng() % 3)};
        break;
    case 2:
    case 3: {
        int e = n + 1 + static_cast<int>(rng() % 4);
        if (e % n == 0) {
            ++e;
        }
        exps = {e};
        break;
    }
    case 4: {
        const int e1 = 6 + 4 * static_cast<int>(rng() % 2); // 6 or 10
        exps = {e1, e1 + 1 + 2 * static_cast<int>(rng() % 2)};
        break;
    }
    default: {
        const int e1 = 8 + 2 * static_cast<int>(rng() % 2); // 8 or 10: gcd 2
        exps = {e1, e1 + 1 + 2 * static_cast<int>(rng() % 2)};
        break;
    }
    }
    std::vector<std::pair<int, CycloNum>> terms;
    if (rng() % 2) {
        terms.emplace_back(n, gauss()); // smooth part before the first characteristic term
    }
    for (int e : exps) {
        terms.emplace_back(e, gauss());
    }
    terms.emplace_back(exps.back() + 1 + static_cast<int>(rng() % 3), gauss());
    return make_branch(name, n, terms);
}

void oracle_equivalence(Verdict &v)
{
    std::mt19937 rng(20240611);
    int pairs = 0;
    int seqs = 0;
    int max_genus = 0;
    int max_meet = 0;
    while (pairs < 20) {
        const PuiseuxBranch g = random_branch(rng, "g" + std::to_string(pairs));
        PuiseuxBranch h = random_branch(rng, "h" + std::to_string(pairs));
        if (pairs % 3 == 0 && g.n == h.n) {
            // Share the start of the series to force a high contact.
            std::vector<CycloNum> c = g.c.coeffs();
            const int cut = static_cast<int>(c.size()) - 1;
            c.resize(static_cast<std::size_t>(cut));
            c.push_back(CycloNum(5L));
            h = make_branch(h.name, h.n, USeries(c));
        }
        if (branch_invariants(g).genus > 2 || branch_invariants(h).genus > 2) {
            continue;
        }
        const unsigned order = std::lcm(4u, working_field_order({g, h}));
        const int res = intersection_multiplicity(g, h);
        const int lifted = intersection_multiplicity_lifted(g, h, order);
        max_genus = std::max({max_genus, branch_invariants(g).genus, branch_invariants(h).genus});
        max_meet = std::max(max_meet, res);
        v.expect(res == lifted, "pair " + std::to_string(pairs) + ": " + std::to_string(res) + " vs " +
                                    std::to_string(lifted));
        for (const auto &b : {g, h}) {
            const ResolutionTree t = resolve_curve(std::vector<PuiseuxBranch>{b});
            v.expect(same_up_to_ones(t.mult_seq(0), branch_invariants(b).mult_seq), b.name + ": multiplicity sequence");
            ++seqs;
        }
        ++pairs;
    }
    v.note << pairs << " Q(i) pairs agree (genus up to " << max_genus << ", largest intersection " << max_meet << "); "
           << seqs << " multiplicity sequences match";
}

struct Criterion
{
    const char *title;
    std::function<void(Verdict &)> body;
};

const std::vector<Criterion> &criteria()
{
    static const std::vector<Criterion> list{
        {"four-branch example: virtual multiplicities, jet tree, packages", four_branch_example},
        {"(t^2, t^p) family: Z of the quasi-homogeneous field and of the hamiltonian", quasi_homogeneous_family},
        {"Hertling identity", hertling_identity},
        {"Z recursion equals vanishing order", recursion_consistency},
        {"hamiltonians are generalized curves", generalized_curves},
        {"theorem1 lower bounds and refined bound", theorem1},
        {"theorem2 bound, tight cases, energy sum", theorem2},
        {"theorem3 bound and proof invariants", theorem3},
        {"weak isolation survives one blow-up", blowup_isolation},
        {"global Poincare-Hopf balance and degree bounds", global_balance},
        {"intersection multiplicity oracles and multiplicity sequences", oracle_equivalence},
    };
    return list;
}

bool run(std::size_t k)
{
    Verdict v;
    try {
        criteria()[k].body(v);
    } catch (const std::exception &e) {
        v.pass = false;
        v.note << " [error: " << e.what() << "]";
    }
    std::cout << "criterion " << (k + 1) << " " << (v.pass ? "PASS" : "FAIL") << ": " << criteria()[k].title << ": "
              << v.note.str() << std::endl;
    return v.pass;
}

} // namespace

int main(int argc, char **argv)
{
    if (argc > 1) {
        const long k = std::strtol(argv[1], nullptr, 10);
        if (k < 1 || k > static_cast<long>(criteria().size())) {
            std::cerr << "criterion must be in 1.." << criteria().size() << "\n";
            return 2;
        }
        return run(static_cast<std::size_t>(k - 1)) ? 0 : 1;
    }
    bool all = true;
    for (std::size_t k = 0; k < criteria().size(); ++k) {
        all = run(k) && all;
    }
    return all ? 0 : 1;
}
