#ifndef FOLBOUND_TEST_CORPUS_HPP
#define FOLBOUND_TEST_CORPUS_HPP

#include <folbound/blowup.hpp>
#include <folbound/branch.hpp>
#include <folbound/global.hpp>

#include <map>
#include <tuple>
#include <vector>

namespace corpus
{

using folbound::CycloNum;
using folbound::PuiseuxBranch;

inline PuiseuxBranch br(const char *name, int n, std::vector<std::pair<int, long>> terms)
{
    std::vector<std::pair<int, CycloNum>> t;
    for (auto [e, c] : terms) {
        t.emplace_back(e, CycloNum(c));
    }
    return folbound::make_branch(name, n, t);
}

inline PuiseuxBranch cusp()
{
    return br("cusp", 2, {{3, 1}});
}

inline std::vector<PuiseuxBranch> example_four_branches()
{
    return {br("g1", 3, {{4, 1}}), br("g2", 6, {{8, 1}, {10, 1}, {11, 1}}),
            br("g3", 6, {{8, 1}, {10, 1}, {11, 1}, {13, 1}}), br("g4", 6, {{8, 1}, {10, 1}, {11, 1}, {13, -1}})};
}

// {y = 0} and {y = x}: a node.
inline std::vector<PuiseuxBranch> node()
{
    return {br("y0", 1, {}), br("diag", 1, {{1, 1}})};
}

inline folbound::BiPoly poly(std::vector<std::tuple<int, int, long>> terms)
{
    std::map<folbound::Monomial, CycloNum> m;
    for (auto [i, j, c] : terms) {
        m[{i, j}] += CycloNum(c);
    }
    return folbound::BiPoly(m);
}

inline folbound::Field field(std::vector<std::tuple<int, int, long>> a, std::vector<std::tuple<int, int, long>> b)
{
    return {poly(std::move(a)), poly(std::move(b))};
}

// p x d/dx + q y d/dy
inline folbound::Field linear(long p, long q)
{
    return field({{1, 0, p}}, {{0, 1, q}});
}

// Saddle with eigenlines y = 0 and y = x: (x - 2y) d/dx - y d/dy.
inline folbound::Field node_saddle()
{
    return field({{1, 0, 1}, {0, 1, -2}}, {{0, 1, -1}});
}

inline folbound::Field radial()
{
    return linear(1, 1);
}

inline folbound::Field hamiltonian_of(const std::vector<PuiseuxBranch> &bs)
{
    return folbound::hamiltonian(folbound::curve_equation(bs));
}

struct Instance
{
    const char *name;
    folbound::Field X;
    std::vector<PuiseuxBranch> curve;
};

// Pushdowns of simple foliations on the first chart: the first divisor is
// dicritical and the curve goes through a special point of it.
inline std::vector<Instance> dicritical_instances()
{
    return {
        {"cusp in the pencil y^2 - x^3 = c x^2", field({{1, 1, 2}}, {{3, 0, 1}, {0, 2, 2}}), {cusp()}},
        {"(3,4) in the pencil y^3 - x^4 = c x^3", field({{1, 2, 3}}, {{4, 0, 1}, {0, 3, 3}}), {br("c34", 3, {{4, 1}})}},
        {"parabolas y = +-x^2 through a saddle", field({{1, 1, 1}}, {{4, 0, 1}, {0, 2, 1}}), {br("p", 1, {{2, 1}}), br("m", 1, {{2, -1}})}},
        {"(2,5) in the pencil y^2 - x^5 = c x^2", field({{1, 1, 2}}, {{5, 0, 3}, {0, 2, 2}}), {br("c25", 2, {{5, 1}})}},
        {"cusp and a null line", field({{4, 0, 1}, {1, 2, 1}}, {{3, 1, 2}, {0, 3, 1}}), {cusp(), br("y0", 1, {})}},
    };
}

// Weakly isolated pairs used across the theorem checks.
inline std::vector<Instance> weakly_isolated_instances()
{
    std::vector<Instance> out{
        {"cusp hamiltonian", hamiltonian_of({cusp()}), {cusp()}},
        {"node radial", radial(), node()},
        {"node saddle", node_saddle(), node()},
        {"node hamiltonian", hamiltonian_of(node()), node()},
        {"(3,4) hamiltonian", hamiltonian_of({br("c34", 3, {{4, 1}})}), {br("c34", 3, {{4, 1}})}},
        {"four-branch hamiltonian", hamiltonian_of(example_four_branches()), example_four_branches()},
    };
    for (auto &i : dicritical_instances()) {
        out.push_back(std::move(i));
    }
    return out;
}

inline folbound::UPoly upoly(std::vector<long> c)
{
    std::vector<CycloNum> v;
    for (long k : c) {
        v.emplace_back(k);
    }
    return folbound::UPoly(v);
}

inline CycloNum q(long p, long r)
{
    return CycloNum(folbound::Rat(p, r));
}

struct GlobalCase
{
    const char *name;
    folbound::GlobalInstance inst;
};

// Instances with a generic line at infinity. The two-line and cubic cases are
// the saddle x d/dx - y d/dy on xy = 0 and the field 2x d/dx + 3y d/dy on
// y^2 = x^3, moved by a projective map so that no singular point lies at infinity.
inline GlobalCase two_lines_global()
{
    folbound::GlobalInstance g;
    g.f = poly({{0, 2, 1}, {2, 0, -1}});
    g.X = field({{0, 1, -2}, {2, 0, 1}, {1, 1, 3}}, {{1, 0, -2}, {1, 1, 1}, {0, 2, 3}});
    g.points = {{"node", 0, 0, {folbound::rational_of(br("up", 1, {{1, 1}})), folbound::rational_of(br("down", 1, {{1, -1}}))}},
                {"p", q(1, 2), q(1, 2), {}},
                {"r", 1, -1, {}}};
    return {"two lines", g};
}

inline GlobalCase line_global()
{
    folbound::GlobalInstance g;
    g.f = poly({{0, 1, 1}});
    g.X = radial();
    g.points = {{"origin", 0, 0, {}}};
    return {"line and a degree-0 foliation", g};
}

inline GlobalCase cuspidal_cubic_global()
{
    folbound::GlobalInstance g;
    g.f = poly({{0, 2, 1}, {1, 2, -1}, {0, 3, -1}, {3, 0, -1}});
    g.X = field({{1, 0, 2}, {2, 0, -2}, {1, 1, -3}}, {{0, 1, 3}, {1, 1, -2}, {0, 2, -3}});
    // (t^2, t^3) / (1 + t^2 + t^3)
    g.points = {{"cusp", 0, 0, {{"cusp", upoly({0, 0, 1}), upoly({0, 0, 0, 1}), upoly({1, 0, 1, 1})}}},
                {"flex", 0, 1, {}}};
    return {"cuspidal cubic", g};
}

inline std::vector<GlobalCase> global_instances()
{
    return {two_lines_global(), line_global(), cuspidal_cubic_global()};
}

} // namespace corpus

#endif
