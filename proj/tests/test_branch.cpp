#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"

#include <folbound/errors.hpp>

using namespace folbound;
using corpus::br;

namespace
{

// Conductor of a branch from its characteristic sequence; delta = conductor / 2.
int conductor(const BranchInvariants &inv)
{
    int c = 1 - inv.beta[0];
    for (std::size_t i = 1; i < inv.beta.size(); ++i) {
        c += (inv.e_seq[i - 1] - inv.e_seq[i]) * inv.beta[i];
    }
    return c;
}

} // namespace

TEST_CASE("characteristic data")
{
    const auto a = branch_invariants(br("a", 3, {{4, 1}}));
    CHECK(a.genus == 1);
    CHECK(a.char_exps.size() == 1);
    CHECK(a.char_exps[0].p == 4);
    CHECK(a.char_exps[0].q == 3);
    CHECK(a.q_seq == std::vector<int>{3});
    CHECK(a.mu == 1);
    CHECK(a.mult_seq == std::vector<int>{3, 1, 1, 1});

    const auto b = branch_invariants(br("b", 6, {{8, 1}, {10, 1}, {11, 1}}));
    CHECK(b.genus == 2);
    CHECK(b.e_seq == std::vector<int>{6, 2, 1});
    CHECK(b.q_seq == std::vector<int>{3, 6});
    CHECK(b.char_exps[0].p == 4);
    CHECK(b.char_exps[0].q == 3);
    CHECK(b.char_exps[1].p == 11);
    CHECK(b.char_exps[1].q == 6);
    CHECK(b.mu == 3);
    CHECK(b.mult_seq == std::vector<int>{6, 2, 2, 2, 2, 1, 1});

    const auto s = branch_invariants(br("s", 1, {{2, 1}}));
    CHECK(s.genus == 0);
    CHECK(s.mu == 1);
    CHECK(s.mult_seq == std::vector<int>{1});
}

TEST_CASE("delta from multiplicities matches the conductor")
{
    const std::vector<PuiseuxBranch> sample = {
        br("c", 2, {{3, 1}}),           br("d", 2, {{4, 1}, {5, 1}}), br("e", 3, {{4, 1}}),
        br("f", 3, {{5, 2}}),           br("g", 4, {{6, 1}, {7, 1}}), br("h", 6, {{8, 1}, {10, 1}, {11, 1}}),
        br("i", 4, {{10, 1}, {11, 1}}), br("j", 5, {{7, 1}}),       br("k", 8, {{12, 1}, {14, 1}, {15, 1}}),
    };
    for (const auto &g : sample) {
        const auto inv = branch_invariants(g);
        CHECK_MESSAGE(2 * inv.delta == conductor(inv), g.name);
        CHECK(inv.mult_seq.front() == g.n);
        CHECK(std::is_sorted(inv.mult_seq.rbegin(), inv.mult_seq.rend()));
    }
}

TEST_CASE("branch validation")
{
    CHECK_THROWS_AS(br("np", 2, {{4, 1}}), Error);
    CHECK_THROWS_AS(br("vert", 3, {{2, 1}}), Error);
    CHECK_NOTHROW(br("axis", 1, {}));
}

TEST_CASE("ramified lifts")
{
    const auto g1 = br("g1", 3, {{4, 1}});
    const auto lifts = ramified_lift({g1, br("g2", 6, {{8, 1}, {10, 1}, {11, 1}})}, 6);
    CHECK(lifts.n == 6);
    CHECK(lifts.series.size() == 9);
    for (int l = 0; l < 3; ++l) {
        const USeries &s = lifts.series[static_cast<std::size_t>(l)];
        CHECK(s.order() == 8);
        CHECK(s.stored_length() == 9);
        CHECK(s.coeff(8) == CycloNum::zeta(6, 8 * l));
    }
    const auto cusp = ramified_lift({corpus::cusp()}, 2);
    CHECK(cusp.series.size() == 2);
    CHECK(cusp.series[0].coeff(3) == CycloNum(1L));
    CHECK(cusp.series[1].coeff(3) == CycloNum(-1L));
    const auto smooth = ramified_lift({br("s", 1, {{2, 1}})}, 1);
    CHECK(smooth.series.size() == 1);
    CHECK(smooth.series[0].coeff(2) == CycloNum(1L));
    CHECK_THROWS_AS(ramified_lift({g1}, 4), Error);
}

TEST_CASE("implicit equations")
{
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    CHECK(implicitize(corpus::cusp()) == y * y - x.pow(3));
    CHECK(implicitize(br("b", 2, {{3, 1}, {4, 1}})) ==
          y * y - (x * x * y).scaled(CycloNum(2L)) - x.pow(3) + x.pow(4));
    CHECK(implicitize(br("s", 1, {{2, 1}})) == y - x * x);
    // Vanishes on every conjugate parametrization.
    for (const auto &g : corpus::example_four_branches()) {
        const BiPoly f = implicitize(g);
        CHECK(f.degree_y() == g.n);
        const auto lifts = ramified_lift({g}, 6);
        for (const auto &s : lifts.series) {
            CHECK(poly_eval_series(f, USeries::monomial(CycloNum(1L), lifts.n), s).is_exact_zero());
        }
    }
}

TEST_CASE("intersection multiplicities")
{
    const auto c1 = corpus::cusp();
    const auto c2 = br("c2", 2, {{3, 1}});
    // y^2 = 2x^3 is parametrized by (t^2, sqrt(2) t^3); use the rescaled
    // pair (2t^2, ...) instead through the equation route.
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    const USeries v = poly_eval_series(y * y - x.pow(3).scaled(CycloNum(2L)), c1.x_series(), c1.c);
    CHECK(v.order() == 6);
    CHECK(intersection_multiplicity(c1, c2) == kInfinity);
    const auto l1 = br("l1", 1, {{1, 1}});
    const auto l2 = br("l2", 1, {{1, -1}});
    CHECK(intersection_multiplicity(l1, l2) == 1);
    CHECK(intersection_multiplicity(c1, br("axis", 1, {})) == 3);
    CHECK(intersection_multiplicity(br("axis", 1, {}), c1) == 3);

    const auto four = corpus::example_four_branches();
    const int expect[4][4] = {{0, 26, 26, 26}, {26, 0, 56, 56}, {26, 56, 0, 56}, {26, 56, 56, 0}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) {
                continue;
            }
            CHECK(intersection_multiplicity(four[static_cast<std::size_t>(i)], four[static_cast<std::size_t>(j)]) ==
                  expect[i][j]);
            CHECK(intersection_multiplicity_lifted(four[static_cast<std::size_t>(i)], four[static_cast<std::size_t>(j)],
                                                   6) == expect[i][j]);
        }
    }
}

TEST_CASE("truncation audit")
{
    const auto lifts = ramified_lift(corpus::example_four_branches(), 6);
    CHECK(truncation_audit(lifts) == 13);
    CHECK_THROWS_AS(truncation_audit(lifts, 13), Error);
    CHECK_THROWS_AS(truncation_audit(ramified_lift({corpus::cusp(), corpus::cusp()}, 2)), Error);
}
