#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <folbound/errors.hpp>
#include <folbound/poly.hpp>

#include <random>

using namespace folbound;

namespace
{

CycloNum z6(long k)
{
    return CycloNum::zeta(6, k);
}

USeries poly_series(std::initializer_list<std::pair<int, long>> terms)
{
    USeries s;
    for (auto [e, c] : terms) {
        s += USeries::monomial(CycloNum(c), e);
    }
    return s;
}

CycloNum random_cyclo(std::mt19937 &rng, unsigned order)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::vector<Rat> c(totient(order));
    for (auto &x : c) {
        x = Rat(num(rng), den(rng));
        x.canonicalize();
    }
    return CycloNum::from_poly(c, order);
}

} // namespace

TEST_CASE("cyclotomic normal forms")
{
    CHECK(cyclo_normalize({0, 0, 0, 0, 0, 0, 1}, 6) == CycloNum(1L));
    CHECK(cyclo_normalize({0, 0, 0, 1}, 6) == CycloNum(-1L));
    const CycloNum z2 = cyclo_normalize({0, 0, 1}, 6);
    CHECK(z2.coeffs() == std::vector<Rat>{Rat(-1), Rat(1)});
    CHECK(z6(1) * z6(1) == z6(1) - CycloNum(1L));
    CHECK(CycloNum::zeta(4, 1).embed(12) == CycloNum::zeta(12, 3));
    CHECK(CycloNum::zeta(3, 1) == z6(2));
}

TEST_CASE("cyclotomic polynomial products rebuild x^N - 1")
{
    for (unsigned n = 1; n <= 60; ++n) {
        std::vector<BigInt> prod{1};
        for (unsigned d = 1; d <= n; ++d) {
            if (n % d != 0) {
                continue;
            }
            const auto &phi = cyclotomic_polynomial(d);
            std::vector<BigInt> next(prod.size() + phi.size() - 1, 0);
            for (std::size_t i = 0; i < prod.size(); ++i) {
                for (std::size_t j = 0; j < phi.size(); ++j) {
                    next[i + j] += prod[i] * phi[j];
                }
            }
            prod = std::move(next);
        }
        std::vector<BigInt> expect(n + 1, 0);
        expect[0] = -1;
        expect[n] = 1;
        CHECK_MESSAGE(prod == expect, "N = " << n);
        CHECK(cyclotomic_polynomial(n).size() - 1 == totient(n));
    }
}

TEST_CASE("field axioms on random elements")
{
    std::mt19937 rng(20240611);
    const unsigned orders[] = {1, 3, 4, 5, 6, 8, 12};
    for (int i = 0; i < 200; ++i) {
        const unsigned n = orders[static_cast<std::size_t>(i) % 7];
        const CycloNum a = random_cyclo(rng, n);
        const CycloNum b = random_cyclo(rng, n);
        const CycloNum c = random_cyclo(rng, n);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK((a * a.inverse()).is_one());
        }
    }
}

TEST_CASE("series orders")
{
    CHECK(series_order(poly_series({{3, 1}, {5, 1}})) == 3);
    CHECK(series_order(USeries::zero()) == kInfinity);
    const USeries unknown({}, 10);
    CHECK_THROWS_AS(series_order(unknown), Error);
    try {
        (void)series_order(unknown);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::OrderBeyondTruncation);
    }
}

TEST_CASE("series composition")
{
    CHECK(series_compose(poly_series({{2, 1}}), poly_series({{3, 1}})).coeffs() == poly_series({{6, 1}}).coeffs());
    CHECK(series_compose(poly_series({{1, 1}, {2, 1}}), poly_series({{1, 2}})).coeffs() ==
          poly_series({{1, 2}, {2, 4}}).coeffs());
    const USeries c2 = poly_series({{8, 1}, {10, 1}, {11, 1}});
    const USeries out = series_compose(c2, USeries::monomial(z6(1), 1));
    CHECK(out.coeff(8) == z6(2));
    CHECK(out.coeff(10) == z6(4));
    CHECK(out.coeff(11) == z6(5));
    CHECK(out.stored_length() == 12);
    CHECK_THROWS_AS(series_compose(c2, poly_series({{0, 1}, {1, 1}})), Error);
}

TEST_CASE("truncated series orders are additive and multiplicative")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int i = 0; i < 50; ++i) {
        std::vector<CycloNum> a(12), b(12);
        const int oa = 1 + i % 4;
        const int ob = 1 + (i / 4) % 3;
        for (int e = oa; e < 12; ++e) {
            a[static_cast<std::size_t>(e)] = CycloNum(static_cast<long>(e == oa ? 1 + i % 3 : coef(rng)));
        }
        for (int e = ob; e < 12; ++e) {
            b[static_cast<std::size_t>(e)] = CycloNum(static_cast<long>(e == ob ? -1 : coef(rng)));
        }
        const USeries f(a, 12), g(b, 12);
        CHECK((f * g).order() == oa + ob);
        const USeries fg = series_compose(f, g);
        if (oa * ob < fg.known_order()) {
            CHECK(fg.order() == oa * ob);
        } else {
            CHECK_THROWS_AS((void)fg.order(), Error);
        }
    }
}

TEST_CASE("polynomial evaluation along series")
{
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    const USeries t2 = USeries::monomial(CycloNum(1L), 2), t3 = USeries::monomial(CycloNum(1L), 3);
    CHECK(poly_eval_series(y * y - x.pow(3), t2, t3).is_exact_zero());
    const USeries r = poly_eval_series(y * y - x.pow(3).scaled(CycloNum(2L)), t2, t3);
    CHECK(r.order() == 6);
    CHECK(r.leading_coeff() == CycloNum(-1L));
    CHECK(poly_eval_series(y, t2, t3).coeffs() == t3.coeffs());
}

TEST_CASE("bivariate jets")
{
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    // Precision is x-adic: x^i y^j is unknown for i >= K.
    const BiPoly f = (y * y - x.pow(3) + x * y.pow(5)).truncated(3);
    CHECK(f.order() == 2);
    CHECK(f.terms().size() == 2);
    CHECK_THROWS_AS((void)f.coeff(3, 0), Error);
    const BiPoly g = (x + y).truncated(2) * (x * x - x * y).truncated(3);
    CHECK(g.precision() == 3);
    CHECK(g.order() == 3);
    CHECK_THROWS_AS((void)BiPoly({}, 4).order(), Error);
    CHECK((BiPoly::y().pow(2) + BiPoly::x().pow(5)).truncated(2).order() == 2);
    CHECK_THROWS_AS((void)BiPoly::y().pow(7).truncated(2).order(), Error);
    const BiPoly h = (y - x * x).translated(CycloNum(1L), CycloNum(1L));
    CHECK(h == y - x * x.scaled(CycloNum(1L)) - x.scaled(CycloNum(2L)));
}

TEST_CASE("resultants")
{
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    // Res_y(y^2 - x^3, y^2 - 2x^3) = x^6
    const UPoly r = resultant_y(y * y - x.pow(3), y * y - x.pow(3).scaled(CycloNum(2L)));
    CHECK(r.degree() == 6);
    CHECK(r.low_order() == 6);
    CHECK(r.lead() == CycloNum(1L));
    const UPoly r2 = resultant_y(y - x, y + x);
    CHECK(r2.degree() == 1);
    CHECK(r2.low_order() == 1);
}
