#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dnls/cauchy.hpp"
#include "dnls/roots.hpp"
#include "dnls/special.hpp"

using namespace dnls;

namespace {
constexpr double kPi = 3.14159265358979323846;

// dense principal-value quadrature oracle for the Hilbert transform, with the
// singular cell removed by subtracting f(lam)
cplx pv_hilbert_dense(const ComplexGrid1D& f, double lam) {
    const int m = 200001;
    const double a = f.x_min, b = f.x_max;
    const double h = (b - a) / (m - 1);
    const cplx flam = interp_cubic(f, lam);
    cplx acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double s = a + i * h;
        const double d = s - lam;
        cplx term;
        if (std::abs(d) < 1e-9) {
            term = interp_cubic_deriv(f, lam); // limit of (f(s)-f(lam))/(s-lam)
        } else {
            term = (interp_cubic(f, s) - flam) / d;
        }
        acc += (i == 0 || i == m - 1) ? 0.5 * term : term;
    }
    acc *= h;
    acc += flam * std::log(std::abs((b - lam) / (a - lam)));
    return acc / kPi;
}

} // namespace

TEST_CASE("gamma: classical values") {
    CHECK(std::abs(gamma_complex(cplx(1.0, 0.0)) - 1.0) < 1e-14);
    CHECK(std::abs(gamma_complex(cplx(0.5, 0.0)) - std::sqrt(kPi)) < 1e-13);
    // |Gamma(i)|^2 = pi / sinh(pi), independent identity oracle
    const double expected = kPi / std::sinh(kPi);
    CHECK(std::abs(std::norm(gamma_complex(cplx(0.0, 1.0))) - expected) < 1e-12);
}

TEST_CASE("gamma: |Gamma(iy)|^2 identity across a range") {
    for (double y : {0.3, 0.9, 2.0, 4.5}) {
        const double expected = kPi / (y * std::sinh(kPi * y));
        const double got = std::norm(gamma_complex(cplx(0.0, y)));
        CHECK(std::abs(got - expected) < 1e-10 * expected);
    }
}

TEST_CASE("gamma: recurrence and reflection on random samples") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> re(-10.0, 20.0), im(-20.0, 20.0);
    int checked = 0;
    while (checked < 100) {
        cplx z(re(rng), im(rng));
        if (std::abs(z) > 20.0) continue;
        if (std::abs(z.imag()) < 0.1 && z.real() < 0.5) continue; // stay off poles
        const cplx lhs = gamma_complex(z + 1.0);
        const cplx rhs = z * gamma_complex(z);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
        // reflection
        const cplx refl = gamma_complex(z) * gamma_complex(1.0 - z);
        const cplx expected = kPi / std::sin(kPi * z);
        CHECK(std::abs(refl - expected) < 1e-10 * std::abs(expected));
        ++checked;
    }
}

TEST_CASE("gamma: pole error") {
    CHECK_THROWS_AS(gamma_complex(cplx(0.0, 0.0)), gamma_pole_error);
    CHECK_THROWS_AS(gamma_complex(cplx(-3.0, 0.0)), gamma_pole_error);
}

TEST_CASE("log_gamma exponentiates to gamma") {
    for (cplx z : {cplx(3.2, 1.1), cplx(-2.3, 0.7), cplx(0.25, -4.0), cplx(12.0, 9.0)}) {
        const cplx a = std::exp(log_gamma(z));
        const cplx b = gamma_complex(z);
        CHECK(std::abs(a - b) < 1e-11 * std::abs(b));
    }
}

TEST_CASE("parabolic cylinder: closed forms for nu = 0, 1") {
    const cplx z(1.3, 0.2);
    CHECK(std::abs(parabolic_cylinder_D(0.0, z) - std::exp(-z * z / 4.0)) < 1e-12);
    CHECK(std::abs(parabolic_cylinder_D(1.0, cplx(2.0, 0.0)) - 2.0 * std::exp(-1.0)) < 1e-12);
}

TEST_CASE("parabolic cylinder: three-term recurrence") {
    // D_{nu+1}(z) - z D_nu(z) + nu D_{nu-1}(z) = 0
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    auto residual = [](cplx nu, cplx z) {
        const cplx d0 = parabolic_cylinder_D(nu - 1.0, z);
        const cplx d1 = parabolic_cylinder_D(nu, z);
        const cplx d2 = parabolic_cylinder_D(nu + 1.0, z);
        const double scale = std::abs(d2) + std::abs(z * d1) + std::abs(nu * d0) + 1e-30;
        return std::abs(d2 - z * d1 + nu * d0) / scale;
    };
    CHECK(residual(cplx(0.0, 0.7), cplx(3.0, 1.0)) < 1e-8);
    for (int k = 0; k < 24; ++k) {
        const cplx nu(2.0 * ur(rng), 2.0 * ur(rng));
        const double r = 0.3 + 17.0 * std::abs(ur(rng));
        const double th = kPi * ur(rng);
        const cplx z = r * std::exp(cplx(0.0, th));
        CHECK(residual(nu, z) < 1e-8);
    }
}

TEST_CASE("parabolic cylinder: series/asymptotic crossover agreement") {
    // evaluate on the arg = pi/4 ray in the band where both expansions apply
    for (double r : {6.5, 7.5, 8.5, 9.5}) {
        const cplx z = r * std::exp(cplx(0.0, kPi / 4.0));
        const PcfResult res = parabolic_cylinder_d(cplx(0.0, 0.8), z);
        CHECK(res.disagreement < 1e-6);
        CHECK(!res.accuracy_warning);
    }
}

TEST_CASE("cauchy projectors: jump identity is exact") {
    ComplexGrid1D f = sample_grid(-40.0, 40.0, 4096, [](double s) {
        return std::exp(-s * s / 9.0) * cplx(std::cos(s), 0.4 * std::sin(2.0 * s));
    });
    const ComplexGrid1D p = cauchy_projector(f, Side::plus);
    const ComplexGrid1D m = cauchy_projector(f, Side::minus);
    double worst = 0.0;
    for (int i = 0; i < f.n; ++i)
        worst = std::max(worst, std::abs(p.values[i] - m.values[i] - f.values[i]));
    CHECK(worst < 1e-13);
}

TEST_CASE("cauchy projectors: linearity") {
    ComplexGrid1D f = sample_grid(-40.0, 40.0, 2048, [](double s) { return std::exp(-s * s); });
    ComplexGrid1D g = sample_grid(-40.0, 40.0, 2048,
                                  [](double s) { return cplx(0.0, 1.0) / (s * s + 4.0); });
    ComplexGrid1D combo(-40.0, 40.0, 2048);
    const cplx a(1.3, -0.2), b(0.4, 2.0);
    for (int i = 0; i < combo.n; ++i) combo.values[i] = a * f.values[i] + b * g.values[i];
    const ComplexGrid1D lhs = cauchy_projector(combo, Side::plus);
    const ComplexGrid1D pf = cauchy_projector(f, Side::plus);
    const ComplexGrid1D pg = cauchy_projector(g, Side::plus);
    double worst = 0.0;
    for (int i = 0; i < combo.n; ++i)
        worst = std::max(worst, std::abs(lhs.values[i] - a * pf.values[i] - b * pg.values[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("cauchy projectors: rational residue oracle") {
    // f(s) = 1/(s+i) is analytic above the contour: C^+ f = f, C^- f = 0.
    // f(s) = 1/(s-i) is analytic below:              C^+ f = 0, C^- f = -f.
    ComplexGrid1D fp = sample_grid(-40.0, 40.0, 4096, [](double s) { return 1.0 / cplx(s, 1.0); });
    ComplexGrid1D fm = sample_grid(-40.0, 40.0, 4096, [](double s) { return 1.0 / cplx(s, -1.0); });
    const ComplexGrid1D pp = cauchy_projector(fp, Side::plus);
    const ComplexGrid1D pm = cauchy_projector(fp, Side::minus);
    const ComplexGrid1D mp = cauchy_projector(fm, Side::plus);
    const ComplexGrid1D mm = cauchy_projector(fm, Side::minus);
    double w1 = 0.0, w2 = 0.0, w3 = 0.0, w4 = 0.0;
    for (int i = 40; i < fp.n - 40; ++i) { // interior nodes
        w1 = std::max(w1, std::abs(pp.values[i] - fp.values[i]));
        w2 = std::max(w2, std::abs(pm.values[i]));
        w3 = std::max(w3, std::abs(mp.values[i]));
        w4 = std::max(w4, std::abs(mm.values[i] + fm.values[i]));
    }
    CHECK(w1 < 1e-4);
    CHECK(w2 < 1e-4);
    CHECK(w3 < 1e-4);
    CHECK(w4 < 1e-4);
}

TEST_CASE("cauchy projectors: cross-check against dense PV quadrature") {
    ComplexGrid1D f = sample_grid(-40.0, 40.0, 4096, [](double s) {
        return std::exp(-0.3 * s * s) * cplx(1.0, 0.5 * s);
    });
    const ComplexGrid1D p = cauchy_projector(f, Side::plus);
    for (int i : {1024, 2048, 3000}) {
        const double lam = f.node(i);
        const cplx expected = 0.5 * f.values[i] + cplx(0.0, -0.5) * pv_hilbert_dense(f, lam);
        CHECK(std::abs(p.values[i] - expected) < 1e-5);
    }
}

TEST_CASE("cauchy projector of zero is zero") {
    ComplexGrid1D f(-10.0, 10.0, 256);
    for (auto side : {Side::plus, Side::minus}) {
        const ComplexGrid1D p = cauchy_projector(f, side);
        for (const cplx& v : p.values) CHECK(std::abs(v) == 0.0);
    }
}

TEST_CASE("cauchy integral: residue oracle and trivial input") {
    ComplexGrid1D z(-40.0, 40.0, 4096);
    CHECK(std::abs(cauchy_integral(z, cplx(0.0, 2.0))) == 0.0);

    // f analytic above the line reproduces itself at points above,
    // vanishes below; both values fixed by residue calculus
    ComplexGrid1D f = sample_grid(-40.0, 40.0, 4096, [](double s) { return 1.0 / cplx(s, 1.0); });
    const cplx above = cauchy_integral(f, cplx(0.0, 2.0));
    const cplx below = cauchy_integral(f, cplx(0.0, -2.0));
    CHECK(std::abs(above - 1.0 / cplx(0.0, 3.0)) < 1e-4);
    CHECK(std::abs(below) < 1e-4);
    CHECK_THROWS_AS(cauchy_integral(f, cplx(1.0, 1e-5)), contour_proximity_error);
}

TEST_CASE("cauchy integral: refined variant handles near-axis points") {
    ComplexGrid1D f = sample_grid(-40.0, 40.0, 4096, [](double s) { return 1.0 / cplx(s, 1.0); });
    const cplx z(0.7, 1e-3);
    const cplx got = cauchy_integral_refined(f, z);
    CHECK(std::abs(got - 1.0 / (z + cplx(0.0, 1.0))) < 2e-5);
}

TEST_CASE("find_zeros: explicit roots and empty case") {
    auto f = [](cplx z) { return z * z + 1.0; };
    const SearchRegion lower(-2.0, 2.0, -2.0, -1e-3);
    const std::vector<cplx> roots = find_zeros(f, lower);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - cplx(0.0, -1.0)) < 1e-9);

    const std::vector<cplx> none = find_zeros([](cplx) { return cplx(1.0, 0.0); },
                                              SearchRegion(-1.0, 1.0, -1.0, 1.0));
    CHECK(none.empty());
}

TEST_CASE("find_zeros: winding count matches returned zeros") {
    // cluster of three zeros, one outside the region
    auto f = [](cplx z) {
        return (z - cplx(0.3, -0.4)) * (z - cplx(-0.5, -1.2)) * (z - cplx(0.2, -0.41)) *
               (z - cplx(3.0, 1.0));
    };
    const SearchRegion region(-2.0, 2.0, -2.0, -0.05);
    const std::vector<cplx> roots = find_zeros(f, region);
    REQUIRE(roots.size() == 3);
    const int w = winding_number(f, region.re_min, region.re_max, region.im_min, region.im_max);
    CHECK(w == static_cast<int>(roots.size()));
    for (const cplx& r : roots) CHECK(std::abs(f(r)) < 1e-9);
}

TEST_CASE("find_zeros: boundary zero raises") {
    auto f = [](cplx z) { return z - cplx(0.0, -1.0); };
    CHECK_THROWS_AS(find_zeros(f, SearchRegion(-1.0, 1.0, -1.0, -1e-12)),
                    boundary_zero_error);
}
