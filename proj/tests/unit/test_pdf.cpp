#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinrtn/pdf.hpp"
#include "spinrtn/special.hpp"
#include "unit/oracles.hpp"

using namespace spinrtn;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("special functions") {
  TEST_CASE("bessel I1 frozen values") {
    struct Row {
      double x, i1, scaled;
    };
    const Row rows[] = {
        {0.001, 0.00050000006250000260417, 0.00049950031235422133698},
        {0.5, 0.25789430539089631636, 0.15642080318487169714},
        {1.0, 0.56515910399248502721, 0.20791041534970844887},
        {10.0, 2670.9883037012546543, 0.12126268138445551872},
        {29.9, 696528308361.09366812, 0.072033374911868786146},
        {30.1, 847983630191.54024107, 0.071799854351014334837},
        {100.0, 1.0683693903381624812e+42, 0.039744153025130252674},
        {700.0, 1.5285003902339006881e+302, 0.015070519444716846949},
    };
    for (const auto& r : rows) {
      CAPTURE(r.x);
      CHECK(rel(bessel_i1(r.x), r.i1) < 1e-13);
      CHECK(rel(bessel_i1_scaled(r.x), r.scaled) < 1e-13);
    }
    CHECK(bessel_i1(0.0) == 0.0);
    CHECK(bessel_i1_over_x_scaled(0.0) == 0.5);
  }

  TEST_CASE("bessel I1 agrees with a long double series across the range") {
    for (double x = 0.0625; x <= 700.0; x *= 1.37) {
      CAPTURE(x);
      const double ref = static_cast<double>(oracle::bessel_i1(x));
      CHECK(rel(bessel_i1(x), ref) < 2e-14);
      CHECK(rel(bessel_i1_over_x_scaled(x), ref * std::exp(-x) / x) < 2e-14);
    }
    // No jump across the switch between series and asymptotic forms.
    const double below = bessel_i1_scaled(std::nextafter(30.0, 0.0));
    const double above = bessel_i1_scaled(30.0);
    CHECK(rel(below, above) < 1e-14);
  }

  TEST_CASE("bessel domain") {
    CHECK_THROWS_AS(bessel_i1(-1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i1(700.5), std::domain_error);
    CHECK_THROWS_AS(bessel_i1(NAN), std::domain_error);
    CHECK_NOTHROW(bessel_i1_scaled(1e6));
    CHECK(rel(bessel_i1_scaled(1e6), 1.0 / std::sqrt(2.0 * std::numbers::pi * 1e6)) < 1e-6);
  }

  TEST_CASE("sinc") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(rel(sinc(1e-5), std::sin(1e-5) / 1e-5) < 1e-15);
    CHECK(rel(sinc(2.0), std::sin(2.0) / 2.0) < 1e-15);
    CHECK(sinc(-3.0) == sinc(3.0));
  }
}

TEST_SUITE("mean-state densities") {
  TEST_CASE("switch-conditioned density frozen values") {
    CHECK(rel(omega_ge1(0.0, 2.0), 0.57585958148146611024) < 1e-13);
    CHECK(rel(omega_ge1(0.5, 2.0), 0.51586401053074909937) < 1e-13);
    CHECK(rel(omega_ge1(0.99, 0.1), 0.49959596882766267202) < 1e-13);
    CHECK(rel(omega_ge1(0.0, 50.0), 2.7996561946447699822) < 1e-13);
    CHECK(rel(omega_ge1(0.3, 300.0), 7.3864263905016768892e-6) < 1e-12);
  }

  TEST_CASE("density is even and finite at the endpoints") {
    for (double y : {0.01, 0.7, 3.0, 40.0, 600.0}) {
      CAPTURE(y);
      for (double xi : {0.0, 0.2, 0.6, 0.95}) CHECK(omega_ge1(xi, y) == omega_ge1(-xi, y));
      const double sh = std::sinh(y / 2.0);
      const double edge = y > 100.0 ? y * y / 2.0 * std::exp(-y) : y * y / (8.0 * sh * sh);
      CHECK(rel(omega_ge1(1.0, y), edge) < 1e-12);
      CHECK(std::isfinite(omega_ge1(-1.0, y)));
    }
    CHECK_THROWS_AS(omega_ge1(1.0001, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(omega_ge1(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(omega_ge1(0.0, -1.0), std::invalid_argument);
  }

  TEST_CASE("occupation-time density maps onto the mean-state density") {
    const double duration = 2.0;
    const double lambda = 1.3;
    for (double tau : {0.1, 0.5, 1.0, 1.7}) {
      const double xi = 2.0 * tau / duration - 1.0;
      CHECK(rel(0.5 * duration * pdf_occupation_symmetrized(tau, duration, lambda),
                omega_ge1(xi, lambda * duration)) < 1e-13);
    }
    auto normalised = integrate_adaptive([&](double t) { return pdf_occupation(t, duration, lambda); }, 1e-300,
                                         duration * (1 - 1e-16), 1e-12, 8);
    CHECK(normalised.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(pdf_occupation(0.0, duration, lambda), std::invalid_argument);
  }

  TEST_CASE("poisson weights") {
    CHECK(poisson_weight(0, 2.0) == std::exp(-2.0));
    CHECK(rel(poisson_weight(3, 2.0), std::exp(-2.0) * 8.0 / 6.0) < 1e-14);
    CHECK(poisson_weight(4, 0.0) == 0.0);
    CHECK(poisson_weight(0, 0.0) == 1.0);
    double s = 0.0;
    for (unsigned k = 0; k < 200; ++k) s += poisson_weight(k, 30.0);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rel(poisson_tail_gt0(1e-20), 1e-20) < 1e-15);
    CHECK(poisson_weight(0, 5.0) + poisson_weight(1, 5.0) + poisson_tail_gt1(5.0) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(poisson_weight(1, -1.0), std::invalid_argument);
  }

  TEST_CASE("every law integrates to one") {
    const XiKind kinds[] = {XiKind::exact_full,  XiKind::exact_ge1,     XiKind::delta_pair,
                            XiKind::uniform_slow, XiKind::gaussian_fast, XiKind::approx_full};
    for (double y : {1e-3, 0.2, 1.0, 5.0, 20.0, 400.0}) {
      for (XiKind k : kinds) {
        CAPTURE(y);
        CAPTURE(to_string(k));
        const XiDistribution d(k, y);
        CHECK(std::abs(d.mass().value - 1.0) < 1e-9);
      }
    }
  }

  TEST_CASE("atoms and leakage") {
    const XiDistribution full(XiKind::exact_full, 2.0);
    const auto atoms = full.atoms();
    REQUIRE(atoms.size() == 2);
    for (const auto& a : atoms) CHECK(a.weight == doctest::Approx(0.5 * std::exp(-2.0)));
    CHECK(XiDistribution(XiKind::exact_ge1, 2.0).atoms().empty());
    CHECK(XiDistribution(XiKind::delta_pair, 0.0).breakpoints().empty());
    CHECK(full.leakage() == 0.0);
    CHECK(rel(XiDistribution(XiKind::gaussian_fast, 4.0).leakage(), std::erfc(std::sqrt(2.0))) < 1e-14);
    CHECK(rel(XiDistribution(XiKind::approx_full, 4.0).leakage(),
              poisson_tail_gt1(4.0) * std::erfc(std::sqrt(2.0))) < 1e-14);
  }

  TEST_CASE("full law equals switch-conditioned density times the switch probability") {
    for (double y : {0.05, 1.0, 9.0, 250.0})
      for (double xi : {-0.9, 0.0, 0.4, 1.0}) {
        const OmegaValue v = omega_full(xi, y);
        CHECK(rel(v.density, poisson_tail_gt0(y) * omega_ge1(xi, y)) < 1e-13);
        CHECK(v.atom_weight_pos == v.atom_weight_neg);
      }
  }

  TEST_CASE("limits: uniform for rare switching, gaussian for frequent switching") {
    for (double xi : {0.0, 0.5, 0.9}) CHECK(std::abs(omega_ge1(xi, 1e-4) - omega_slow(xi)) < 1e-4);
    const double y = 400.0;
    CHECK(rel(omega_ge1(0.0, y), omega_fast(0.0, y)) < 2e-3);
    CHECK(rel(omega_ge1(0.05, y), omega_fast(0.05, y)) < 2e-2);
    const OmegaValue a = omega_approx(0.1, 0.3);
    CHECK(a.density == doctest::Approx(poisson_weight(1, 0.3) * 0.5 + poisson_tail_gt1(0.3) * omega_fast(0.1, 0.3)));
  }
}
