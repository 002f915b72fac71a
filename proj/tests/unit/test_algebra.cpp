#include <algorithm>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spinrtn/algebra.hpp"
#include "unit/oracles.hpp"

using namespace spinrtn;

TEST_SUITE("spin algebra") {
  TEST_CASE("heisenberg hamiltonian entries and spectrum") {
    const Matrix4c h = heisenberg_hamiltonian();
    CHECK(h(0, 0) == Complex(1.0));
    CHECK(h(1, 1) == Complex(-1.0));
    CHECK(h(2, 2) == Complex(-1.0));
    CHECK(h(3, 3) == Complex(1.0));
    // 0-based (1,2) and (2,1) are the 1-based (2,3) and (3,2).
    CHECK(h(1, 2) == Complex(2.0));
    CHECK(h(2, 1) == Complex(2.0));
    int off = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j && h(i, j) != Complex(0.0)) ++off;
    CHECK(off == 2);
    CHECK(std::abs(h.trace()) == doctest::Approx(0.0));
    CHECK(max_abs(Matrix4c(h - h.adjoint())) == 0.0);

    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    const auto& w = es.eigenvalues();
    CHECK(w(0) == doctest::Approx(-3.0).epsilon(1e-14));
    for (int i = 1; i < 4; ++i) CHECK(w(i) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("vectorize is row-major and devectorize inverts it") {
    const Vector16c v = vectorize(Matrix4c::Identity() / 4.0);
    for (int k = 0; k < 16; ++k) CHECK(v(k) == Complex((k % 5 == 0) ? 0.25 : 0.0));

    Matrix4c p = Matrix4c::Zero();
    p(0, 0) = 1.0;
    const Vector16c e = vectorize(p);
    CHECK(e(0) == Complex(1.0));
    CHECK(e.norm() == doctest::Approx(1.0));

    Matrix4c m = Matrix4c::Zero();
    m(1, 2) = Complex(3.0, -1.0);
    CHECK(vectorize(m)(6) == Complex(3.0, -1.0));

    std::mt19937_64 rng(1);
    const Matrix4c a = oracle::random_matrix(rng);
    const Matrix4c herm = a + a.adjoint();
    CHECK(max_abs(Matrix4c(devectorize(vectorize(herm)) - herm)) == 0.0);

    std::vector<Complex> short_vec(15);
    CHECK_THROWS_AS(devectorize(std::span<const Complex>(short_vec)), std::invalid_argument);
    std::vector<Complex> long_vec(17);
    CHECK_THROWS_AS(devectorize(std::span<const Complex>(long_vec)), std::invalid_argument);
  }

  TEST_CASE("vec(A B C) equals (A kron C^T) vec(B)") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix4c a = oracle::random_matrix(rng);
      const Matrix4c b = oracle::random_matrix(rng);
      const Matrix4c c = oracle::random_matrix(rng);
      const Vector16c lhs = vectorize(a * b * c);
      const Vector16c rhs = kron4(a, c.transpose()) * vectorize(b);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
    }
  }

  TEST_CASE("hamiltonian superoperator generates conjugation by the propagator") {
    CHECK(max_abs(hamiltonian_superoperator(Matrix4c::Zero()).matrix()) == 0.0);

    const Matrix4c h = heisenberg_hamiltonian();
    const SuperOperator p = hamiltonian_superoperator(h);
    CHECK(max_abs(Matrix16c(p.matrix() - Complex(0.0, -1.0) * sigma_h().matrix())) == 0.0);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const double v = std::abs(sigma_h()(i, j));
        CHECK((v == 0.0 || v == 2.0));
      }

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix4c a = oracle::random_matrix(rng);
      const Matrix4c hr = a + a.adjoint();
      const Matrix4c rho = oracle::random_density(rng);
      const double t = 0.7;
      const Matrix4c u = matrix_exp(Matrix4c(Complex(0.0, -t) * hr));
      const Matrix4c direct = u * rho * u.adjoint();
      const SuperOperator evo = matrix_exp(SuperOperator(hamiltonian_superoperator(hr).matrix() * t));
      CHECK(max_abs(Matrix4c(evo.apply(rho) - direct)) <= 1e-10);
      CHECK(trace_preservation_error(evo) <= 1e-10);
      CHECK(hermiticity_preservation_error(evo) <= 1e-10);
    }
  }

  TEST_CASE("sigma_h spectrum is {-4 x3, 0 x10, 4 x3} with exact projectors") {
    const auto& spec = sigma_h_spectrum();
    REQUIRE(spec.spaces.size() == 3);
    CHECK(spec.spaces[0].eigenvalue == -4.0);
    CHECK(spec.spaces[0].multiplicity == 3);
    CHECK(spec.spaces[1].eigenvalue == 0.0);
    CHECK(spec.spaces[1].multiplicity == 10);
    CHECK(spec.spaces[2].eigenvalue == 4.0);
    CHECK(spec.spaces[2].multiplicity == 3);

    // Numerical diagonalization agrees.
    const auto numeric = decompose_hermitian(sigma_h().matrix());
    auto ev = numeric.eigenvalues();
    std::sort(ev.begin(), ev.end());
    for (int k = 0; k < 16; ++k) {
      const double expect = k < 3 ? -4.0 : (k < 13 ? 0.0 : 4.0);
      CHECK(ev[static_cast<std::size_t>(k)] == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
    REQUIRE(numeric.spaces.size() == 3);
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(max_abs(Matrix16c(numeric.spaces[k].projector - spec.spaces[k].projector)) <= 1e-12);

    Matrix16c sum = Matrix16c::Zero();
    for (const auto& a : spec.spaces) {
      sum += a.projector;
      CHECK(max_abs(Matrix16c(a.projector * a.projector - a.projector)) <= 1e-12);
      for (const auto& b : spec.spaces)
        if (&a != &b) CHECK(max_abs(Matrix16c(a.projector * b.projector)) <= 1e-12);
    }
    CHECK(max_abs(Matrix16c(sum - Matrix16c::Identity())) <= 1e-12);

    CHECK(sigma_h().apply(Matrix4c(Matrix4c::Identity() / 4.0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs(Matrix16c(sigma_h().matrix() - sigma_h().matrix().adjoint())) == 0.0);
  }

  TEST_CASE("scalar kernels lift to functions of sigma_h") {
    CHECK(max_abs(Matrix16c(apply_scalar_kernel([](double) { return 1.0; }).matrix() - Matrix16c::Identity())) <=
          1e-15);
    CHECK(max_abs(Matrix16c(apply_scalar_kernel([](double s) { return s; }).matrix() - sigma_h().matrix())) <=
          1e-14);
    const SuperOperator c = apply_scalar_kernel([](double s) { return std::cos(s * std::numbers::pi / 8.0); });
    CHECK(std::abs(kernel_value(c, 4.0)) <= 1e-15);
    CHECK(std::abs(kernel_value(c, -4.0)) <= 1e-15);
    CHECK(kernel_value(c, 0.0).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(kernel_value(c, 2.0), std::invalid_argument);

    // [f(sigma_h), g(sigma_h)] = 0 for arbitrary kernels.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
      const double a = u(rng);
      const double b = u(rng);
      const SuperOperator f = apply_scalar_kernel([&](double s) { return std::exp(Complex(0.0, a * s)); });
      const SuperOperator g = apply_scalar_kernel([&](double s) { return std::cos(b * s) + s * s; });
      CHECK(max_abs(Matrix16c((f * g - g * f).matrix())) <= 1e-12);
      CHECK(max_abs(Matrix16c((f * sigma_h() - sigma_h() * f).matrix())) <= 1e-12);
    }
  }

  TEST_CASE("matrix exponential") {
    CHECK(max_abs(Matrix16c(matrix_exp(SuperOperator::zero()).matrix() - Matrix16c::Identity())) == 0.0);
    MatrixXc d = MatrixXc::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = Complex(-1.2, 0.5);
    const MatrixXc e = matrix_exp(d);
    CHECK(std::abs(e(0, 0) - std::exp(Complex(0.3))) <= 1e-15);
    CHECK(std::abs(e(1, 1) - std::exp(Complex(-1.2, 0.5))) <= 1e-15);
    CHECK(std::abs(e(0, 1)) == 0.0);

    for (double t : {0.1, 1.0, 3.7}) {
      const SuperOperator m = matrix_exp(SuperOperator(Complex(0.0, -t) * sigma_h().matrix()));
      CHECK(unitarity_error(m) <= 1e-10);
      // Spectral route agrees with scaling and squaring.
      const SuperOperator k = apply_scalar_kernel([&](double s) { return std::exp(Complex(0.0, -t * s)); });
      CHECK(max_abs(Matrix16c(m.matrix() - k.matrix())) <= 1e-12);
    }
  }

  TEST_CASE("unitary superoperators") {
    CHECK(max_abs(Matrix16c(unitary_to_superop(Matrix4c::Identity()).matrix() - Matrix16c::Identity())) == 0.0);

    const Matrix4c x1 = pauli_on(Pauli::x, 1);
    const SuperOperator g = unitary_to_superop(x1);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) CHECK(g(i, j).imag() == 0.0);
    Matrix4c p00 = Matrix4c::Zero();
    p00(0, 0) = 1.0;
    Matrix4c p10 = Matrix4c::Zero();
    p10(2, 2) = 1.0;
    CHECK(max_abs(Matrix4c(g.apply(p00) - p10)) == 0.0);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix4c u = oracle::random_unitary(rng);
      const SuperOperator s = unitary_to_superop(u);
      const Matrix4c rho = oracle::random_density(rng);
      CHECK(std::abs(s.apply(rho).trace() - Complex(1.0)) <= 1e-12);
      CHECK(max_abs(Matrix4c(s.apply(rho) - u * rho * u.adjoint())) <= 1e-12);
      const Matrix16c ref = oracle::superop_of([&](const Matrix4c& e) { return Matrix4c(u * e * u.adjoint()); });
      CHECK(max_abs(Matrix16c(s.matrix() - ref)) <= 1e-12);
      CHECK(choi_min_eigenvalue(s) >= -1e-12);
    }
    Matrix4c bad = Matrix4c::Identity();
    bad(0, 0) = 1.1;
    CHECK_THROWS_AS(unitary_to_superop(bad), std::invalid_argument);
  }

  TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix::maximally_mixed());
    CHECK_NOTHROW(DensityMatrix::basis_projector(3));
    Matrix4c not_unit = Matrix4c::Identity() / 2.0;
    CHECK_THROWS_AS(DensityMatrix{not_unit}, std::invalid_argument);
    Matrix4c not_herm = Matrix4c::Identity() / 4.0;
    not_herm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, std::invalid_argument);
    Matrix4c negative = Matrix4c::Zero();
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
  }

  TEST_CASE("lindblad dissipator matches the direct master-equation map") {
    std::mt19937_64 rng(6);
    const Matrix4c l = oracle::random_matrix(rng);
    const SuperOperator d = lindblad_dissipator(l);
    const Matrix16c ref = oracle::superop_of([&](const Matrix4c& r) {
      const Matrix4c ll = l.adjoint() * l;
      return Matrix4c(l * r * l.adjoint() - 0.5 * (ll * r + r * ll));
    });
    CHECK(max_abs(Matrix16c(d.matrix() - ref)) <= 1e-12);
  }

  TEST_CASE("choi matrix of a dephasing mixture") {
    // Average of identity and Z1 conjugation is CP with Choi eigenvalues {0, 2}.
    const SuperOperator mix = (unitary_to_superop(Matrix4c::Identity()) + unitary_to_superop(pauli_on(Pauli::z, 1))) *
                              Complex(0.5);
    CHECK(choi_min_eigenvalue(mix) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(trace_preservation_error(mix) <= 1e-15);
    // Transpose is positive but not completely positive.
    const SuperOperator transpose(oracle::superop_of([](const Matrix4c& r) { return Matrix4c(r.transpose()); }));
    CHECK(choi_min_eigenvalue(transpose) == doctest::Approx(-1.0));
  }
}
