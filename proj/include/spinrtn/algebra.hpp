#pragma once

// Two-spin operator algebra: vectorization, superoperators, the Heisenberg
// superoperator and its spectral decomposition.
//
// Vectorization is row-major: vec(rho)[4*i + j] = rho(i, j). Under this
// convention vec(A B C) = (A kron C^T) vec(B).

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinrtn {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr int kSpinDim = 4;
inline constexpr int kSuperDim = 16;

/// A validated two-spin density matrix: Hermitian (1e-12), unit trace
/// (1e-12) and positive semidefinite (eigenvalues >= -1e-10).
class DensityMatrix {
public:
  explicit DensityMatrix(const Matrix4c& rho);

  static DensityMatrix maximally_mixed();
  static DensityMatrix basis_projector(int index);

  const Matrix4c& matrix() const noexcept { return rho_; }

private:
  Matrix4c rho_;
};

/// Linear map on row-major vectorized 4x4 operators.
class SuperOperator {
public:
  SuperOperator() : m_(Matrix16c::Zero()) {}
  explicit SuperOperator(const Matrix16c& m) : m_(m) {}

  static SuperOperator identity() { return SuperOperator(Matrix16c::Identity()); }
  static SuperOperator zero() { return SuperOperator(); }

  const Matrix16c& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// Devectorized image of an operator.
  Matrix4c apply(const Matrix4c& op) const;
  Vector16c apply(const Vector16c& v) const { return m_ * v; }

  SuperOperator operator*(const SuperOperator& rhs) const { return SuperOperator(m_ * rhs.m_); }
  SuperOperator operator+(const SuperOperator& rhs) const { return SuperOperator(m_ + rhs.m_); }
  SuperOperator operator-(const SuperOperator& rhs) const { return SuperOperator(m_ - rhs.m_); }
  SuperOperator operator*(Complex c) const { return SuperOperator(m_ * c); }
  SuperOperator& operator+=(const SuperOperator& rhs) {
    m_ += rhs.m_;
    return *this;
  }

private:
  Matrix16c m_;
};

inline SuperOperator operator*(Complex c, const SuperOperator& s) { return s * c; }

/// One eigenspace of a Hermitian superoperator.
struct Eigenspace {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  Matrix16c projector;
};

/// Grouped spectral decomposition of a Hermitian 16x16 matrix, eigenvalues
/// ascending.
struct SpectralDecomposition {
  std::vector<Eigenspace> spaces;

  /// Flat list of the 16 eigenvalues with multiplicity.
  std::vector<double> eigenvalues() const;
  /// Index of the eigenspace whose eigenvalue is within tol of value, or -1.
  int find(double value, double tol = 1e-9) const;
};

// --- Operators -------------------------------------------------------------

enum class Pauli { x, y, z };

/// Pauli operator acting on spin 1 (left tensor factor) or spin 2.
Matrix4c pauli_on(Pauli p, int spin);

MatrixXc kron(const MatrixXc& a, const MatrixXc& b);
Matrix16c kron4(const Matrix4c& a, const Matrix4c& b);

/// sigma_1 . sigma_2 in the computational basis |00>,|01>,|10>,|11>.
Matrix4c heisenberg_hamiltonian();

Vector16c vectorize(const Matrix4c& op);
Matrix4c devectorize(std::span<const Complex> v);
Matrix4c devectorize(const Vector16c& v);

/// -i (H kron I - I kron H^T); the Liouvillian of unitary evolution.
SuperOperator hamiltonian_superoperator(const Matrix4c& h);

/// H kron I - I kron H^T for H = sigma_1 . sigma_2. Hermitian, spectrum
/// {-4 (x3), 0 (x10), +4 (x3)}.
const SuperOperator& sigma_h();

/// Cached exact decomposition of sigma_h built from the singlet/triplet
/// projectors of sigma_1 . sigma_2.
const SpectralDecomposition& sigma_h_spectrum();

/// Numerical decomposition of a Hermitian matrix, grouping eigenvalues
/// closer than group_tol.
SpectralDecomposition decompose_hermitian(const Matrix16c& m, double group_tol = 1e-9);

/// sum_k f(s_k) Projector_k.
template <class Kernel>
SuperOperator apply_scalar_kernel(Kernel&& f, const SpectralDecomposition& spec) {
  Matrix16c out = Matrix16c::Zero();
  for (const auto& space : spec.spaces) {
    out += Complex(f(space.eigenvalue)) * space.projector;
  }
  return SuperOperator(out);
}

template <class Kernel>
SuperOperator apply_scalar_kernel(Kernel&& f) {
  return apply_scalar_kernel(std::forward<Kernel>(f), sigma_h_spectrum());
}

/// Value of the sigma_h-function s on the eigenspace with the given
/// eigenvalue: tr(P S) / tr(P). Exact when s is a function of sigma_h.
Complex kernel_value(const SuperOperator& s, double eigenvalue);

MatrixXc matrix_exp(const MatrixXc& m);
Matrix4c matrix_exp(const Matrix4c& m);
SuperOperator matrix_exp(const SuperOperator& s);

/// U kron conj(U); rejects U with ||U U^dag - I||_max > 1e-8.
SuperOperator unitary_to_superop(const Matrix4c& u);

/// Lindblad generator for jump operator l:
/// l kron conj(l) - 1/2 (l^dag l kron I + I kron (l^dag l)^T).
SuperOperator lindblad_dissipator(const Matrix4c& l);

// --- Channel diagnostics ----------------------------------------------------

/// max_kl |sum_i S(4i+i, 4k+l) - delta_kl|.
double trace_preservation_error(const SuperOperator& s);
/// max |S(rho^dag) - S(rho)^dag| over matrix units, in entry form.
double hermiticity_preservation_error(const SuperOperator& s);
/// Choi matrix sum_kl |k><l| kron S(|k><l|).
Matrix16c choi_matrix(const SuperOperator& s);
double choi_min_eigenvalue(const SuperOperator& s);
/// max |S S^dag - I|.
double unitarity_error(const SuperOperator& s);

double max_abs(const Matrix16c& m);
double max_abs(const Matrix4c& m);

}  // namespace spinrtn
