#include "spinrtn/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinrtn {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix4c kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix2cd pauli2(char which) {
  Eigen::Matrix2cd p;
  switch (which) {
    case 'x': p << 0, 1, 1, 0; break;
    case 'y': p << 0, -kI, kI, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

SpectralDecomposition build_sigma_h_spectrum() {
  const Matrix4c h = heisenberg_hamiltonian();
  const Matrix4c id = Matrix4c::Identity();
  // sigma_1 . sigma_2 = P_t - 3 P_s with P_t + P_s = I.
  const Matrix4c triplet = (3.0 * id + h) / 4.0;
  const Matrix4c singlet = (id - h) / 4.0;

  // sigma_h = H kron I - I kron H^T; H is real symmetric so the projector of
  // eigenvalue e_a - e_b is P_a kron P_b.
  SpectralDecomposition spec;
  spec.spaces.push_back({-4.0, 3, kron4(singlet, triplet)});
  spec.spaces.push_back({0.0, 10, kron4(triplet, triplet) + kron4(singlet, singlet)});
  spec.spaces.push_back({4.0, 3, kron4(triplet, singlet)});
  return spec;
}

}  // namespace

DensityMatrix::DensityMatrix(const Matrix4c& rho) : rho_(rho) {
  if (!rho.allFinite()) throw std::invalid_argument("density matrix: non-finite entry");
  if (max_abs(Matrix4c(rho - rho.adjoint())) > 1e-12)
    throw std::invalid_argument("density matrix: not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-12)
    throw std::invalid_argument("density matrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix4c::Identity() / 4.0);
}

DensityMatrix DensityMatrix::basis_projector(int index) {
  if (index < 0 || index >= kSpinDim) throw std::invalid_argument("basis index out of range");
  Matrix4c rho = Matrix4c::Zero();
  rho(index, index) = 1.0;
  return DensityMatrix(rho);
}

Matrix4c SuperOperator::apply(const Matrix4c& op) const {
  return devectorize(Vector16c(m_ * vectorize(op)));
}

std::vector<double> SpectralDecomposition::eigenvalues() const {
  std::vector<double> out;
  for (const auto& s : spaces) out.insert(out.end(), s.multiplicity, s.eigenvalue);
  return out;
}

int SpectralDecomposition::find(double value, double tol) const {
  for (std::size_t k = 0; k < spaces.size(); ++k)
    if (std::abs(spaces[k].eigenvalue - value) <= tol) return static_cast<int>(k);
  return -1;
}

Matrix4c pauli_on(Pauli p, int spin) {
  const char c = p == Pauli::x ? 'x' : (p == Pauli::y ? 'y' : 'z');
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  if (spin == 1) return kron2(pauli2(c), id);
  if (spin == 2) return kron2(id, pauli2(c));
  throw std::invalid_argument("pauli_on: spin must be 1 or 2");
}

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix16c kron4(const Matrix4c& a, const Matrix4c& b) {
  Matrix16c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Matrix4c heisenberg_hamiltonian() {
  Matrix4c h = Matrix4c::Zero();
  for (char c : {'x', 'y', 'z'}) h += kron2(pauli2(c), pauli2(c));
  return h;
}

Vector16c vectorize(const Matrix4c& op) {
  Vector16c v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v(4 * i + j) = op(i, j);
  return v;
}

Matrix4c devectorize(std::span<const Complex> v) {
  if (v.size() != static_cast<std::size_t>(kSuperDim))
    throw std::invalid_argument("devectorize: expected 16 entries, got " + std::to_string(v.size()));
  Matrix4c op;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) op(i, j) = v[4 * i + j];
  return op;
}

Matrix4c devectorize(const Vector16c& v) {
  return devectorize(std::span<const Complex>(v.data(), kSuperDim));
}

SuperOperator hamiltonian_superoperator(const Matrix4c& h) {
  const Matrix4c id = Matrix4c::Identity();
  return SuperOperator(-kI * (kron4(h, id) - kron4(id, h.transpose())));
}

const SuperOperator& sigma_h() {
  static const SuperOperator s = [] {
    const Matrix4c h = heisenberg_hamiltonian();
    const Matrix4c id = Matrix4c::Identity();
    return SuperOperator(kron4(h, id) - kron4(id, h.transpose()));
  }();
  return s;
}

const SpectralDecomposition& sigma_h_spectrum() {
  static const SpectralDecomposition spec = build_sigma_h_spectrum();
  return spec;
}

SpectralDecomposition decompose_hermitian(const Matrix16c& m, double group_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix16c> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("decompose_hermitian: eigensolver failed");
  const auto& w = es.eigenvalues();
  const auto& v = es.eigenvectors();

  SpectralDecomposition spec;
  int start = 0;
  while (start < kSuperDim) {
    int end = start + 1;
    while (end < kSuperDim && w(end) - w(end - 1) <= group_tol) ++end;
    const int count = end - start;
    const auto block = v.middleCols(start, count);
    Eigenspace space;
    space.eigenvalue = w.segment(start, count).mean();
    space.multiplicity = count;
    space.projector = block * block.adjoint();
    spec.spaces.push_back(space);
    start = end;
  }
  return spec;
}

Complex kernel_value(const SuperOperator& s, double eigenvalue) {
  const auto& spec = sigma_h_spectrum();
  const int k = spec.find(eigenvalue);
  if (k < 0) throw std::invalid_argument("kernel_value: " + std::to_string(eigenvalue) + " is not an eigenvalue of sigma_h");
  const auto& space = spec.spaces[static_cast<std::size_t>(k)];
  return (space.projector * s.matrix()).trace() / static_cast<double>(space.multiplicity);
}

MatrixXc matrix_exp(const MatrixXc& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp: matrix is not square");
  return m.exp();
}

Matrix4c matrix_exp(const Matrix4c& m) { return Matrix4c(MatrixXc(m).exp()); }

SuperOperator matrix_exp(const SuperOperator& s) {
  return SuperOperator(Matrix16c(MatrixXc(s.matrix()).exp()));
}

SuperOperator unitary_to_superop(const Matrix4c& u) {
  if (!u.allFinite()) throw std::invalid_argument("unitary_to_superop: non-finite entry");
  if (max_abs(Matrix4c(u * u.adjoint() - Matrix4c::Identity())) > 1e-8)
    throw std::invalid_argument("unitary_to_superop: matrix is not unitary");
  return SuperOperator(kron4(u, u.conjugate()));
}

SuperOperator lindblad_dissipator(const Matrix4c& l) {
  const Matrix4c id = Matrix4c::Identity();
  const Matrix4c ldl = l.adjoint() * l;
  return SuperOperator(kron4(l, l.conjugate()) - 0.5 * (kron4(ldl, id) + kron4(id, ldl.transpose())));
}

double trace_preservation_error(const SuperOperator& s) {
  Eigen::Matrix<Complex, 1, 16> row = Eigen::Matrix<Complex, 1, 16>::Zero();
  for (int i = 0; i < 4; ++i) row += s.matrix().row(5 * i);
  double err = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      err = std::max(err, std::abs(row(4 * k + l) - (k == l ? 1.0 : 0.0)));
  return err;
}

double hermiticity_preservation_error(const SuperOperator& s) {
  // S(rho)^dag = S(rho^dag)  <=>  S(4i+j, 4k+l) = conj(S(4j+i, 4l+k)).
  double err = 0.0;
  const auto& m = s.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          err = std::max(err, std::abs(m(4 * i + j, 4 * k + l) - std::conj(m(4 * j + i, 4 * l + k))));
  return err;
}

Matrix16c choi_matrix(const SuperOperator& s) {
  // C(4k+i, 4l+j) = <i| S(|k><l|) |j> = S(4i+j, 4k+l).
  Matrix16c c;
  const auto& m = s.matrix();
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c(4 * k + i, 4 * l + j) = m(4 * i + j, 4 * k + l);
  return c;
}

double choi_min_eigenvalue(const SuperOperator& s) {
  const Matrix16c c = choi_matrix(s);
  const Matrix16c herm = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix16c> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double unitarity_error(const SuperOperator& s) {
  return max_abs(Matrix16c(s.matrix() * s.matrix().adjoint() - Matrix16c::Identity()));
}

double max_abs(const Matrix16c& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace spinrtn
