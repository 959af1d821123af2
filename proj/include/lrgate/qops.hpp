// Copyright 2026 The lrgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex linear algebra for the 2- and 4-dimensional Hilbert spaces
// of one and two spin-1/2 systems.
//
// Two-qubit basis order used internally is the tensor order
// |s1 s2> = (up-up, up-down, down-up, down-down). The alternative listing
// (up-up, down-up, up-down, down-down), which groups the states by the
// second qubit, is reachable through to_paired_order()/from_paired_order().

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lrgate {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance for structural checks at construction (Hermiticity, normalization).
inline constexpr double kConstructionTol = 1e-12;
/// Default tolerance for verification assertions.
inline constexpr double kVerifyTol = 1e-8;

class Ket {
public:
    explicit Ket(std::size_t dim = 2);
    Ket(std::initializer_list<cplx> amplitudes);

    std::size_t dim() const noexcept { return dim_; }
    cplx& operator[](std::size_t i) { return amp_[i]; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }
    std::span<const cplx> amplitudes() const { return {amp_.data(), dim_}; }

    double norm() const;
    Ket normalized() const;
    bool is_normalized(double tol = kConstructionTol) const;

    Ket& operator*=(cplx s);
    friend Ket operator*(cplx s, Ket v) { return v *= s; }

    /// Basis state |index>.
    static Ket basis(std::size_t dim, std::size_t index);

private:
    std::size_t dim_;
    std::array<cplx, 4> amp_{};
};

/// <a|b>, antilinear in the first argument.
cplx inner(const Ket& a, const Ket& b);

class Matrix {
public:
    explicit Matrix(std::size_t dim = 2);
    /// Row-major initializer; size must equal dim*dim with dim in {2, 4}.
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t dim() const noexcept { return dim_; }
    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * 4 + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * 4 + c]; }

    static Matrix identity(std::size_t dim);
    static Matrix zero(std::size_t dim) { return Matrix(dim); }
    static Matrix diagonal(std::span<const cplx> d);

    Matrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    /// Largest entry modulus.
    double max_abs() const;
    bool is_hermitian(double tol = kConstructionTol) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Ket operator*(const Matrix& a, const Ket& v);

    Ket column(std::size_t c) const;
    void set_column(std::size_t c, const Ket& v);

private:
    std::size_t dim_;
    std::array<cplx, 16> a_{};  // stride 4 regardless of dim
};

/// Time-dependent operator, e.g. t -> H(t).
using MatrixFn = std::function<Matrix(double)>;

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

/// Eigenvalues sorted descending; eigenvectors[n] belongs to eigenvalues[n].
/// Each eigenvector has its largest-modulus component real and positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Ket> eigenvectors;

    /// V with the eigenvectors as columns.
    Matrix vectors() const;
};

/// Hermitian eigensolver. 2x2 is solved in closed form, 4x4 by cyclic
/// complex Jacobi rotations. Throws NonHermitianInput.
EigenDecomposition eigh(const Matrix& h);

/// exp(-i H t) for Hermitian H. Throws NonHermitianInput.
Matrix expm_i_hermitian(const Matrix& h, double t);

/// Index map for direct_sum: {block-1 row 0, block-1 row 1, block-2 row 0, block-2 row 1}.
using Embedding = std::array<std::size_t, 4>;

/// Blocks by the state of qubit 2: block 1 = {up-up, down-up}, block 2 = {up-down, down-down}.
inline constexpr Embedding kQubit2Blocks{0, 2, 1, 3};

/// Embed two 2x2 blocks into a 4x4 block-diagonal matrix. Throws BadEmbedding.
Matrix direct_sum(const Matrix& a, const Matrix& b, const Embedding& embedding = kQubit2Blocks);

/// Restriction of a 4x4 matrix to block 1 (first=true) or block 2.
Matrix block(const Matrix& m, bool first, const Embedding& embedding = kQubit2Blocks);

/// Largest modulus among entries coupling the two blocks.
double block_leakage(const Matrix& m, const Embedding& embedding = kQubit2Blocks);

/// Kronecker product under the tensor basis order |s1 s2>.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Reorder a 4x4 matrix from tensor order to (up-up, down-up, up-down, down-down).
Matrix to_paired_order(const Matrix& m);
Matrix from_paired_order(const Matrix& m);

/// ||U^dagger U - 1||_F.
double unitarity_defect(const Matrix& u);

/// |tr(U^dagger V)| / d. Throws DimensionMismatch.
double gate_fidelity(const Matrix& u, const Matrix& v);

/// Largest off-diagonal modulus.
double offdiag_max(const Matrix& m);

/// integer power by repeated squaring.
Matrix matrix_power(const Matrix& m, int n);

/// Angle reduced to [0, 2pi).
double wrap_2pi(double angle);

/// Distance between two angles on the circle, in [0, pi].
double phase_distance(double a, double b);

}  // namespace lrgate
