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

#include "lrgate/qops.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "lrgate/error.hpp"

namespace lrgate {

namespace {

void check_dim(std::size_t dim) {
    if (dim != 2 && dim != 4) {
        throw Error(ErrorCode::DimensionMismatch, "dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

// Rotate v so its dominant component is real and positive. Ties go to the
// lowest index so the result is deterministic.
void fix_phase_by_largest(Ket& v) {
    double best = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) best = std::max(best, std::abs(v[i]));
    if (best == 0.0) return;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        const double a = std::abs(v[i]);
        if (a >= best * (1.0 - 1e-12)) {
            v *= std::conj(v[i]) / a;
            v[i] = a;
            return;
        }
    }
}

EigenDecomposition eigh2(const Matrix& h) {
    const double c = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double z = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double x = 0.5 * (h(0, 1).real() + h(1, 0).real());
    const double y = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
    const double rho = std::hypot(x, y);
    const double r = std::hypot(rho, z);

    EigenDecomposition out;
    out.eigenvalues = {c + r, c - r};
    if (r == 0.0) {
        out.eigenvectors = {Ket::basis(2, 0), Ket::basis(2, 1)};
        return out;
    }
    const double theta = std::atan2(rho, z);
    const cplx phase = rho > 0.0 ? cplx(x, y) / rho : cplx(1.0);
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    Ket up{ch, phase * sh};
    Ket down{-sh, phase * ch};
    fix_phase_by_largest(up);
    fix_phase_by_largest(down);
    out.eigenvectors = {up, down};
    return out;
}

double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Cyclic Jacobi sweeps. Each rotation zeroes one off-diagonal pair exactly;
// pairs that are already zero are never touched, so block structure survives.
EigenDecomposition eigh_jacobi(Matrix a) {
    const std::size_t n = a.dim();
    Matrix v = Matrix::identity(n);
    const double scale = a.frobenius_norm();
    const double threshold = 1e-14 * (scale > 0.0 ? scale : 1.0);

    for (int sweep = 0; sweep < 64 && offdiag_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const cplx ph = a(p, q) / mag;  // e^{i phi}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx s_ph = s * ph;
                const cplx s_phc = s * std::conj(ph);

                // A <- A G with G_pp = G_qq = c, G_pq = s e^{i phi}, G_qp = -s e^{-i phi}
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s_phc * akq;
                    a(k, q) = s_ph * akp + c * akq;
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - s_phc * vkq;
                    v(k, q) = s_ph * vkp + c * vkq;
                }
                // A <- G^dagger A
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - s_ph * aqk;
                    a(q, k) = s_phc * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    for (std::size_t i : order) {
        out.eigenvalues.push_back(a(i, i).real());
        Ket col = v.column(i);
        fix_phase_by_largest(col);
        out.eigenvectors.push_back(col);
    }
    return out;
}

void require_hermitian(const Matrix& h) {
    if (!h.is_hermitian()) {
        throw Error(ErrorCode::NonHermitianInput, "matrix fails the Hermiticity check");
    }
}

}  // namespace

// ---------------------------------------------------------------- Ket

Ket::Ket(std::size_t dim) : dim_(dim) { check_dim(dim); }

Ket::Ket(std::initializer_list<cplx> amplitudes) : dim_(amplitudes.size()) {
    check_dim(dim_);
    std::copy(amplitudes.begin(), amplitudes.end(), amp_.begin());
}

double Ket::norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += std::norm(amp_[i]);
    return std::sqrt(s);
}

Ket Ket::normalized() const {
    Ket out = *this;
    out *= 1.0 / norm();
    return out;
}

bool Ket::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Ket& Ket::operator*=(cplx s) {
    for (std::size_t i = 0; i < dim_; ++i) amp_[i] *= s;
    return *this;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    Ket v(dim);
    v[index] = 1.0;
    return v;
}

cplx inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "inner product of kets with different dims");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    check_dim(dim_);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
        std::size_t c = 0;
        for (const cplx& x : row) (*this)(r, c++) = x;
        ++r;
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
}

cplx Matrix::trace() const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
    return s;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) s += std::norm((*this)(r, c));
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
    return m;
}

bool Matrix::is_hermitian(double tol) const {
    return (*this - adjoint()).frobenius_norm() <= tol * frobenius_norm();
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    Matrix m(a.dim_);
    const std::size_t n = a.dim_;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx ark = a(r, k);
            for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
        }
    return m;
}

Ket operator*(const Matrix& a, const Ket& v) {
    if (a.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    Ket out(v.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out[r] += a(r, c) * v[c];
    return out;
}

Ket Matrix::column(std::size_t c) const {
    Ket v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Ket& v) {
    for (std::size_t r = 0; r < dim_; ++r) (*this)(r, c) = v[r];
}

namespace pauli {
Matrix identity() { return Matrix::identity(2); }
Matrix x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix y() { return Matrix{{0.0, -kI}, {kI, 0.0}}; }
Matrix z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

// ---------------------------------------------------------------- spectral

Matrix EigenDecomposition::vectors() const {
    Matrix v(eigenvectors.front().dim());
    for (std::size_t i = 0; i < eigenvectors.size(); ++i) v.set_column(i, eigenvectors[i]);
    return v;
}

EigenDecomposition eigh(const Matrix& h) {
    require_hermitian(h);
    return h.dim() == 2 ? eigh2(h) : eigh_jacobi(h);
}

Matrix expm_i_hermitian(const Matrix& h, double t) {
    require_hermitian(h);
    if (t == 0.0) return Matrix::identity(h.dim());
    if (h.dim() == 2) {
        // exp(-i(c + a.sigma)t) = e^{-ict} (cos|a|t - i sin(|a|t) a.sigma/|a|)
        const double c = 0.5 * (h(0, 0).real() + h(1, 1).real());
        const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
        const double ax = 0.5 * (h(0, 1).real() + h(1, 0).real());
        const double ay = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
        const double r = std::sqrt(ax * ax + ay * ay + az * az);
        const double cs = std::cos(r * t);
        const double sinc = r > 0.0 ? std::sin(r * t) / r : t;
        const cplx g = std::exp(-kI * (c * t));
        const cplx nx = -kI * sinc * ax, ny = -kI * sinc * ay, nz = -kI * sinc * az;
        return Matrix{{g * (cs + nz), g * (nx - kI * ny)}, {g * (nx + kI * ny), g * (cs - nz)}};
    }
    if (block_leakage(h) == 0.0) {
        return direct_sum(expm_i_hermitian(block(h, true), t), expm_i_hermitian(block(h, false), t));
    }
    const EigenDecomposition e = eigh_jacobi(h);
    const Matrix v = e.vectors();
    std::vector<cplx> d;
    for (double lam : e.eigenvalues) d.push_back(std::exp(-kI * (lam * t)));
    return v * Matrix::diagonal(d) * v.adjoint();
}

// ---------------------------------------------------------------- composition

namespace {
void check_embedding(const Embedding& e) {
    std::array<bool, 4> seen{};
    for (std::size_t i : e) {
        if (i >= 4 || seen[i]) throw Error(ErrorCode::BadEmbedding, "embedding is not a permutation of {0,1,2,3}");
        seen[i] = true;
    }
}
}  // namespace

Matrix direct_sum(const Matrix& a, const Matrix& b, const Embedding& embedding) {
    check_embedding(embedding);
    if (a.dim() != 2 || b.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "direct_sum takes 2x2 blocks");
    Matrix m(4);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            m(embedding[r], embedding[c]) = a(r, c);
            m(embedding[2 + r], embedding[2 + c]) = b(r, c);
        }
    return m;
}

Matrix block(const Matrix& m, bool first, const Embedding& embedding) {
    check_embedding(embedding);
    if (m.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "block() takes a 4x4 matrix");
    const std::size_t off = first ? 0 : 2;
    Matrix b(2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) b(r, c) = m(embedding[off + r], embedding[off + c]);
    return b;
}

double block_leakage(const Matrix& m, const Embedding& embedding) {
    check_embedding(embedding);
    double worst = 0.0;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 2; c < 4; ++c) {
            worst = std::max(worst, std::abs(m(embedding[r], embedding[c])));
            worst = std::max(worst, std::abs(m(embedding[c], embedding[r])));
        }
    return worst;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    if (a.dim() != 2 || b.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "tensor_product takes 2x2 factors");
    Matrix m(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

namespace {
constexpr std::array<std::size_t, 4> kPairedToTensor{0, 2, 1, 3};  // self-inverse
}

Matrix to_paired_order(const Matrix& m) {
    if (m.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "reordering needs a 4x4 matrix");
    Matrix out(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) out(r, c) = m(kPairedToTensor[r], kPairedToTensor[c]);
    return out;
}

Matrix from_paired_order(const Matrix& m) { return to_paired_order(m); }

// ---------------------------------------------------------------- diagnostics

double unitarity_defect(const Matrix& u) {
    return (u.adjoint() * u - Matrix::identity(u.dim())).frobenius_norm();
}

double gate_fidelity(const Matrix& u, const Matrix& v) {
    if (u.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "gate_fidelity of different dimensions");
    return std::min(1.0, std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.dim()));
}

double offdiag_max(const Matrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c)
            if (r != c) worst = std::max(worst, std::abs(m(r, c)));
    return worst;
}

Matrix matrix_power(const Matrix& m, int n) {
    assert(n >= 0);
    Matrix result = Matrix::identity(m.dim());
    Matrix base = m;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

double wrap_2pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double phase_distance(double a, double b) {
    const double d = wrap_2pi(a - b);
    return std::min(d, kTwoPi - d);
}

}  // namespace lrgate
