// Copyright 2026 The bqtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "bqt/density.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "bqt/kernels.hpp"

namespace bqt {
namespace {

// Narrower blocks are cheaper to scale inline than through the kernel table.
constexpr std::size_t kKronKernelWidth = 8;

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b,
                        const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << what << ": shape mismatch " << a.rows() << "x" << a.cols()
            << " vs " << b.rows() << "x" << b.cols();
        throw DimensionError(msg.str());
    }
}

// Validates a qubit list against n and returns the complementary qubits in
// ascending order.
auto complement(QubitList qubits, std::size_t n, const char *what)
    -> std::vector<std::size_t> {
    std::vector<bool> seen(n, false);
    for (const std::size_t q : qubits) {
        if (q >= n) {
            throw DimensionError(std::string(what) + ": qubit index " +
                                 std::to_string(q) + " out of range for " +
                                 std::to_string(n) + " qubits");
        }
        if (seen[q]) {
            throw DimensionError(std::string(what) + ": duplicate qubit index " +
                                 std::to_string(q));
        }
        seen[q] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
        if (!seen[q]) {
            rest.push_back(q);
        }
    }
    return rest;
}

// offsets[r] is the full n-qubit index contribution of the sub-index r whose
// bits (most significant first) belong to qubits[0], qubits[1], ...
auto scatter_offsets(QubitList qubits, std::size_t n)
    -> std::vector<std::size_t> {
    const std::size_t m = qubits.size();
    std::vector<std::size_t> offsets(std::size_t{1} << m, 0);
    for (std::size_t r = 0; r < offsets.size(); ++r) {
        std::size_t off = 0;
        for (std::size_t s = 0; s < m; ++s) {
            if ((r >> (m - 1 - s)) & 1U) {
                off |= std::size_t{1} << (n - 1 - qubits[s]);
            }
        }
        offsets[r] = off;
    }
    return offsets;
}

auto to_eigen(const ComplexMatrix &m) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()),
                         static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(r, c);
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) +
                             " entries for a " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

auto ComplexMatrix::identity(std::size_t n) -> ComplexMatrix {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

auto ComplexMatrix::diagonal(std::initializer_list<cplx> diag)
    -> ComplexMatrix {
    ComplexMatrix m(diag.size(), diag.size());
    std::size_t k = 0;
    for (const cplx d : diag) {
        m(k, k) = d;
        ++k;
    }
    return m;
}

auto ComplexMatrix::adjoint() const -> ComplexMatrix {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

auto ComplexMatrix::trace() const -> cplx {
    if (!is_square()) {
        throw DimensionError("trace of a non-square matrix");
    }
    cplx t{0.0, 0.0};
    for (std::size_t k = 0; k < rows_; ++k) {
        t += (*this)(k, k);
    }
    return t;
}

auto ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const -> double {
    require_same_shape(*this, other, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    }
    return worst;
}

auto ComplexMatrix::operator+=(const ComplexMatrix &rhs) -> ComplexMatrix & {
    require_same_shape(*this, rhs, "operator+");
    kernels::active().caxpy(data_.size(), 1.0, rhs.data_.data(), data_.data());
    return *this;
}

auto ComplexMatrix::operator-=(const ComplexMatrix &rhs) -> ComplexMatrix & {
    require_same_shape(*this, rhs, "operator-");
    kernels::active().caxpy(data_.size(), -1.0, rhs.data_.data(), data_.data());
    return *this;
}

auto ComplexMatrix::operator*=(cplx s) -> ComplexMatrix & {
    kernels::active().cscal_copy(data_.size(), s, data_.data(), data_.data());
    return *this;
}

auto operator*(const ComplexMatrix &a, const ComplexMatrix &b)
    -> ComplexMatrix {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product: inner dimensions " +
                             std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    kernels::active().cgemm(a.rows(), b.cols(), a.cols(), a.data().data(),
                            b.data().data(), c.data().data());
    return c;
}

auto operator+(ComplexMatrix a, const ComplexMatrix &b) -> ComplexMatrix {
    a += b;
    return a;
}

auto operator-(ComplexMatrix a, const ComplexMatrix &b) -> ComplexMatrix {
    a -= b;
    return a;
}

auto operator*(cplx s, ComplexMatrix a) -> ComplexMatrix {
    a *= s;
    return a;
}

auto sandwich(const ComplexMatrix &k, const ComplexMatrix &rho)
    -> ComplexMatrix {
    return k * rho * k.adjoint();
}

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {}

auto Ket::basis(std::size_t dim, std::size_t index) -> Ket {
    if (index >= dim) {
        throw DimensionError("Ket::basis: index out of range");
    }
    std::vector<cplx> amps(dim, cplx{0.0, 0.0});
    amps[index] = 1.0;
    return Ket(std::move(amps));
}

auto Ket::norm_squared() const -> double {
    double s = 0.0;
    for (const cplx a : amps_) {
        s += std::norm(a);
    }
    return s;
}

auto Ket::is_normalized(double tol) const -> bool {
    return std::abs(norm_squared() - 1.0) <= tol;
}

auto Ket::projector() const -> ComplexMatrix {
    const std::size_t d = amps_.size();
    ComplexMatrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            out(r, c) = amps_[r] * std::conj(amps_[c]);
        }
    }
    return out;
}

auto operator*(const ComplexMatrix &op, const Ket &psi) -> Ket {
    if (op.cols() != psi.dim()) {
        throw DimensionError("operator-ket product: dimension mismatch");
    }
    std::vector<cplx> out(op.rows(), cplx{0.0, 0.0});
    for (std::size_t r = 0; r < op.rows(); ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t c = 0; c < op.cols(); ++c) {
            acc += op(r, c) * psi[c];
        }
        out[r] = acc;
    }
    return Ket(std::move(out));
}

// ---------------------------------------------------------------------------
// DensityMatrix

auto qubits_for_dim(std::size_t dim) -> std::size_t {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw DimensionError("dimension " + std::to_string(dim) +
                             " is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, bool normalized)
    : matrix_(std::move(matrix)), normalized_(normalized) {
    if (!matrix_.is_square()) {
        throw DimensionError("DensityMatrix: matrix is not square");
    }
    n_qubits_ = qubits_for_dim(matrix_.rows());
}

auto DensityMatrix::from_ket(const Ket &psi) -> DensityMatrix {
    return DensityMatrix(psi.projector(), psi.is_normalized());
}

auto DensityMatrix::is_hermitian(double tol) const -> bool {
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
            if (std::abs(matrix_(r, c) - std::conj(matrix_(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

auto DensityMatrix::is_unit_trace(double tol) const -> bool {
    const cplx t = trace();
    return std::abs(t.real() - 1.0) <= tol && std::abs(t.imag()) <= tol;
}

auto DensityMatrix::is_psd(double tol) const -> bool {
    if (!is_hermitian()) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        to_eigen(matrix_), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

void DensityMatrix::check_valid() const {
    if (!is_hermitian()) {
        throw std::domain_error("density matrix is not Hermitian");
    }
    if (normalized_ && !is_unit_trace()) {
        throw std::domain_error("density matrix marked normalized has trace " +
                                std::to_string(trace().real()));
    }
    if (!is_psd()) {
        throw std::domain_error("density matrix is not positive semidefinite");
    }
}

auto DensityMatrix::normalized_copy(double min_trace) const -> DensityMatrix {
    const double t = trace().real();
    if (!(t >= min_trace)) {
        throw std::domain_error("cannot normalise: trace " + std::to_string(t) +
                                " below threshold");
    }
    return DensityMatrix((1.0 / t) * matrix_, true);
}

// ---------------------------------------------------------------------------
// Tensor toolkit

auto kron(const ComplexMatrix &a, const ComplexMatrix &b) -> ComplexMatrix {
    const std::size_t br = b.rows();
    const std::size_t bc = b.cols();
    ComplexMatrix out(a.rows() * br, a.cols() * bc);
    const auto &k = kernels::active();
    cplx *dst = out.data().data();
    const cplx *src = b.data().data();
    const std::size_t out_cols = out.cols();
    for (std::size_t ra = 0; ra < a.rows(); ++ra) {
        for (std::size_t rb = 0; rb < br; ++rb) {
            cplx *row = dst + (ra * br + rb) * out_cols;
            const cplx *brow = src + rb * bc;
            for (std::size_t ca = 0; ca < a.cols(); ++ca) {
                const cplx s = a(ra, ca);
                if (s == cplx{0.0, 0.0}) {
                    continue;
                }
                cplx *dst_block = row + ca * bc;
                if (bc >= kKronKernelWidth) {
                    k.cscal_copy(bc, s, brow, dst_block);
                } else {
                    for (std::size_t cb = 0; cb < bc; ++cb) {
                        dst_block[cb] = s * brow[cb];
                    }
                }
            }
        }
    }
    return out;
}

auto kron(const DensityMatrix &a, const DensityMatrix &b) -> DensityMatrix {
    return DensityMatrix(kron(a.matrix(), b.matrix()),
                         a.normalized() && b.normalized());
}

auto kron(const Ket &a, const Ket &b) -> Ket {
    std::vector<cplx> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return Ket(std::move(out));
}

auto partial_trace(const DensityMatrix &rho, QubitList keep,
                   std::size_t n_qubits) -> DensityMatrix {
    if (rho.dim() != (std::size_t{1} << n_qubits)) {
        throw DimensionError("partial_trace: state dimension " +
                             std::to_string(rho.dim()) + " does not match " +
                             std::to_string(n_qubits) + " qubits");
    }
    const std::vector<std::size_t> traced =
        complement(keep, n_qubits, "partial_trace");
    const auto keep_off = scatter_offsets(keep, n_qubits);
    const auto trace_off = scatter_offsets(traced, n_qubits);

    const std::size_t d = keep_off.size();
    ComplexMatrix out(d, d);
    const ComplexMatrix &m = rho.matrix();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            cplx acc{0.0, 0.0};
            for (const std::size_t t : trace_off) {
                acc += m(keep_off[r] + t, keep_off[c] + t);
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(out), rho.normalized());
}

auto embed_op(const ComplexMatrix &op, QubitList targets, std::size_t n_qubits)
    -> ComplexMatrix {
    if (!op.is_square() || op.rows() != (std::size_t{1} << targets.size())) {
        throw DimensionError("embed_op: operator of dimension " +
                             std::to_string(op.rows()) + "x" +
                             std::to_string(op.cols()) + " does not act on " +
                             std::to_string(targets.size()) + " qubits");
    }
    const std::vector<std::size_t> rest =
        complement(targets, n_qubits, "embed_op");
    const auto tgt_off = scatter_offsets(targets, n_qubits);
    const auto rest_off = scatter_offsets(rest, n_qubits);

    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix out(dim, dim);
    for (const std::size_t s : rest_off) {
        for (std::size_t a = 0; a < tgt_off.size(); ++a) {
            for (std::size_t b = 0; b < tgt_off.size(); ++b) {
                out(tgt_off[a] + s, tgt_off[b] + s) = op(a, b);
            }
        }
    }
    return out;
}

auto apply_local(const ComplexMatrix &op, QubitList targets,
                 const DensityMatrix &rho) -> DensityMatrix {
    const std::size_t n = rho.num_qubits();
    if (!op.is_square() || op.rows() != (std::size_t{1} << targets.size())) {
        throw DimensionError("apply_local: operator does not match targets");
    }
    const std::vector<std::size_t> rest = complement(targets, n, "apply_local");
    const auto tgt_off = scatter_offsets(targets, n);
    const auto rest_off = scatter_offsets(rest, n);
    const std::size_t dim = rho.dim();
    const std::size_t k = tgt_off.size();
    const ComplexMatrix &m = rho.matrix();

    // left: T = (op x I) rho
    ComplexMatrix left(dim, dim);
    for (const std::size_t s : rest_off) {
        for (std::size_t a = 0; a < k; ++a) {
            cplx *dst = left.data().data() + (tgt_off[a] + s) * dim;
            for (std::size_t b = 0; b < k; ++b) {
                const cplx w = op(a, b);
                if (w == cplx{0.0, 0.0}) {
                    continue;
                }
                kernels::active().caxpy(
                    dim, w, m.data().data() + (tgt_off[b] + s) * dim, dst);
            }
        }
    }
    // right: T (op x I)^dagger
    ComplexMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (const std::size_t s : rest_off) {
            for (std::size_t a = 0; a < k; ++a) {
                cplx acc{0.0, 0.0};
                for (std::size_t b = 0; b < k; ++b) {
                    acc += left(r, tgt_off[b] + s) * std::conj(op(a, b));
                }
                out(r, tgt_off[a] + s) = acc;
            }
        }
    }
    return DensityMatrix(std::move(out), false);
}

auto project_onto(const DensityMatrix &rho, const Ket &psi, QubitList targets)
    -> DensityMatrix {
    const std::size_t n = rho.num_qubits();
    if (psi.dim() != (std::size_t{1} << targets.size())) {
        throw DimensionError("project_onto: ket dimension does not match "
                             "the number of target qubits");
    }
    const std::vector<std::size_t> rest =
        complement(targets, n, "project_onto");
    if (rest.empty()) {
        throw DimensionError("project_onto: no qubits left after projection");
    }
    const auto tgt_off = scatter_offsets(targets, n);
    const auto rest_off = scatter_offsets(rest, n);

    // Sparse view of the ket: projectors used here have few nonzero entries.
    struct Term {
        std::size_t row;
        std::size_t col;
        cplx coeff;
    };
    std::vector<Term> terms;
    for (std::size_t s = 0; s < psi.dim(); ++s) {
        for (std::size_t t = 0; t < psi.dim(); ++t) {
            const cplx coeff = std::conj(psi[s]) * psi[t];
            if (coeff != cplx{0.0, 0.0}) {
                terms.push_back({tgt_off[s], tgt_off[t], coeff});
            }
        }
    }

    const std::size_t d = rest_off.size();
    ComplexMatrix out(d, d);
    const ComplexMatrix &m = rho.matrix();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            cplx acc{0.0, 0.0};
            for (const Term &term : terms) {
                const cplx v = m(rest_off[r] + term.row, rest_off[c] + term.col);
                if (v != cplx{0.0, 0.0}) {
                    acc += term.coeff * v;
                }
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(out), false);
}

auto hermitian_eigenvalues(const DensityMatrix &rho) -> std::vector<double> {
    if (!rho.is_hermitian(1e-12)) {
        throw std::domain_error("hermitian_eigenvalues: input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        to_eigen(rho.matrix()), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd &ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    for (double &v : out) {
        if (v < 0.0 && v >= -1e-10) {
            v = 0.0;
        }
    }
    return out;
}

} // namespace bqt
