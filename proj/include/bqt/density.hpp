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
/**
 * @file density.hpp
 * Dense complex matrices, kets and density matrices for small multi-qubit
 * systems, plus the tensor-product / partial-trace / embedding toolkit.
 *
 * Qubit ordering is big-endian: qubit 0 is the leftmost tensor factor, so in
 * an n-qubit basis index b the bit of qubit q sits at position (n - 1 - q).
 */
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace bqt {

using cplx = std::complex<double>;
using QubitList = std::span<const std::size_t>;

/// Raised on shape or index errors in the linear-algebra layer.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief Row-major dense complex matrix.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    [[nodiscard]] static auto identity(std::size_t n) -> ComplexMatrix;
    [[nodiscard]] static auto diagonal(std::initializer_list<cplx> diag)
        -> ComplexMatrix;

    [[nodiscard]] auto rows() const noexcept -> std::size_t { return rows_; }
    [[nodiscard]] auto cols() const noexcept -> std::size_t { return cols_; }
    [[nodiscard]] auto is_square() const noexcept -> bool {
        return rows_ == cols_;
    }

    [[nodiscard]] auto operator()(std::size_t r, std::size_t c) const
        -> const cplx & {
        return data_[r * cols_ + c];
    }
    [[nodiscard]] auto operator()(std::size_t r, std::size_t c) -> cplx & {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] auto data() const noexcept -> std::span<const cplx> {
        return data_;
    }
    [[nodiscard]] auto data() noexcept -> std::span<cplx> { return data_; }

    [[nodiscard]] auto adjoint() const -> ComplexMatrix;
    [[nodiscard]] auto trace() const -> cplx;

    /// Largest entrywise modulus of (this - other).
    [[nodiscard]] auto max_abs_diff(const ComplexMatrix &other) const -> double;

    auto operator+=(const ComplexMatrix &rhs) -> ComplexMatrix &;
    auto operator-=(const ComplexMatrix &rhs) -> ComplexMatrix &;
    auto operator*=(cplx s) -> ComplexMatrix &;

    friend auto operator==(const ComplexMatrix &, const ComplexMatrix &)
        -> bool = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

[[nodiscard]] auto operator*(const ComplexMatrix &a, const ComplexMatrix &b)
    -> ComplexMatrix;
[[nodiscard]] auto operator+(ComplexMatrix a, const ComplexMatrix &b)
    -> ComplexMatrix;
[[nodiscard]] auto operator-(ComplexMatrix a, const ComplexMatrix &b)
    -> ComplexMatrix;
[[nodiscard]] auto operator*(cplx s, ComplexMatrix a) -> ComplexMatrix;

/// a K a^dagger
[[nodiscard]] auto sandwich(const ComplexMatrix &k, const ComplexMatrix &rho)
    -> ComplexMatrix;

/**
 * @brief Pure state vector.
 */
class Ket {
  public:
    Ket() = default;
    explicit Ket(std::vector<cplx> amplitudes);

    [[nodiscard]] static auto basis(std::size_t dim, std::size_t index) -> Ket;

    [[nodiscard]] auto dim() const noexcept -> std::size_t {
        return amps_.size();
    }
    [[nodiscard]] auto operator[](std::size_t k) const -> const cplx & {
        return amps_[k];
    }
    [[nodiscard]] auto amplitudes() const noexcept -> std::span<const cplx> {
        return amps_;
    }
    [[nodiscard]] auto norm_squared() const -> double;
    [[nodiscard]] auto is_normalized(double tol = 1e-12) const -> bool;

    /// |psi><psi|
    [[nodiscard]] auto projector() const -> ComplexMatrix;

  private:
    std::vector<cplx> amps_;
};

[[nodiscard]] auto operator*(const ComplexMatrix &op, const Ket &psi) -> Ket;

/**
 * @brief Density operator on n qubits.
 *
 * Hermiticity and positivity are not enforced on construction; call
 * check_valid() (or the individual predicates) where an invariant matters.
 */
class DensityMatrix {
  public:
    DensityMatrix() = default;
    /// Throws DimensionError unless the matrix is square with 2^n rows.
    explicit DensityMatrix(ComplexMatrix matrix, bool normalized = true);

    [[nodiscard]] static auto from_ket(const Ket &psi) -> DensityMatrix;

    [[nodiscard]] auto dim() const noexcept -> std::size_t {
        return matrix_.rows();
    }
    [[nodiscard]] auto num_qubits() const noexcept -> std::size_t {
        return n_qubits_;
    }
    [[nodiscard]] auto normalized() const noexcept -> bool {
        return normalized_;
    }
    [[nodiscard]] auto matrix() const noexcept -> const ComplexMatrix & {
        return matrix_;
    }
    [[nodiscard]] auto operator()(std::size_t r, std::size_t c) const
        -> const cplx & {
        return matrix_(r, c);
    }
    [[nodiscard]] auto trace() const -> cplx { return matrix_.trace(); }

    [[nodiscard]] auto is_hermitian(double tol = 1e-12) const -> bool;
    [[nodiscard]] auto is_unit_trace(double tol = 1e-12) const -> bool;
    [[nodiscard]] auto is_psd(double tol = 1e-10) const -> bool;

    /// Throws std::domain_error naming the first violated invariant.
    void check_valid() const;

    /// Copy scaled to unit trace; throws std::domain_error if the trace is
    /// below @p min_trace.
    [[nodiscard]] auto normalized_copy(double min_trace = 1e-14) const
        -> DensityMatrix;

  private:
    ComplexMatrix matrix_;
    std::size_t n_qubits_ = 0;
    bool normalized_ = true;
};

/// Number of qubits for a 2^n dimension; throws DimensionError otherwise.
[[nodiscard]] auto qubits_for_dim(std::size_t dim) -> std::size_t;

[[nodiscard]] auto kron(const ComplexMatrix &a, const ComplexMatrix &b)
    -> ComplexMatrix;
[[nodiscard]] auto kron(const DensityMatrix &a, const DensityMatrix &b)
    -> DensityMatrix;
[[nodiscard]] auto kron(const Ket &a, const Ket &b) -> Ket;

/**
 * @brief Reduced state on @p keep (in the listed order), tracing out every
 * other qubit.
 *
 * Throws DimensionError on out-of-range or duplicate indices.
 */
[[nodiscard]] auto partial_trace(const DensityMatrix &rho, QubitList keep,
                                 std::size_t n_qubits) -> DensityMatrix;

/**
 * @brief The 2^n x 2^n operator that acts as @p op on @p targets (in listed
 * order) and as the identity elsewhere.
 */
[[nodiscard]] auto embed_op(const ComplexMatrix &op, QubitList targets,
                            std::size_t n_qubits) -> ComplexMatrix;

/**
 * @brief Applies @p op on @p targets from the left and its adjoint from the
 * right, without materialising the embedded operator.
 */
[[nodiscard]] auto apply_local(const ComplexMatrix &op, QubitList targets,
                               const DensityMatrix &rho) -> DensityMatrix;

/**
 * @brief Contracts @p targets against the ket: returns <psi| rho |psi> as an
 * unnormalised operator on the remaining qubits (ascending order).
 *
 * For a rank-one projector P = |psi><psi| on @p targets this equals the
 * partial trace over @p targets of (P x I) rho (P x I).
 */
[[nodiscard]] auto project_onto(const DensityMatrix &rho, const Ket &psi,
                                QubitList targets) -> DensityMatrix;

/**
 * @brief Real eigenvalues of a Hermitian matrix in descending order.
 *
 * Values in [-1e-10, 0) are clamped to zero. Throws std::domain_error if the
 * input is not Hermitian within 1e-12.
 */
[[nodiscard]] auto hermitian_eigenvalues(const DensityMatrix &rho)
    -> std::vector<double>;

} // namespace bqt
