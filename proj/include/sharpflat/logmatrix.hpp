#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sharpflat/intpoly.hpp"
#include "sharpflat/quad.hpp"
#include "sharpflat/series.hpp"

namespace sharpflat {

using QSeries = Series1<QuadElem>;
using QCyclo = Cyclo<QuadElem>;

/// 2x2 matrix of constants in E, row-major.
struct QuadMatrix {
    std::array<QuadElem, 4> e;

    const QuadElem& operator()(int row, int col) const { return e[static_cast<std::size_t>(2 * row + col)]; }
    QuadElem& operator()(int row, int col) { return e[static_cast<std::size_t>(2 * row + col)]; }

    QuadMatrix operator*(const QuadMatrix& o) const;
    QuadElem det() const { return e[0] * e[3] - e[1] * e[2]; }
    /// Adjugate over determinant.
    QuadMatrix inverse() const;
    static QuadMatrix identity(const FormParams& params);
};

/**
 * 2x2 matrix of truncated series over E in one variable. `level` is the n of
 * M_p^(n) (or of C_n) when the matrix came from the logarithmic-matrix
 * construction; such a matrix is a polynomial of degree < p^level, so it is
 * complete (untruncated) once its degree reaches p^level.
 */
class MatrixSeries {
public:
    MatrixSeries(const FormParams& params, Var var, std::optional<long> level, std::array<QSeries, 4> entries);

    static MatrixSeries identity(const FormParams& params, Var var, std::size_t d);
    /// Integer polynomial matrix embedded into E and truncated to degree d.
    static MatrixSeries from_int(const FormParams& params, Var var, std::size_t d, const IntMatrix& m,
                                 std::optional<long> level = std::nullopt);

    const FormParams& params() const { return params_; }
    Var var() const { return var_; }
    std::optional<long> level() const { return level_; }
    std::size_t degree() const { return entries_[0].degree(); }
    bool is_complete() const;

    const QSeries& operator()(int row, int col) const { return entries_[static_cast<std::size_t>(2 * row + col)]; }
    const std::array<QSeries, 4>& entries() const { return entries_; }
    MatrixSeries with_entry(int row, int col, QSeries s) const;
    /// Same matrix viewed in the other variable (M_p -> M_pbar).
    MatrixSeries in_variable(Var var) const;

    MatrixSeries operator*(const MatrixSeries& o) const;
    MatrixSeries operator*(const QuadMatrix& c) const;
    MatrixSeries operator-(const MatrixSeries& o) const;
    QSeries det() const;

private:
    FormParams params_;
    Var var_;
    std::optional<long> level_;
    std::array<QSeries, 4> entries_;
};

/// C_k = [[a_p, 1], [-eps Phi_{p^k}(1+X), 0]] exactly.
IntMatrix companion_int(const FormParams& params, long k);
/// C_k embedded into E and truncated to degree d.
MatrixSeries companion_matrix(const FormParams& params, long k, std::size_t d, Var var = Var::X);
/// C = [[a_p, 1], [-eps p, 0]].
QuadMatrix constant_companion(const FormParams& params);
/// A = [[-1, -1], [beta, alpha]].
QuadMatrix root_matrix(const FormParams& params);
/// C^{-k} A = [[-alpha^{-k}, -beta^{-k}], [beta alpha^{-k}, alpha beta^{-k}]].
QuadMatrix diagonalized_tail(const FormParams& params, long k);

/// C_1 ... C_n over Z, optionally truncated to degree < limit.
IntMatrix companion_product(const FormParams& params, long n, std::optional<std::size_t> limit = std::nullopt);

/// M_p^(n) = C_1 ... C_n C^{-n-2} A truncated to degree d.
MatrixSeries logmatrix_level(const FormParams& params, long n, std::size_t d, Var var = Var::X);

/// Least n >= 1 with p^n >= d: the finite level representing the limit matrix to degree d.
long limit_level(long p, std::size_t d);

/// p^n as a size.
std::size_t prime_power_size(long p, long n);

struct StabilizationReport {
    long n = 0;
    bool pass = false;
    /// Minimum absolute precision over all coefficients of the reduced difference.
    Valuation min_precision = Valuation::infinity();
    std::optional<int> failing_row;
    std::optional<int> failing_col;
    std::optional<std::size_t> failing_index;
    std::string message;
};

/// Reduce lower - upper modulo (1+X)^{p^n} - 1 and require it to vanish.
StabilizationReport check_stabilization(const MatrixSeries& lower, const MatrixSeries& upper, long n);
/// M_p^(n+1) == M_p^(n) mod (1+X)^{p^n} - 1, computed at degree max(d, p^(n+1)).
StabilizationReport stabilization_check(const FormParams& params, long n, std::size_t d);

struct DetReport {
    long n = 0;
    bool pass = false;
    /// det(C_1...C_n) == eps^n ((1+X)^{p^n} - 1)/X over Z, truncated to the working degree.
    bool integer_identity = false;
    /// Every coefficient of det M - closed form is zero at tracked precision.
    bool padic_identity = false;
    Valuation residual_precision = Valuation::infinity();
    std::optional<std::size_t> first_mismatch;
    /// v(det M^(n)_j - (beta-alpha)/(alpha beta)^2 * (-1)^j/(j+1)); infinity when zero at precision.
    std::vector<Valuation> limit_distance;
    std::string message;
};

/// (beta - alpha) / (eps^2 p^(n+2)).
QuadElem det_constant(const FormParams& params, long n);
/// (beta - alpha) / (alpha beta)^2.
QuadElem limit_det_constant(const FormParams& params);

/// Checks the finite-level determinant identity for an arbitrary matrix claimed to be M_p^(n).
DetReport check_det(const MatrixSeries& m, long n);
DetReport det_check(const FormParams& params, long n, std::size_t d);

/// Constants recovered at one character level.
struct Rank1Report {
    long level = 0;
    long exponent = 0;
    bool pass = false;
    /// Absolute precision of the two residuals alpha^n m_{i,1} - beta^n m_{i,2}.
    Valuation residual_precision = Valuation::infinity();
    /// Largest residual valuation when the check fails.
    std::optional<Valuation> failing_valuation;
    std::optional<QCyclo> a_omega;
    std::optional<QCyclo> b_omega;
    std::string message;
};

/// Evaluates M in R_m (m >= 1, exponent n = m + 1) and checks its rank-one shape.
Rank1Report rank1_at_level(const MatrixSeries& m, long level);

struct PollackBlocks {
    IntPoly plus;   ///< (-eps)^m prod_{k<=m} Phi_{p^{2k}}(1+X)
    IntPoly minus;  ///< (-eps)^m prod_{k<=m} Phi_{p^{2k-1}}(1+X)
    IntMatrix product;
    bool pass = false;
    std::string message;
    QSeries plus_series;
    QSeries minus_series;
};

/// Diagonal blocks of C_1 ... C_{2m} when a_p = 0; throws ParameterError otherwise.
PollackBlocks pollack_blocks(const FormParams& params, long pairs, std::size_t d);

} // namespace sharpflat
