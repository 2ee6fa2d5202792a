#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sharpflat/factor.hpp"
#include "sharpflat/logmatrix.hpp"
#include "sharpflat/series.hpp"

namespace sharpflat {

using QSeries2 = Series2<QuadElem>;
using BiCyclo = Cyclo<QCyclo>;

/**
 * Four two-variable series in the fixed order (L_aa, L_ba, L_ab, L_bb): the
 * first index is the root on the p side (variable X), the second the root on
 * the pbar side (variable Y). Slot = first + 2 * second with alpha = 0,
 * beta = 1. The bounded quadruple (L_##, L_b#, L_#b, L_bb) uses the same
 * slot rule with sharp = 0, flat = 1.
 */
struct LQuadruple {
    FormParams params;
    std::array<QSeries2, 4> l;

    static constexpr std::size_t slot(int first, int second) { return static_cast<std::size_t>(first + 2 * second); }
    static const char* name(std::size_t slot);
    static const char* bounded_name(std::size_t slot);

    static LQuadruple zero(const FormParams& params, std::size_t dx, std::size_t dy);

    std::size_t degree_x() const { return l[0].degree_x(); }
    std::size_t degree_y() const { return l[0].degree_y(); }
    LQuadruple truncated(std::size_t dx, std::size_t dy) const;
    bool equals_within_precision(const LQuadruple& o) const;
    Valuation min_absolute_precision() const;
};

/// Output of factoring M_p out of the X-direction.
struct XFactors {
    QSeries2 sharp_alpha;
    QSeries2 flat_alpha;
    QSeries2 sharp_beta;
    QSeries2 flat_beta;
    long loss_halves = 0;
};

struct FullFactors {
    LQuadruple parts;
    long loss_x_halves = 0;
    long loss_y_halves = 0;
};

/// For a pair (A, B) = (S, F) M along M.var(): S = (m22 A - m21 B)/det, F = (-m12 A + m11 B)/det, fiber-wise.
struct AxisFactors {
    QSeries2 sharp;
    QSeries2 flat;
    long loss_halves = 0;
};
AxisFactors factor_axis(const QSeries2& a, const QSeries2& b, const MatrixSeries& m);
/// (A, B) = (S, F) M along M.var(), truncated.
std::pair<QSeries2, QSeries2> combine_axis(const QSeries2& sharp, const QSeries2& flat, const MatrixSeries& m);

XFactors factor_x(const LQuadruple& l, const MatrixSeries& mx);
/// Factors M_pbar out of the Y-direction; returns (L_##, L_b#, L_#b, L_bb).
FullFactors factor_y(const XFactors& xf, const MatrixSeries& my);
FullFactors factor_full(const LQuadruple& l, const MatrixSeries& mx, const MatrixSeries& my);
/// Same quadruple computed by factoring Y first, then X.
FullFactors factor_full_y_first(const LQuadruple& l, const MatrixSeries& mx, const MatrixSeries& my);

/**
 * M_p (x) M_pbar with composite indices ordered (1,1), (2,1), (1,2), (2,2):
 * entry ((i,j),(k,l)) = m^p_{i,k}(X) m^pbar_{j,l}(Y). Entries are kept in
 * factored form; entry() materializes a two-variable series.
 */
class KroneckerMatrix {
public:
    KroneckerMatrix(MatrixSeries mx, MatrixSeries my);

    const QSeries& x_factor(std::size_t row, std::size_t col) const;
    const QSeries& y_factor(std::size_t row, std::size_t col) const;
    QSeries2 entry(std::size_t row, std::size_t col) const;
    const MatrixSeries& mx() const { return mx_; }
    const MatrixSeries& my() const { return my_; }

private:
    MatrixSeries mx_;
    MatrixSeries my_;
};

KroneckerMatrix kronecker(const MatrixSeries& mx, const MatrixSeries& my);

/// Row vector q times the Kronecker matrix, truncated to the degrees of q.
LQuadruple recombine(const LQuadruple& q, const KroneckerMatrix& k);
/// Same product using materialized entries and full two-variable multiplication.
LQuadruple recombine_materialized(const LQuadruple& q, const KroneckerMatrix& k);
/// Exact polynomial recombination (degrees grow by deg M - 1 in each variable).
LQuadruple recombine_full(const LQuadruple& q, const KroneckerMatrix& k);

/// alpha^{n_p} alpha^{n_pbar} L_aa(w) = beta^{n_p} alpha^{n_pbar} L_ba(w) = ... ; returns the common C_w.
std::vector<CharValueReport> verify_interpolation4(const LQuadruple& l, const std::vector<std::pair<long, long>>& levels);

/// beta^{n_pbar} d_X L_ab(w) = alpha^{n_pbar} d_X L_aa(w) and beta^{n_pbar} d_X L_bb(w) = alpha^{n_pbar} d_X L_ba(w).
std::vector<CharValueReport> derivative_relation(const LQuadruple& l, const std::vector<std::pair<long, long>>& levels);

/// The four X-numerators m22 L_a* - m21 L_b*, -m12 L_a* + m11 L_b* vanish at every level pair.
std::vector<CharValueReport> vanish_check(const LQuadruple& l, const MatrixSeries& mx,
                                          const std::vector<std::pair<long, long>>& levels);

/// Random bounded quadruple over the integers of E.
LQuadruple random_bounded_quadruple(const FormParams& params, std::size_t dx, std::size_t dy, std::uint64_t seed);

} // namespace sharpflat
