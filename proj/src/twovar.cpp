#include "sharpflat/twovar.hpp"

#include <algorithm>

#include "sharpflat/errors.hpp"

namespace sharpflat {

const char* LQuadruple::name(std::size_t slot)
{
    static const char* names[] = {"L_aa", "L_ba", "L_ab", "L_bb"};
    return names[slot];
}

const char* LQuadruple::bounded_name(std::size_t slot)
{
    static const char* names[] = {"L_##", "L_b#", "L_#b", "L_bb"};
    return names[slot];
}

LQuadruple LQuadruple::zero(const FormParams& params, std::size_t dx, std::size_t dy)
{
    auto z = QSeries2::zero(params, dx, dy);
    return {params, {z, z, z, z}};
}

LQuadruple LQuadruple::truncated(std::size_t dx, std::size_t dy) const
{
    LQuadruple r = *this;
    for (auto& s : r.l) s = s.truncated(dx, dy);
    return r;
}

bool LQuadruple::equals_within_precision(const LQuadruple& o) const
{
    for (std::size_t k = 0; k < 4; ++k)
        if (!l[k].equals_within_precision(o.l[k])) return false;
    return true;
}

Valuation LQuadruple::min_absolute_precision() const
{
    Valuation best = Valuation::infinity();
    for (const auto& s : l) best = std::min(best, s.min_absolute_precision());
    return best;
}

AxisFactors factor_axis(const QSeries2& a, const QSeries2& b, const MatrixSeries& m)
{
    if (!(a.context() == m.params()) || !(b.context() == m.params())) throw ParameterError("factor_axis: parameter mismatch");
    const Var axis = m.var();
    if (a.degree(axis) != m.degree() || b.degree(axis) != m.degree() || a.degree(other_var(axis)) != b.degree(other_var(axis)))
        throw ShapeError("factor_axis: degree mismatch");
    QSeries det = m.det();
    QSeries2 num_sharp = mul_axis(a, m(1, 1)) - mul_axis(b, m(1, 0));
    QSeries2 num_flat = mul_axis(b, m(0, 0)) - mul_axis(a, m(0, 1));
    auto qs = divide_axis(num_sharp, det);
    auto qf = divide_axis(num_flat, det);
    return {std::move(qs.quotient), std::move(qf.quotient), std::max(qs.max_loss_halves, qf.max_loss_halves)};
}

std::pair<QSeries2, QSeries2> combine_axis(const QSeries2& sharp, const QSeries2& flat, const MatrixSeries& m)
{
    return {mul_axis(sharp, m(0, 0)) + mul_axis(flat, m(1, 0)), mul_axis(sharp, m(0, 1)) + mul_axis(flat, m(1, 1))};
}

XFactors factor_x(const LQuadruple& l, const MatrixSeries& mx)
{
    if (mx.var() != Var::X) throw ShapeError("factor_x: matrix must be in X");
    auto alpha = factor_axis(l.l[LQuadruple::slot(0, 0)], l.l[LQuadruple::slot(1, 0)], mx);
    auto beta = factor_axis(l.l[LQuadruple::slot(0, 1)], l.l[LQuadruple::slot(1, 1)], mx);
    return {std::move(alpha.sharp), std::move(alpha.flat), std::move(beta.sharp), std::move(beta.flat),
            std::max(alpha.loss_halves, beta.loss_halves)};
}

FullFactors factor_y(const XFactors& xf, const MatrixSeries& my)
{
    if (my.var() != Var::Y) throw ShapeError("factor_y: matrix must be in Y");
    auto sharp = factor_axis(xf.sharp_alpha, xf.sharp_beta, my);
    auto flat = factor_axis(xf.flat_alpha, xf.flat_beta, my);
    FullFactors out;
    out.parts.params = my.params();
    out.parts.l[LQuadruple::slot(0, 0)] = std::move(sharp.sharp);
    out.parts.l[LQuadruple::slot(0, 1)] = std::move(sharp.flat);
    out.parts.l[LQuadruple::slot(1, 0)] = std::move(flat.sharp);
    out.parts.l[LQuadruple::slot(1, 1)] = std::move(flat.flat);
    out.loss_x_halves = xf.loss_halves;
    out.loss_y_halves = std::max(sharp.loss_halves, flat.loss_halves);
    return out;
}

FullFactors factor_full(const LQuadruple& l, const MatrixSeries& mx, const MatrixSeries& my)
{
    if (mx.var() == my.var()) throw ShapeError("factor_full: matrices must use distinct variables");
    return factor_y(factor_x(l, mx), my);
}

FullFactors factor_full_y_first(const LQuadruple& l, const MatrixSeries& mx, const MatrixSeries& my)
{
    if (mx.var() != Var::X || my.var() != Var::Y) throw ShapeError("factor_full_y_first: expects M in X and M in Y");
    // (L_{a,alpha}, L_{a,beta}) -> (L_{a,#}, L_{a,b}) for each first index a.
    auto first_alpha = factor_axis(l.l[LQuadruple::slot(0, 0)], l.l[LQuadruple::slot(0, 1)], my);
    auto first_beta = factor_axis(l.l[LQuadruple::slot(1, 0)], l.l[LQuadruple::slot(1, 1)], my);
    // (L_{alpha,s}, L_{beta,s}) -> (L_{#,s}, L_{b,s}) for s in {#, b}.
    auto second_sharp = factor_axis(first_alpha.sharp, first_beta.sharp, mx);
    auto second_flat = factor_axis(first_alpha.flat, first_beta.flat, mx);
    FullFactors out;
    out.parts.params = mx.params();
    out.parts.l[LQuadruple::slot(0, 0)] = std::move(second_sharp.sharp);
    out.parts.l[LQuadruple::slot(1, 0)] = std::move(second_sharp.flat);
    out.parts.l[LQuadruple::slot(0, 1)] = std::move(second_flat.sharp);
    out.parts.l[LQuadruple::slot(1, 1)] = std::move(second_flat.flat);
    out.loss_y_halves = std::max(first_alpha.loss_halves, first_beta.loss_halves);
    out.loss_x_halves = std::max(second_sharp.loss_halves, second_flat.loss_halves);
    return out;
}

KroneckerMatrix::KroneckerMatrix(MatrixSeries mx, MatrixSeries my) : mx_(std::move(mx)), my_(std::move(my))
{
    if (mx_.var() == my_.var()) throw ShapeError("kronecker: matrices must use distinct variables");
    if (mx_.var() != Var::X) std::swap(mx_, my_);
    if (!(mx_.params() == my_.params())) throw ParameterError("kronecker: parameter mismatch");
}

const QSeries& KroneckerMatrix::x_factor(std::size_t row, std::size_t col) const
{
    return mx_(static_cast<int>(row % 2), static_cast<int>(col % 2));
}

const QSeries& KroneckerMatrix::y_factor(std::size_t row, std::size_t col) const
{
    return my_(static_cast<int>(row / 2), static_cast<int>(col / 2));
}

QSeries2 KroneckerMatrix::entry(std::size_t row, std::size_t col) const
{
    return QSeries2::outer(x_factor(row, col), y_factor(row, col));
}

KroneckerMatrix kronecker(const MatrixSeries& mx, const MatrixSeries& my) { return KroneckerMatrix(mx, my); }

namespace {

template <class Mul>
LQuadruple recombine_with(const LQuadruple& q, Mul&& mul)
{
    LQuadruple out;
    out.params = q.params;
    for (std::size_t col = 0; col < 4; ++col) {
        QSeries2 acc = mul(q.l[0], 0, col);
        for (std::size_t row = 1; row < 4; ++row) acc = acc + mul(q.l[row], row, col);
        out.l[col] = std::move(acc);
    }
    return out;
}

} // namespace

LQuadruple recombine(const LQuadruple& q, const KroneckerMatrix& k)
{
    return recombine_with(q, [&](const QSeries2& s, std::size_t row, std::size_t col) {
        return mul_axis(mul_axis(s, k.x_factor(row, col)), k.y_factor(row, col));
    });
}

LQuadruple recombine_materialized(const LQuadruple& q, const KroneckerMatrix& k)
{
    return recombine_with(q, [&](const QSeries2& s, std::size_t row, std::size_t col) { return mul_trunc(s, k.entry(row, col)); });
}

LQuadruple recombine_full(const LQuadruple& q, const KroneckerMatrix& k)
{
    return recombine_with(q, [&](const QSeries2& s, std::size_t row, std::size_t col) {
        return mul_axis_full(mul_axis_full(s, k.x_factor(row, col)), k.y_factor(row, col));
    });
}

namespace {

void check_levels(const LQuadruple& l, long mx, long my, std::size_t dx, std::size_t dy, const char* what)
{
    if (mx < 1 || my < 1) throw ParameterError(std::string(what) + ": both levels must be >= 1");
    if (static_cast<std::size_t>(cyclotomic_degree(l.params.p, mx)) > dx ||
        static_cast<std::size_t>(cyclotomic_degree(l.params.p, my)) > dy)
        throw ShapeError(std::string(what) + ": series degree below deg Phi_{p^m}");
}

/// Index of the value that disagrees with the others, or -1.
int odd_one_out(const std::array<BiCyclo, 4>& v, std::size_t count)
{
    std::vector<int> agree(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (i != j && v[i].equals_within_precision(v[j])) ++agree[i];
    int best = *std::max_element(agree.begin(), agree.end());
    for (std::size_t i = 0; i < count; ++i)
        if (agree[i] < best) return static_cast<int>(i);
    return 0;
}

} // namespace

std::vector<CharValueReport> verify_interpolation4(const LQuadruple& l, const std::vector<std::pair<long, long>>& levels)
{
    const FormParams& params = l.params;
    std::vector<CharValueReport> out;
    for (auto [mx, my] : levels) {
        check_levels(l, mx, my, l.degree_x(), l.degree_y(), "verify_interpolation4");
        CharValueReport rep;
        rep.level_x = mx;
        rep.level_y = my;
        const long np = mx + 1, nq = my + 1;
        const std::array<QuadElem, 2> first = {root_power(params, Root::alpha, np), root_power(params, Root::beta, np)};
        const std::array<QuadElem, 2> second = {root_power(params, Root::alpha, nq), root_power(params, Root::beta, nq)};
        std::array<BiCyclo, 4> scaled;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                std::size_t s = LQuadruple::slot(a, b);
                scaled[s] = scale(evaluate2(l.l[s], mx, my), first[static_cast<std::size_t>(a)] * second[static_cast<std::size_t>(b)]);
            }
        rep.pass = true;
        for (std::size_t s = 1; s < 4; ++s) {
            BiCyclo residual = scaled[s] - scaled[0];
            rep.residual_precision = std::min(rep.residual_precision, residual.absolute_precision());
            if (!residual.is_zero()) {
                rep.pass = false;
                Valuation v = residual.valuation();
                rep.failing_valuation = rep.failing_valuation ? std::min(*rep.failing_valuation, v) : v;
            }
        }
        if (!rep.pass) {
            int odd = odd_one_out(scaled, 4);
            rep.message = std::string("levels (") + std::to_string(mx) + "," + std::to_string(my) + "): " +
                          LQuadruple::name(static_cast<std::size_t>(odd)) + " deviates from the common value";
        }
        rep.c_omega2 = scaled[0];
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CharValueReport> derivative_relation(const LQuadruple& l, const std::vector<std::pair<long, long>>& levels)
{
    const FormParams& params = l.params;
    std::array<QSeries2, 4> dl;
    for (std::size_t s = 0; s < 4; ++s) dl[s] = derivative(l.l[s], Var::X);
    std::vector<CharValueReport> out;
    for (auto [mx, my] : levels) {
        check_levels(l, mx, my, l.degree_x() - 1, l.degree_y(), "derivative_relation");
        CharValueReport rep;
        rep.level_x = mx;
        rep.level_y = my;
        const long nq = my + 1;
        QuadElem an = root_power(params, Root::alpha, nq);
        QuadElem bn = root_power(params, Root::beta, nq);
        std::array<BiCyclo, 4> v;
        for (std::size_t s = 0; s < 4; ++s) v[s] = evaluate2(dl[s], mx, my);
        BiCyclo d_omega = scale(v[LQuadruple::slot(0, 0)], an);
        BiCyclo e_omega = scale(v[LQuadruple::slot(1, 0)], an);
        BiCyclo r1 = scale(v[LQuadruple::slot(0, 1)], bn) - d_omega;
        BiCyclo r2 = scale(v[LQuadruple::slot(1, 1)], bn) - e_omega;
        rep.residual_precision = std::min(r1.absolute_precision(), r2.absolute_precision());
        rep.pass = r1.is_zero() && r2.is_zero();
        if (!rep.pass) {
            Valuation worst = Valuation::infinity();
            std::string which;
            if (!r1.is_zero()) {
                worst = std::min(worst, r1.valuation());
                which = "d_X L_ab vs d_X L_aa";
            }
            if (!r2.is_zero()) {
                worst = std::min(worst, r2.valuation());
                which += which.empty() ? "d_X L_bb vs d_X L_ba" : ", d_X L_bb vs d_X L_ba";
            }
            rep.failing_valuation = worst;
            rep.message = std::string("levels (") + std::to_string(mx) + "," + std::to_string(my) + "): " + which +
                          " residual valuation " + worst.str();
        }
        rep.d_omega = std::move(d_omega);
        rep.e_omega = std::move(e_omega);
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CharValueReport> vanish_check(const LQuadruple& l, const MatrixSeries& mx,
                                          const std::vector<std::pair<long, long>>& levels)
{
    if (mx.var() != Var::X) throw ShapeError("vanish_check: matrix must be in X");
    std::vector<CharValueReport> out;
    for (auto [lx, ly] : levels) {
        check_levels(l, lx, ly, l.degree_x(), l.degree_y(), "vanish_check");
        CharValueReport rep;
        rep.level_x = lx;
        rep.level_y = ly;
        QCyclo m11 = reduce_mod_cyclo(mx(0, 0), lx);
        QCyclo m12 = reduce_mod_cyclo(mx(0, 1), lx);
        QCyclo m21 = reduce_mod_cyclo(mx(1, 0), lx);
        QCyclo m22 = reduce_mod_cyclo(mx(1, 1), lx);
        rep.pass = true;
        Valuation worst = Valuation::infinity();
        for (int star = 0; star < 2; ++star) {
            BiCyclo a = evaluate2(l.l[LQuadruple::slot(0, star)], lx, ly);
            BiCyclo b = evaluate2(l.l[LQuadruple::slot(1, star)], lx, ly);
            BiCyclo sharp = scale(a, m22) - scale(b, m21);
            BiCyclo flat = scale(b, m11) - scale(a, m12);
            for (const BiCyclo* r : {&sharp, &flat}) {
                rep.residual_precision = std::min(rep.residual_precision, r->absolute_precision());
                if (!r->is_zero()) {
                    rep.pass = false;
                    worst = std::min(worst, r->valuation());
                }
            }
        }
        if (!rep.pass) {
            rep.failing_valuation = worst;
            rep.message = std::string("levels (") + std::to_string(lx) + "," + std::to_string(ly) +
                          "): numerator does not vanish, valuation " + worst.str();
        }
        out.push_back(std::move(rep));
    }
    return out;
}

LQuadruple random_bounded_quadruple(const FormParams& params, std::size_t dx, std::size_t dy, std::uint64_t seed)
{
    DigitStream stream(seed);
    LQuadruple q;
    q.params = params;
    for (auto& s : q.l) s = random_bounded2(params, dx, dy, stream);
    return q;
}

} // namespace sharpflat
