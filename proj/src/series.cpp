#include "sharpflat/series.hpp"

namespace sharpflat {

Series1<Padic> log1p_over_x(const PadicContext& ctx, std::size_t d)
{
    std::vector<Padic> c;
    c.reserve(d);
    for (std::size_t n = 0; n < d; ++n) {
        mpq_class q(n % 2 == 0 ? 1 : -1, static_cast<unsigned long>(n + 1));
        c.push_back(Padic::from_rational(ctx, q));
    }
    return Series1<Padic>(ctx, Var::X, std::move(c));
}

Series1<QuadElem> lift_to_quad(const Series1<Padic>& s, const FormParams& params)
{
    if (s.context().p != params.p) throw ParameterError("lift_to_quad: prime mismatch");
    std::vector<QuadElem> c;
    c.reserve(s.degree());
    for (const auto& x : s.coeffs()) c.push_back(QuadElem::from_padic(params, x));
    return Series1<QuadElem>(params, s.var(), std::move(c));
}

} // namespace sharpflat
