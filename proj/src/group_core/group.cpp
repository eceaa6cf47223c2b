#include "hlab/group.hpp"

#include <cmath>

namespace hlab {

void check_conforms(const Model& model, const GroupElement& g)
{
    if (g.w.size() != model.n() || g.c.size() != model.d()) throw DimensionError("group element does not match model dimensions");
}

void check_conforms(const Model& model, const AlgebraElement& h)
{
    if (h.A.size() != model.n() || h.a.size() != model.d()) throw DimensionError("algebra element does not match model dimensions");
}

Vec evaluate_form(const Model& model, const Vec& w1, const Vec& w2) { return model.form(w1, w2); }

GroupElement multiply(const Model& model, const GroupElement& g1, const GroupElement& g2)
{
    check_conforms(model, g1);
    check_conforms(model, g2);
    // Same operation order as g1 + g2 + (1/2)[g1, g2], so both agree bitwise.
    Vec c = g1.c + g2.c;
    c += 0.5 * model.form(g1.w, g2.w);
    return {g1.w + g2.w, std::move(c)};
}

GroupElement inverse(const GroupElement& g) { return {-g.w, -g.c}; }

AlgebraElement bracket(const Model& model, const AlgebraElement& h1, const AlgebraElement& h2)
{
    check_conforms(model, h1);
    check_conforms(model, h2);
    return {Vec::Zero(model.n()), model.form(h1.A, h2.A)};
}

GroupElement exp_map(const AlgebraElement& h) { return {h.A, h.a}; }

AlgebraElement log_map(const GroupElement& g) { return {g.w, g.c}; }

AlgebraElement left_translate(const Model& model, const GroupElement& g, const AlgebraElement& h)
{
    check_conforms(model, g);
    check_conforms(model, h);
    return {h.A, h.a + 0.5 * model.form(g.w, h.A)};
}

GroupElement dilate(double lambda, const GroupElement& g)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
    return {lambda * g.w, (lambda * lambda) * g.c};
}

AlgebraElement dilate(double lambda, const AlgebraElement& h)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
    return {lambda * h.A, (lambda * lambda) * h.a};
}

GroupElement add(const GroupElement& g1, const GroupElement& g2) { return {g1.w + g2.w, g1.c + g2.c}; }

GroupElement subtract(const GroupElement& g1, const GroupElement& g2) { return {g1.w - g2.w, g1.c - g2.c}; }

GroupElement scale(double s, const GroupElement& g) { return {s * g.w, s * g.c}; }

double gcm_norm(const AlgebraElement& h) { return std::sqrt(h.A.squaredNorm() + h.a.squaredNorm()); }

double gcm_norm(const GroupElement& g) { return std::sqrt(g.w.squaredNorm() + g.c.squaredNorm()); }

double w_norm(const Model& model, const Vec& w)
{
    if (w.size() != model.n()) throw DimensionError("w must have length n");
    return std::sqrt(model.w_weights().dot(w.cwiseAbs2()));
}

double banach_norm(const Model& model, const GroupElement& g)
{
    check_conforms(model, g);
    return w_norm(model, g.w) + g.c.norm();
}

} // namespace hlab
