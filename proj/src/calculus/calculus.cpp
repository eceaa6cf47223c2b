#include "hlab/calculus.hpp"

#include <stdexcept>

namespace hlab {

namespace {

int nvars(const Model& model) { return model.n() + model.d(); }

void check_poly(const Model& model, const Polynomial& f)
{
    if (f.nvars() != nvars(model)) throw DimensionError("polynomial does not match model dimensions");
}

// Substitution list for (w, c) -> (w + s A, c + s a + s q(w)) in n+d+1
// variables, with s the last one; q supplied per centre component.
Polynomial differentiate_along_family(const Model& model, const Polynomial& f, const AlgebraElement& k, bool right)
{
    check_poly(model, f);
    check_conforms(model, k);
    const int n = model.n();
    const int d = model.d();
    const int ext = n + d + 1;
    const Polynomial s = Polynomial::variable(ext, n + d);

    std::vector<Polynomial> subs;
    subs.reserve(static_cast<std::size_t>(n + d));
    for (int i = 0; i < n; ++i) subs.push_back(Polynomial::variable(ext, i) + s * k.A(i));
    for (int l = 0; l < d; ++l) {
        // omega(w, A) for the left family g (sk), omega(A, w) = -omega(w, A) for (sk) g.
        Polynomial twist(ext);
        for (int i = 0; i < n; ++i) {
            const double coeff = (model.omega()[static_cast<std::size_t>(l)].row(i) * k.A)(0);
            if (coeff != 0.0) twist += Polynomial::variable(ext, i) * coeff;
        }
        if (right) twist *= -1.0;
        subs.push_back(Polynomial::variable(ext, n + l) + s * k.a(l) + 0.5 * (s * twist));
    }
    const Polynomial moved = f.compose(subs).derivative(n + d);

    std::vector<Polynomial> at_zero;
    at_zero.reserve(static_cast<std::size_t>(ext));
    for (int i = 0; i < n + d; ++i) at_zero.push_back(Polynomial::variable(n + d, i));
    at_zero.push_back(Polynomial(n + d));
    return moved.compose(at_zero);
}

} // namespace

Polynomial zero_polynomial(const Model& model) { return Polynomial(nvars(model)); }

Polynomial constant_polynomial(const Model& model, double value) { return Polynomial::constant(nvars(model), value); }

Polynomial w_coordinate(const Model& model, int i)
{
    if (i < 0 || i >= model.n()) throw std::out_of_range("w index out of range");
    return Polynomial::variable(nvars(model), i);
}

Polynomial c_coordinate(const Model& model, int l)
{
    if (l < 0 || l >= model.d()) throw std::out_of_range("c index out of range");
    return Polynomial::variable(nvars(model), model.n() + l);
}

double evaluate(const Polynomial& f, const GroupElement& g)
{
    const auto n = static_cast<std::size_t>(g.w.size());
    std::vector<double> x(n + static_cast<std::size_t>(g.c.size()));
    for (std::size_t i = 0; i < n; ++i) x[i] = g.w(static_cast<Eigen::Index>(i));
    for (Eigen::Index l = 0; l < g.c.size(); ++l) x[n + static_cast<std::size_t>(l)] = g.c(l);
    return f.evaluate(x);
}

Polynomial form_against(const Model& model, const Vec& v, int l)
{
    Polynomial out = zero_polynomial(model);
    const Vec row = model.omega()[static_cast<std::size_t>(l)] * v;
    for (int i = 0; i < model.n(); ++i)
        if (row(i) != 0.0) out += w_coordinate(model, i) * row(i);
    return out;
}

Polynomial partial_derivative(const Model& model, const Polynomial& f, const AlgebraElement& h)
{
    check_poly(model, f);
    check_conforms(model, h);
    Polynomial out = zero_polynomial(model);
    for (int i = 0; i < model.n(); ++i)
        if (h.A(i) != 0.0) out += f.derivative(i) * h.A(i);
    for (int l = 0; l < model.d(); ++l)
        if (h.a(l) != 0.0) out += f.derivative(model.n() + l) * h.a(l);
    return out;
}

Polynomial left_invariant_derivative(const Model& model, const AlgebraElement& h, const Polynomial& f)
{
    Polynomial out = partial_derivative(model, f, {h.A, Vec::Zero(model.d())});
    for (int l = 0; l < model.d(); ++l) {
        Polynomial coeff = constant_polynomial(model, h.a(l)) + 0.5 * form_against(model, h.A, l);
        if (!coeff.is_zero()) out += coeff * f.derivative(model.n() + l);
    }
    return out;
}

Polynomial generator_L(const Model& model, const Polynomial& f)
{
    check_poly(model, f);
    Polynomial out = zero_polynomial(model);
    for (int j = 0; j < model.n(); ++j) {
        AlgebraElement e = AlgebraElement::zero(model);
        e.A(j) = 1.0;
        out += left_invariant_derivative(model, e, left_invariant_derivative(model, e, f));
    }
    for (int l = 0; l < model.d(); ++l) {
        AlgebraElement e = AlgebraElement::zero(model);
        e.a(l) = 1.0;
        out += left_invariant_derivative(model, e, left_invariant_derivative(model, e, f));
    }
    return out;
}

Polynomial laplacian_H(const Model& model, const Polynomial& f)
{
    check_poly(model, f);
    Polynomial out = zero_polynomial(model);
    for (int j = 0; j < model.n(); ++j) out += f.derivative(j).derivative(j);
    return out;
}

Polynomial laplacian_C(const Model& model, const Polynomial& f)
{
    check_poly(model, f);
    Polynomial out = zero_polynomial(model);
    for (int l = 0; l < model.d(); ++l) out += f.derivative(model.n() + l).derivative(model.n() + l);
    return out;
}

Polynomial gamma_contraction(const Model& model, const Polynomial& f)
{
    check_poly(model, f);
    Polynomial out = zero_polynomial(model);
    for (int j = 0; j < model.n(); ++j) {
        const Vec e = Vec::Unit(model.n(), j);
        const Polynomial fj = f.derivative(j);
        for (int l = 0; l < model.d(); ++l) {
            const Polynomial coeff = form_against(model, e, l);
            if (!coeff.is_zero()) out += coeff * fj.derivative(model.n() + l);
        }
    }
    return out;
}

Polynomial chi_contraction(const Model& model, const Polynomial& f)
{
    check_poly(model, f);
    Polynomial out = zero_polynomial(model);
    const int n = model.n();
    const int d = model.d();
    for (int j = 0; j < n; ++j) {
        const Vec e = Vec::Unit(n, j);
        std::vector<Polynomial> coeffs;
        coeffs.reserve(static_cast<std::size_t>(d));
        for (int l = 0; l < d; ++l) coeffs.push_back(form_against(model, e, l));
        for (int l = 0; l < d; ++l) {
            if (coeffs[static_cast<std::size_t>(l)].is_zero()) continue;
            const Polynomial fl = f.derivative(n + l);
            for (int m = 0; m < d; ++m) {
                if (coeffs[static_cast<std::size_t>(m)].is_zero()) continue;
                out += coeffs[static_cast<std::size_t>(l)] * coeffs[static_cast<std::size_t>(m)] * fl.derivative(n + m);
            }
        }
    }
    return out;
}

Polynomial generator_L_decomposed(const Model& model, const Polynomial& f)
{
    return laplacian_H(model, f) + laplacian_C(model, f) + gamma_contraction(model, f) + 0.25 * chi_contraction(model, f);
}

std::vector<Polynomial> gradient(const Model& model, const Polynomial& f)
{
    std::vector<Polynomial> out;
    out.reserve(static_cast<std::size_t>(model.n() + model.d()));
    for (int j = 0; j < model.n(); ++j) {
        AlgebraElement e = AlgebraElement::zero(model);
        e.A(j) = 1.0;
        out.push_back(left_invariant_derivative(model, e, f));
    }
    for (int l = 0; l < model.d(); ++l) out.push_back(f.derivative(model.n() + l));
    return out;
}

Polynomial right_derivative(const Model& model, const AlgebraElement& k, const Polynomial& f)
{
    return differentiate_along_family(model, f, k, true);
}

Polynomial left_derivative(const Model& model, const AlgebraElement& k, const Polynomial& f)
{
    return differentiate_along_family(model, f, k, false);
}

Polynomial rotate_h(const Model& model, const Polynomial& f, const Mat& R)
{
    check_poly(model, f);
    const int n = model.n();
    if (R.rows() != n || R.cols() != n) throw DimensionError("rotation must be n x n");
    std::vector<Polynomial> subs;
    for (int i = 0; i < n; ++i) {
        Polynomial row = zero_polynomial(model);
        for (int j = 0; j < n; ++j)
            if (R(i, j) != 0.0) row += w_coordinate(model, j) * R(i, j);
        subs.push_back(std::move(row));
    }
    for (int l = 0; l < model.d(); ++l) subs.push_back(c_coordinate(model, l));
    return f.compose(subs);
}

AlgebraElement projection_defect(const Model& model, const Vec& w1, const Vec& w2, int m)
{
    if (m < 1 || m > model.n()) throw DimensionError("projection size must lie in [1, n]");
    Vec p1 = Vec::Zero(model.n());
    Vec p2 = Vec::Zero(model.n());
    p1.head(m) = w1.head(m);
    p2.head(m) = w2.head(m);
    return {Vec::Zero(model.n()), 0.5 * (model.form(w1, w2) - model.form(p1, p2))};
}

} // namespace hlab
