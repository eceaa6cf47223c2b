#pragma once

#include "hlab/group.hpp"
#include "hlab/polynomial.hpp"

#include <vector>

namespace hlab {

// Cylinder polynomials use the variables (w_1..w_n, c_1..c_d).
Polynomial zero_polynomial(const Model& model);
Polynomial constant_polynomial(const Model& model, double value);
Polynomial w_coordinate(const Model& model, int i);
Polynomial c_coordinate(const Model& model, int l);
double evaluate(const Polynomial& f, const GroupElement& g);

// Component l of omega(w, v) as a linear polynomial in w.
Polynomial form_against(const Model& model, const Vec& v, int l);

Polynomial partial_derivative(const Model& model, const Polynomial& f, const AlgebraElement& h);
Polynomial left_invariant_derivative(const Model& model, const AlgebraElement& h, const Polynomial& f);

Polynomial generator_L(const Model& model, const Polynomial& f);

// The second-order pieces of L beyond the flat Laplacians.
Polynomial laplacian_H(const Model& model, const Polynomial& f);
Polynomial laplacian_C(const Model& model, const Polynomial& f);
Polynomial gamma_contraction(const Model& model, const Polynomial& f);
Polynomial chi_contraction(const Model& model, const Polynomial& f);
Polynomial generator_L_decomposed(const Model& model, const Polynomial& f);

std::vector<Polynomial> gradient(const Model& model, const Polynomial& f);

// d/ds f((sk) g) and d/ds f(g (sk)) at s = 0, by substituting the group law.
Polynomial right_derivative(const Model& model, const AlgebraElement& k, const Polynomial& f);
Polynomial left_derivative(const Model& model, const AlgebraElement& k, const Polynomial& f);

// f composed with the linear change of H-coordinates w -> R w.
Polynomial rotate_h(const Model& model, const Polynomial& f, const Mat& R);

// Homomorphism defect of the coordinate projection onto the first m coordinates:
// (0, (omega(w, w') - omega(P w, P w')) / 2).
AlgebraElement projection_defect(const Model& model, const Vec& w1, const Vec& w2, int m);

} // namespace hlab
