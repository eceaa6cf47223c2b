#pragma once

#include "hlab/group.hpp"
#include "hlab/stats.hpp"

#include <vector>

namespace hlab {

// Quadratic form of the Ricci tensor at the identity on the (w, c) chart.
struct RicciForm {
    Mat matrix;
    double k_lower = 0.0;

    double quadratic(const Vec& A, const Vec& a) const;
};

RicciForm ricci_step2(const Model& model);

struct StructureRicci {
    RicciForm form;
    // Largest |tr(ad_{ad*_X X})| and |tr(ad_X^2)| seen while polarizing.
    double max_trace_adstar = 0.0;
    double max_trace_ad_sq = 0.0;
};

// Generic left-invariant-metric formula built from structure constants.
StructureRicci ricci_structure_constants(const Model& model);

AlgebraElement covariant_derivative(const Model& model, const AlgebraElement& X, const AlgebraElement& Y);
AlgebraElement ad_star(const Model& model, const AlgebraElement& X, const AlgebraElement& Y);

double k_omega(const Model& model);
double k_projected(const Model& model, int m);

// t / (e^t - 1), equal to 1 at t = 0.
double c_function(double t);

// Ricci closed forms for the catalog families.
std::vector<CheckRecord> ricci_closed_form_checks();

} // namespace hlab
