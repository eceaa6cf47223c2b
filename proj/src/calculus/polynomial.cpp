#include "hlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hlab {

Polynomial Polynomial::constant(int nvars, double value)
{
    Polynomial p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), value);
    return p;
}

Polynomial Polynomial::variable(int nvars, int index)
{
    if (index < 0 || index >= nvars) throw std::out_of_range("variable index out of range");
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    return monomial(e, 1.0);
}

Polynomial Polynomial::monomial(const Exponents& exponents, double coeff)
{
    Polynomial p(static_cast<int>(exponents.size()));
    p.add_term(exponents, coeff);
    return p;
}

int Polynomial::degree() const
{
    int deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

double Polynomial::coefficient(const Exponents& exponents) const
{
    const auto it = terms_.find(exponents);
    return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Exponents& exponents, double coeff)
{
    if (static_cast<int>(exponents.size()) != nvars_) throw std::invalid_argument("exponent vector has wrong length");
    if (std::any_of(exponents.begin(), exponents.end(), [](int k) { return k < 0; }))
        throw std::invalid_argument("negative exponent");
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(exponents, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

void Polynomial::check_same(const Polynomial& o) const
{
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials have different variable counts");
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    a.check_same(b);
    Polynomial out(a.nvars_);
    Polynomial::Exponents e(static_cast<std::size_t>(a.nvars_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial Polynomial::derivative(int var) const
{
    if (var < 0 || var >= nvars_) throw std::out_of_range("variable index out of range");
    const auto v = static_cast<std::size_t>(var);
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exponents lowered = e;
        lowered[v] -= 1;
        out.add_term(lowered, c * e[v]);
    }
    return out;
}

Polynomial Polynomial::power(int k) const
{
    if (k < 0) throw std::invalid_argument("negative power");
    Polynomial out = constant(nvars_, 1.0);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

double Polynomial::evaluate(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("evaluation point has wrong length");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs) const
{
    if (static_cast<int>(subs.size()) != nvars_) throw std::invalid_argument("need one substitute per variable");
    const int target = subs.empty() ? 0 : subs.front().nvars();
    for (const Polynomial& s : subs)
        if (s.nvars() != target) throw std::invalid_argument("substitutes have different variable counts");

    // Cache powers of each substitute as they are requested.
    std::vector<std::vector<Polynomial>> powers(subs.size());
    auto power_of = [&](std::size_t i, int k) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(target, 1.0));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * subs[i]);
        return cache[static_cast<std::size_t>(k)];
    };

    Polynomial out(target);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * power_of(i, e[i]);
        out += term;
    }
    return out;
}

double Polynomial::distance(const Polynomial& o) const
{
    check_same(o);
    double scale = 1.0;
    for (const auto& [e, c] : terms_) scale = std::max(scale, std::abs(c));
    for (const auto& [e, c] : o.terms_) scale = std::max(scale, std::abs(c));
    const Polynomial diff = *this - o;
    double gap = 0.0;
    for (const auto& [e, c] : diff.terms_) gap = std::max(gap, std::abs(c));
    return gap / scale;
}

} // namespace hlab
