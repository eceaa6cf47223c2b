#pragma once

#include <map>
#include <span>
#include <vector>

namespace hlab {

// Sparse real polynomial in a fixed number of variables. Exact zero
// coefficients are never stored.
class Polynomial {
public:
    using Exponents = std::vector<int>;
    using Terms = std::map<Exponents, double>;

    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, double value);
    static Polynomial variable(int nvars, int index);
    static Polynomial monomial(const Exponents& exponents, double coeff);

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    double coefficient(const Exponents& exponents) const;

    void add_term(const Exponents& exponents, double coeff);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const { return *this * -1.0; }

    Polynomial derivative(int var) const;
    Polynomial power(int k) const;
    double evaluate(std::span<const double> x) const;

    // Substitute variable i by subs[i]; every substitute shares one variable count.
    Polynomial compose(const std::vector<Polynomial>& subs) const;

    // Max coefficient gap relative to max(1, largest coefficient).
    double distance(const Polynomial& o) const;

private:
    void check_same(const Polynomial& o) const;

    int nvars_;
    Terms terms_;
};

} // namespace hlab
