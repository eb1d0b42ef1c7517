#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace xf {

/// Real polynomial in the monomial basis, coefficients in ascending degree.
///
/// Only exact trailing zeros are stripped on construction. Tolerance-based
/// trimming is explicit (see trimmed()) because the genuine leading
/// coefficients of Laguerre polynomials, (-1)^m/m!, fall far below any
/// fixed relative threshold once m exceeds ~15.
class DensePoly {
public:
    DensePoly() : c_{0.0} {}
    explicit DensePoly(std::vector<double> coeffs) : c_(std::move(coeffs)) { normalize(); }
    DensePoly(std::initializer_list<double> coeffs) : c_(coeffs) { normalize(); }

    static DensePoly constant(double v) { return DensePoly({v}); }
    static DensePoly monomial(int k, double v = 1.0)
    {
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        c.back() = v;
        return DensePoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double lead() const { return c_.back(); }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }
    const std::vector<double>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

    double operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

    double max_abs_coeff() const
    {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Drops leading coefficients below rel_tol * max|coeff|.
    DensePoly trimmed(double rel_tol = 1e-13) const
    {
        double cut = rel_tol * max_abs_coeff();
        std::vector<double> c = c_;
        while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
        return DensePoly(std::move(c));
    }

    template <class T>
    T operator()(T x) const
    {
        T acc = T(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    /// p(-x)
    DensePoly reflected() const
    {
        std::vector<double> c = c_;
        for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
        return DensePoly(std::move(c));
    }

    DensePoly derivative(int k = 1) const
    {
        if (k <= 0) return *this;
        if (k > degree()) return DensePoly();
        std::vector<double> d(c_.size() - static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < d.size(); ++j) {
            double f = 1.0;
            for (int i = 1; i <= k; ++i) f *= static_cast<double>(j + static_cast<std::size_t>(i));
            d[j] = f * c_[j + static_cast<std::size_t>(k)];
        }
        return DensePoly(std::move(d));
    }

    DensePoly& operator*=(double s)
    {
        for (double& v : c_) v *= s;
        normalize();
        return *this;
    }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b)
    {
        std::vector<double> c(std::max(a.size(), b.size()), 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
        return DensePoly(std::move(c));
    }

    friend DensePoly operator-(const DensePoly& a, const DensePoly& b)
    {
        std::vector<double> c(std::max(a.size(), b.size()), 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
        return DensePoly(std::move(c));
    }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b)
    {
        std::vector<double> c(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return DensePoly(std::move(c));
    }

    friend DensePoly operator*(double s, DensePoly p)
    {
        p *= s;
        return p;
    }

    friend DensePoly operator*(DensePoly p, double s)
    {
        p *= s;
        return p;
    }

private:
    void normalize()
    {
        if (c_.empty()) c_.push_back(0.0);
        while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

/// k-th derivative at x by Horner on the differentiated coefficient sequence.
template <class T>
T poly_eval(const DensePoly& p, T x, int k = 0)
{
    if (k > p.degree()) return T(0);
    const auto& c = p.coeffs();
    auto coef = [&](std::size_t j) {
        double f = 1.0;
        for (int i = 0; i < k; ++i) f *= static_cast<double>(j - static_cast<std::size_t>(i));
        return f * c[j];
    };
    T acc = T(coef(c.size() - 1));
    for (std::size_t j = c.size() - 1; j-- > static_cast<std::size_t>(k);) acc = acc * x + T(coef(j));
    return acc;
}

inline DensePoly poly_from_real_roots(const std::vector<double>& roots, double lead = 1.0)
{
    DensePoly p = DensePoly::constant(lead);
    for (double r : roots) p = p * DensePoly({-r, 1.0});
    return p;
}

} // namespace xf
