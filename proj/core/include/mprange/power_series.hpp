#ifndef MPRANGE_POWER_SERIES_HPP
#define MPRANGE_POWER_SERIES_HPP

// Exact truncated power series in z with rational coefficients (GMP).  Used
// for lattice walk-count generating functions, where coefficients grow past
// 64 bits quickly ((2d)^m) and any rounding would defeat the oracle role.

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mpr {

class PowerSeries {
  public:
    PowerSeries() : c_(1, 0) {}
    explicit PowerSeries(int order) : c_(order + 1, 0) {
        if (order < 0) throw std::invalid_argument("order must be >= 0");
    }
    explicit PowerSeries(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.assign(1, 0);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const mpq_class& operator[](int i) const { return c_.at(i); }
    mpq_class& operator[](int i) { return c_.at(i); }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    PowerSeries truncated(int order) const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

    // 1/this; requires a nonzero constant term.
    PowerSeries inverse() const;
    PowerSeries pow(int n) const;
    // z * d/dz
    PowerSeries z_ddz() const;

    std::string csv() const;  // lines "power,numerator,denominator"

  private:
    std::vector<mpq_class> c_;
};

}  // namespace mpr

#endif
