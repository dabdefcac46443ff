#include "mprange/power_series.hpp"

#include <algorithm>
#include <sstream>

namespace mpr {

PowerSeries PowerSeries::truncated(int order) const {
    std::vector<mpq_class> c(order + 1, 0);
    for (int i = 0; i <= std::min(order, this->order()); ++i) c[i] = c_[i];
    return PowerSeries(std::move(c));
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (int i = 0; i <= n; ++i) r[i] = a[i] + b[i];
    return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (int i = 0; i <= n; ++i) r[i] = a[i] - b[i];
    return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

PowerSeries PowerSeries::inverse() const {
    if (c_[0] == 0) throw std::domain_error("inverse: constant term is zero");
    const int n = order();
    PowerSeries r(n);
    r[0] = 1 / c_[0];
    for (int i = 1; i <= n; ++i) {
        mpq_class s = 0;
        for (int j = 1; j <= i; ++j) s += c_[j] * r[i - j];
        r[i] = -s / c_[0];
    }
    return r;
}

PowerSeries PowerSeries::pow(int n) const {
    if (n < 0) throw std::invalid_argument("pow: n >= 0");
    PowerSeries r(order());
    r[0] = 1;
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
}

PowerSeries PowerSeries::z_ddz() const {
    PowerSeries r(order());
    for (int i = 1; i <= order(); ++i) r[i] = c_[i] * i;
    return r;
}

std::string PowerSeries::csv() const {
    std::ostringstream os;
    os << "power,numerator,denominator\n";
    for (int i = 0; i <= order(); ++i)
        os << i << "," << c_[i].get_num().get_str() << "," << c_[i].get_den().get_str()
           << "\n";
    return os.str();
}

}  // namespace mpr
