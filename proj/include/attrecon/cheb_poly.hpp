#pragma once

// Chebyshev series of the first kind on [-1, 1].
//
// Coefficients are stored densely (index = degree) and may be scalars,
// Vec3/Mat3 or Quaternion values; anything with +, - and scalar * works.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "attrecon/quat_algebra.hpp"

namespace attrecon {

template <typename T>
T zero_value() {
    if constexpr (std::is_arithmetic_v<T>) {
        return T{0};
    } else {
        return T::Zero();
    }
}

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const Vec3& v) { return v.norm(); }
inline double value_norm(const Mat3& m) { return m.norm(); }
inline double value_norm(const Quaternion& q) { return q.norm(); }

inline bool value_finite(double v) { return std::isfinite(v); }
inline bool value_finite(const Vec3& v) { return v.allFinite(); }
inline bool value_finite(const Mat3& m) { return m.allFinite(); }
inline bool value_finite(const Quaternion& q) { return q.is_finite(); }

template <typename T>
class ChebSeries {
public:
    /// The zero polynomial of degree 0.
    ChebSeries() : coeffs_(1, zero_value<T>()) {}

    explicit ChebSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("ChebSeries: at least one coefficient is required");
        }
    }

    static ChebSeries zeros(int degree) {
        if (degree < 0) {
            throw std::invalid_argument("ChebSeries::zeros: negative degree");
        }
        return ChebSeries(std::vector<T>(static_cast<std::size_t>(degree) + 1, zero_value<T>()));
    }

    static ChebSeries constant(const T& value) { return ChebSeries(std::vector<T>{value}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }

    const T& operator[](std::size_t i) const { return coeffs_[i]; }
    T& operator[](std::size_t i) { return coeffs_[i]; }

    /// Coefficient of F_i, zero past the stored degree.
    T coeff_or_zero(int i) const {
        return (i >= 0 && i <= degree()) ? coeffs_[static_cast<std::size_t>(i)] : zero_value<T>();
    }

    const std::vector<T>& coeffs() const { return coeffs_; }

    bool all_finite() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return value_finite(c); });
    }

    /// Grows (with zeros) or shrinks to the given degree.
    void resize(int degree) { coeffs_.resize(static_cast<std::size_t>(degree) + 1, zero_value<T>()); }

    ChebSeries& operator+=(const ChebSeries& o) {
        if (o.degree() > degree()) {
            resize(o.degree());
        }
        for (std::size_t i = 0; i < o.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        return *this;
    }

    ChebSeries& operator*=(double k) {
        for (auto& c : coeffs_) {
            c *= k;
        }
        return *this;
    }

private:
    std::vector<T> coeffs_;
};

template <typename T>
ChebSeries<T> operator+(ChebSeries<T> a, const ChebSeries<T>& b) {
    return a += b;
}

template <typename T>
ChebSeries<T> operator*(double k, ChebSeries<T> a) {
    return a *= k;
}

/// Σ coeffs_i F_i(tau) by Clenshaw's backward recurrence.
template <typename T>
T cheb_eval(const ChebSeries<T>& series, double tau) {
    T b1 = zero_value<T>();
    T b2 = zero_value<T>();
    const double two_tau = 2.0 * tau;
    for (int k = series.degree(); k >= 1; --k) {
        T b0 = series[static_cast<std::size_t>(k)] + two_tau * b1 - b2;
        b2 = std::move(b1);
        b1 = std::move(b0);
    }
    T out = series[0] + tau * b1 - b2;
    return out;
}

template <typename T>
struct FlaggedValue {
    T value;
    bool outside_domain;
};

/// cheb_eval that also reports whether tau left [-1, 1] (diagnostics only).
template <typename T>
FlaggedValue<T> cheb_eval_flagged(const ChebSeries<T>& series, double tau) {
    return {cheb_eval(series, tau), tau < -1.0 || tau > 1.0};
}

/// Coefficients of tau ↦ ∫_{-1}^{tau} series. Output degree is input degree + 1.
///
/// Uses G_i = F_{i+1}/(2(i+1)) - F_{i-1}/(2(i-1)) - (-1)^i/(i^2-1) F_0 (i != 1),
/// G_1 = F_2/4 - F_0/4, with F_{-1} read as F_1.
template <typename T>
ChebSeries<T> cheb_integrate(const ChebSeries<T>& series) {
    const int m = series.degree();
    ChebSeries<T> out = ChebSeries<T>::zeros(m + 1);
    for (int i = 0; i <= m; ++i) {
        const T& a = series[static_cast<std::size_t>(i)];
        if (i == 0) {
            out[1] += a;
            out[0] += a;
        } else if (i == 1) {
            out[2] += 0.25 * a;
            out[0] -= 0.25 * a;
        } else {
            const double di = static_cast<double>(i);
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            out[static_cast<std::size_t>(i + 1)] += (0.5 / (di + 1.0)) * a;
            out[static_cast<std::size_t>(i - 1)] -= (0.5 / (di - 1.0)) * a;
            out[0] -= (sign / (di * di - 1.0)) * a;
        }
    }
    return out;
}

/**
 * Pointwise product of two series under a bilinear combine(a_value, b_value),
 * reduced with F_j F_k = ½ (F_{j+k} + F_{|j-k|}).
 *
 * Output degree is deg(a) + deg(b); cheb_eval(result, tau) equals
 * combine(cheb_eval(a, tau), cheb_eval(b, tau)).
 */
template <typename A, typename B, typename Combine>
auto cheb_product(const ChebSeries<A>& a, const ChebSeries<B>& b, Combine&& combine)
    -> ChebSeries<std::decay_t<std::invoke_result_t<Combine&, const A&, const B&>>> {
    using R = std::decay_t<std::invoke_result_t<Combine&, const A&, const B&>>;
    ChebSeries<R> out = ChebSeries<R>::zeros(a.degree() + b.degree());
    for (int j = 0; j <= a.degree(); ++j) {
        for (int k = 0; k <= b.degree(); ++k) {
            R half = 0.5 * combine(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(k)]);
            out[static_cast<std::size_t>(j + k)] += half;
            out[static_cast<std::size_t>(std::abs(j - k))] += half;
        }
    }
    return out;
}

/// Drops every coefficient above degree max_degree.
template <typename T>
ChebSeries<T> cheb_truncate(ChebSeries<T> series, int max_degree) {
    if (max_degree < 0) {
        throw std::invalid_argument("cheb_truncate: negative degree");
    }
    if (series.degree() > max_degree) {
        series.resize(max_degree);
    }
    return series;
}

/// t = t_N/2 (1 + tau): maps [0, t_N] onto [-1, 1].
class IntervalMap {
public:
    explicit IntervalMap(double t_N);

    double length() const { return t_N_; }

    /// Throws std::out_of_range for t outside [0, t_N] (beyond 1e-12 relative slack).
    double to_tau(double t) const;
    double to_time(double tau) const;

private:
    double t_N_;
};

double time_map(double t, const IntervalMap& map);
double inverse_time_map(double tau, const IntervalMap& map);

} // namespace attrecon
