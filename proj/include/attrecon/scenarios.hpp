#pragma once

// Ground-truth motions with closed-form angular velocity, attitude and
// angular increments, plus exact gyro measurement synthesis.

#include <string>
#include <variant>
#include <vector>

#include "attrecon/gyro_fit.hpp"
#include "attrecon/quat_algebra.hpp"

namespace attrecon {

/// Coning with half-angle alpha (rad) at frequency Omega (rad/s).
struct ConingSpec {
    double alpha = 0.0;
    double Omega = 0.0;
};

struct ConstantRateSpec {
    Vec3 omega = Vec3::Zero();
};

/// ω = Ω [-2 sin²(α/2), -sin α sin Ωt, sin α cos Ωt].
Vec3 coning_omega(const ConingSpec& spec, double t);

/// Attitude from g = 2 tan(α/2) [0, cos Ωt, sin Ωt]. Throws std::domain_error for α >= π.
Quaternion coning_truth(const ConingSpec& spec, double t);

/// Closed-form integral of coning_omega over [t0, t1].
Vec3 coning_increment(const ConingSpec& spec, double t0, double t1);

Quaternion constant_truth(const ConstantRateSpec& spec, double t);

class Scenario {
public:
    Scenario(ConingSpec spec);        // NOLINT(google-explicit-constructor)
    Scenario(ConstantRateSpec spec);  // NOLINT(google-explicit-constructor)

    Vec3 omega(double t) const;
    Quaternion truth(double t) const;
    Vec3 increment(double t0, double t1) const;
    /// truth(t0)* ∘ truth(t): attitude at t relative to the body frame at t0.
    Quaternion relative_truth(double t0, double t) const;

    std::string name() const;
    const std::variant<ConingSpec, ConstantRateSpec>& spec() const { return spec_; }

private:
    std::variant<ConingSpec, ConstantRateSpec> spec_;
};

struct SamplingSpec {
    double rate_hz = 100.0;
    int samples_per_interval = 8;
    double duration_s = 10.0;
    SampleMode mode = SampleMode::increment;

    double sample_period() const { return 1.0 / rate_hz; }
    double interval_length() const { return samples_per_interval / rate_hz; }
    int total_samples() const;
    int interval_count() const;
    /// Throws std::invalid_argument on rate <= 0, N < 2 or a duration that is not a whole number of intervals.
    void validate() const;
};

/**
 * Exact measurements for update interval `interval_index` (0-based). Times in
 * the batch are interval-relative sub-interval end times k/rate, k = 1..N.
 */
GyroBatch generate_gyro_batch(const Scenario& scenario, const SamplingSpec& sampling, int interval_index);

/// A flat measurement record: sub-interval end time (absolute) and value.
struct Measurement {
    double t = 0.0;
    Vec3 value = Vec3::Zero();
};

struct MeasurementStream {
    SampleMode mode = SampleMode::increment;
    double rate_hz = 100.0;
    std::vector<Measurement> samples;
};

/// Every sample over [0, duration] at the given rate.
MeasurementStream generate_measurements(const Scenario& scenario, double rate_hz, double duration_s, SampleMode mode);

/// Slices samples [interval_index*N, (interval_index+1)*N) into an interval-relative batch.
GyroBatch batch_from_stream(const MeasurementStream& stream, int samples_per_interval, int interval_index);

} // namespace attrecon
