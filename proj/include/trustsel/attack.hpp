#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trustsel/types.hpp"

namespace trustsel {

/// x-th percentile by the rank method: sort ascending and take the item at
/// 1-based rank round_half_up(x/100 * n), clamped to [1, n]. No interpolation.
/// Throws InputError on empty data or x outside (0, 100).
double percentile_value(std::span<const double> data, double percent);

// Half-open slot range.
struct SlotRange {
  SlotIndex begin = 0;
  SlotIndex end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const SlotRange&, const SlotRange&) = default;
};

enum class SwapMode {
  // Exchange exact occurrences of the two percentile values only.
  Exact,
  // Reflect the tails: v <= lo goes to hi + (lo - v), v >= hi goes to
  // lo - (v - hi). Agrees with Exact on the two percentile values themselves.
  Reflect,
  // Exact when either percentile value repeats in the series (discrete
  // data), Reflect otherwise.
  Auto,
};

/// Exchanges every occurrence of `lo` and `hi` inside `region`.
std::vector<double> swap_values(std::span<const double> series, double lo, double hi,
                                SlotRange region);

struct AttackOutcome {
  std::vector<double> series;
  double low_value = 0.0;
  double high_value = 0.0;
  bool degenerate = false;  // low == high, series returned unchanged
  SwapMode applied = SwapMode::Exact;
};

/// Swap x / (100-x) percentile causative attack restricted to `region`.
/// Percentiles are taken over the whole series. Requires 0 < x < 50.
AttackOutcome swap_percentile_attack(std::span<const double> series, double percent,
                                     SlotRange region, SwapMode mode = SwapMode::Auto);

enum class SignalKind { Sinusoid, Trend, Piecewise };

struct SignalSpec {
  SignalKind kind = SignalKind::Sinusoid;
  double level = 100.0;
  double amplitude = 40.0;  // sinusoid and piecewise swing
  double period = 24.0;     // slots per cycle (sinusoid) or per block (piecewise)
  double slope = 1.0;       // trend decay per slot
};

double signal_value(const SignalSpec& signal, SlotIndex t);

struct InstanceSpec {
  std::size_t models = 7;
  std::size_t slots = 96;
  std::size_t malicious = 1;
  SignalSpec signal;
  double benign_noise = 2.0;
  double attack_percentile = 5.0;
  double poison_fraction = 0.20;
  std::uint64_t seed = 1;

  /// Throws ConfigError on any out-of-domain field.
  void validate() const;
};

struct GeneratedInstance {
  ModelOutputs outputs;
  std::vector<double> ground_truth;
  std::vector<ModelIndex> malicious;  // ascending
  std::vector<SlotRange> poisoned;    // aligned with `malicious`
};

/// The same InstanceSpec (seed included) gives identical output. Every model outputs the base
/// signal plus its own Gaussian noise; malicious models additionally carry the
/// percentile attack over one contiguous region of round(poison_fraction*T)
/// slots.
GeneratedInstance generate_instance(const InstanceSpec& spec);

}  // namespace trustsel
