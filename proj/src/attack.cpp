#include "trustsel/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "trustsel/error.hpp"

namespace trustsel {
namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return std::mt19937_64(seq);
}

void check_region(std::size_t n, SlotRange region) {
  if (region.begin > region.end || region.end > n) {
    throw InputError(fmt::format("region [{}, {}) outside series of length {}", region.begin,
                                 region.end, n));
  }
}

}  // namespace

double percentile_value(std::span<const double> data, double percent) {
  if (data.empty()) throw InputError("percentile of an empty list");
  if (!(percent > 0.0 && percent < 100.0)) throw InputError("percentile must lie in (0, 100)");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double rank = std::floor(percent * n / 100.0 + 0.5);
  const auto clamped = static_cast<std::size_t>(std::clamp(rank, 1.0, n));
  return sorted[clamped - 1];
}

std::vector<double> swap_values(std::span<const double> series, double lo, double hi,
                                SlotRange region) {
  check_region(series.size(), region);
  std::vector<double> out(series.begin(), series.end());
  for (SlotIndex t = region.begin; t < region.end; ++t) {
    if (out[t] == lo) {
      out[t] = hi;
    } else if (out[t] == hi) {
      out[t] = lo;
    }
  }
  return out;
}

AttackOutcome swap_percentile_attack(std::span<const double> series, double percent,
                                     SlotRange region, SwapMode mode) {
  if (!(percent > 0.0 && percent < 50.0)) throw InputError("attack percentile must lie in (0, 50)");
  check_region(series.size(), region);

  AttackOutcome out;
  out.low_value = percentile_value(series, percent);
  out.high_value = percentile_value(series, 100.0 - percent);
  if (out.low_value == out.high_value) {
    out.series.assign(series.begin(), series.end());
    out.degenerate = true;
    return out;
  }

  if (mode == SwapMode::Auto) {
    const auto lo_count = std::count(series.begin(), series.end(), out.low_value);
    const auto hi_count = std::count(series.begin(), series.end(), out.high_value);
    mode = (lo_count > 1 || hi_count > 1) ? SwapMode::Exact : SwapMode::Reflect;
  }
  out.applied = mode;

  if (mode == SwapMode::Exact) {
    out.series = swap_values(series, out.low_value, out.high_value, region);
    return out;
  }

  out.series.assign(series.begin(), series.end());
  const double lo = out.low_value;
  const double hi = out.high_value;
  for (SlotIndex t = region.begin; t < region.end; ++t) {
    const double v = out.series[t];
    if (v <= lo) {
      out.series[t] = hi + (lo - v);
    } else if (v >= hi) {
      out.series[t] = lo - (v - hi);
    }
  }
  return out;
}

double signal_value(const SignalSpec& s, SlotIndex t) {
  const double x = static_cast<double>(t);
  switch (s.kind) {
    case SignalKind::Sinusoid:
      return s.level + s.amplitude * std::sin(2.0 * std::numbers::pi * x / s.period);
    case SignalKind::Trend:
      return s.level - s.slope * x;
    case SignalKind::Piecewise: {
      const auto block = static_cast<std::size_t>(x / s.period);
      return s.level + (block % 2 == 0 ? s.amplitude : -s.amplitude);
    }
  }
  return s.level;
}

void InstanceSpec::validate() const {
  if (models < 1 || slots < 1) throw ConfigError("instance needs at least one model and slot");
  if (malicious > models) throw ConfigError("more malicious models than models");
  if (!(attack_percentile > 0.0 && attack_percentile < 50.0)) {
    throw ConfigError("attack percentile must lie in (0, 50)");
  }
  if (!(poison_fraction > 0.0 && poison_fraction <= 1.0)) {
    throw ConfigError("poison fraction must lie in (0, 1]");
  }
  if (!(benign_noise >= 0.0) || !std::isfinite(benign_noise)) {
    throw ConfigError("benign noise must be a non-negative standard deviation");
  }
  if (!(signal.period > 0.0)) throw ConfigError("signal period must be positive");
}

GeneratedInstance generate_instance(const InstanceSpec& spec) {
  spec.validate();

  std::vector<double> truth(spec.slots);
  for (SlotIndex t = 0; t < spec.slots; ++t) truth[t] = signal_value(spec.signal, t);

  // Stream 0 picks the malicious rows, stream 1+m drives model m.
  std::vector<ModelIndex> order(spec.models);
  for (ModelIndex m = 0; m < spec.models; ++m) order[m] = m;
  auto pick = stream(spec.seed, 0);
  std::shuffle(order.begin(), order.end(), pick);
  std::vector<ModelIndex> malicious(order.begin(),
                                    order.begin() + static_cast<std::ptrdiff_t>(spec.malicious));
  std::sort(malicious.begin(), malicious.end());

  const auto region_len = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(spec.poison_fraction * static_cast<double>(spec.slots))),
      1, spec.slots);

  Grid<double> values(spec.models, spec.slots);
  std::vector<SlotRange> poisoned;
  for (ModelIndex m = 0; m < spec.models; ++m) {
    auto rng = stream(spec.seed, 1 + m);
    std::normal_distribution<double> noise(0.0, spec.benign_noise);
    std::vector<double> series(spec.slots);
    for (SlotIndex t = 0; t < spec.slots; ++t) {
      series[t] = truth[t] + (spec.benign_noise > 0.0 ? noise(rng) : 0.0);
    }
    if (std::binary_search(malicious.begin(), malicious.end(), m)) {
      std::uniform_int_distribution<std::size_t> start(0, spec.slots - region_len);
      const auto s = start(rng);
      const SlotRange region{s, s + region_len};
      series = swap_percentile_attack(series, spec.attack_percentile, region).series;
      poisoned.push_back(region);
    }
    std::copy(series.begin(), series.end(), values.row(m).begin());
  }

  return {ModelOutputs::with_default_ids(std::move(values)), std::move(truth),
          std::move(malicious), std::move(poisoned)};
}

}  // namespace trustsel
