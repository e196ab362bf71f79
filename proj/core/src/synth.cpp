#include "vtrm/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace vtrm {
namespace {

std::string identity_label(std::size_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%04zu", id);
  return buf;
}

std::string item_label(std::size_t id, std::size_t frame) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "p%04zu_f%03zu", id, frame);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  if (num_identities < 1) throw Error("bad-config", "num_identities must be >= 1");
  if (frames_per_identity < 2) {
    throw Error("bad-config", "frames_per_identity must be >= 2");
  }
  if (dim < 1) throw Error("bad-config", "dim must be >= 1");
  // Zero is accepted: it freezes every identity at its centre.
  if (!(step_sigma >= 0.0) || !std::isfinite(step_sigma)) {
    throw Error("bad-config", "step_sigma must be >= 0");
  }
  if (!(center_sigma > 0.0) || !std::isfinite(center_sigma)) {
    throw Error("bad-config", "center_sigma must be > 0");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error("bad-config", "noise_sigma must be >= 0");
  }
}

double GaussianSource::uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianSource::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

SynthData generate(const SynthConfig& cfg) {
  cfg.validate();
  GaussianSource rng(cfg.seed);
  const std::size_t d = cfg.dim;

  std::vector<ItemId> query_ids;
  std::vector<ItemId> gallery_ids;
  std::vector<double> query_values;
  std::vector<double> gallery_values;
  std::unordered_map<std::string, std::string> identity_of;
  std::unordered_map<std::string, long long> frame_of;

  std::vector<double> state(d);
  for (std::size_t id = 0; id < cfg.num_identities; ++id) {
    const auto label = identity_label(id);
    for (double& x : state) x = cfg.center_sigma * rng.normal();

    for (std::size_t t = 0; t < cfg.frames_per_identity; ++t) {
      if (t > 0) {
        for (double& x : state) x += cfg.step_sigma * rng.normal();
      }
      const bool is_query = t == 0;
      auto& values = is_query ? query_values : gallery_values;
      for (double x : state) values.push_back(x + cfg.noise_sigma * rng.normal());

      ItemId item(item_label(id, t));
      identity_of.emplace(item.str(), label);
      frame_of.emplace(item.str(), static_cast<long long>(t));
      (is_query ? query_ids : gallery_ids).push_back(std::move(item));
    }
  }

  return {EmbeddingSet(std::move(query_ids), std::move(query_values), d),
          EmbeddingSet(std::move(gallery_ids), std::move(gallery_values), d),
          GroundTruth(std::move(identity_of), std::move(frame_of))};
}

}  // namespace vtrm
