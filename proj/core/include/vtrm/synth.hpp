#pragma once

#include <cstdint>
#include <random>

#include "vtrm/types.hpp"

namespace vtrm {

/// Parameters of the drifting-identity generator.
struct SynthConfig {
  std::size_t num_identities = 10;
  std::size_t frames_per_identity = 10;
  std::size_t dim = 16;
  double step_sigma = 1.0;    // per-frame random-walk step scale
  double center_sigma = 10.0; // spread of identity centres
  double noise_sigma = 0.0;   // per-frame observation noise
  std::uint64_t seed = 0;

  /// Throws Error("bad-config") for out-of-range fields.
  void validate() const;
};

struct SynthData {
  EmbeddingSet queries;
  EmbeddingSet gallery;
  GroundTruth truth;
};

/// Portable normal deviates: 53-bit uniforms from std::mt19937_64 fed to the
/// basic Box-Muller transform, second deviate cached.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // in (0, 1]
  double normal();   // N(0, 1)

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Generates identity walks: frame 0 is the centre, each later frame adds an
/// isotropic Gaussian step, and every emitted vector adds observation noise.
/// Frame 0 becomes the query, frames 1..T-1 the gallery.
///
/// Draw order per identity: centre (dim), then for t = 0..T-1 the step
/// (dim, t > 0 only) followed by the noise (dim). Ids are `p<id>_f<t>` with
/// identity label `p<id>`, both zero-padded to four and three digits.
SynthData generate(const SynthConfig& cfg);

}  // namespace vtrm
