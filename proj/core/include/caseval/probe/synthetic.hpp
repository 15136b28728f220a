#pragma once

#include "caseval/probe/types.hpp"

namespace caseval::probe {

/// Draws n_per_class samples per label from the spec's Gaussian mixture.
/// Deterministic for a fixed seed: sample i of each class owns its own
/// counter-based stream, so sharding over threads cannot change the data.
/// Categories rotate round-robin; a category's offset (when given) is added
/// to the class mean.
Dataset generate(const SyntheticGeneratorSpec& spec);

/// The two halves of a generated dataset.
Dataset filter_label(const Dataset& data, Label label);

}  // namespace caseval::probe
