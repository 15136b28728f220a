#include "caseval/probe/synthetic.hpp"

#include <stdexcept>

#include "caseval/rng.hpp"

namespace caseval::probe {

Dataset generate(const SyntheticGeneratorSpec& spec) {
    if (spec.dimension < 2) {
        throw std::invalid_argument("generate: dimension must be at least 2");
    }
    if (!(spec.noise_sd > 0.0)) {
        throw std::invalid_argument("generate: noise_sd must be positive");
    }
    if (spec.scheming_mean.size() != spec.dimension ||
        spec.honest_mean.size() != spec.dimension) {
        throw std::invalid_argument("generate: class means must match dimension");
    }
    for (const auto& [category, offset] : spec.category_offsets) {
        if (offset.size() != spec.dimension) {
            throw std::invalid_argument("generate: offset for '" + category +
                                        "' must match dimension");
        }
    }

    Dataset data;
    data.reserve(2 * spec.n_per_class);

    const auto emit = [&](Label label, const std::vector<double>& mean,
                          std::uint64_t stream_base) {
        for (std::uint64_t i = 0; i < spec.n_per_class; ++i) {
            CounterRng rng(spec.seed, stream_base + i);
            ActivationSample sample;
            sample.label = label;
            if (!spec.categories.empty()) {
                sample.category =
                    spec.categories[i % spec.categories.size()];
            }
            const auto offset_it = spec.category_offsets.find(sample.category);
            sample.vector.resize(spec.dimension);
            for (std::size_t d = 0; d < spec.dimension; ++d) {
                double mu = mean[d];
                if (offset_it != spec.category_offsets.end()) {
                    mu += offset_it->second[d];
                }
                sample.vector[d] = rng.normal(mu, spec.noise_sd);
            }
            data.push_back(std::move(sample));
        }
    };

    // Disjoint stream ranges per class keep the two halves independent.
    emit(Label::scheming, spec.scheming_mean, 0);
    emit(Label::honest, spec.honest_mean, spec.n_per_class);
    return data;
}

Dataset filter_label(const Dataset& data, Label label) {
    Dataset out;
    for (const ActivationSample& s : data) {
        if (s.label == label) out.push_back(s);
    }
    return out;
}

}  // namespace caseval::probe
