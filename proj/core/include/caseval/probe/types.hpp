#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace caseval::probe {

enum class Label { scheming, honest, unknown };

std::string_view to_string(Label l);

struct ActivationSample {
    std::vector<double> vector;  // fixed dimension within a dataset
    Label label = Label::unknown;
    std::string category;  // task-category tag, e.g. "code_backdoor"
};

using Dataset = std::vector<ActivationSample>;

/// Mean-difference direction with a cosine-similarity threshold.
/// The direction is unit-norm (within 1e-9).
struct ProbeModel {
    std::vector<double> direction;
    double threshold = 0.0;
};

struct CategoryRate {
    std::uint64_t positives = 0;
    std::uint64_t total = 0;
    double rate = 0.0;
};

struct ProbeEvaluation {
    double fpr = 0.0;
    double fnr = 0.0;
    std::optional<double> auc;  // unset when only one label is present
    std::map<std::string, CategoryRate> per_category_positive_rate;
    std::uint64_t positives = 0;
    std::uint64_t total = 0;
    double overall_positive_rate = 0.0;
};

/// How to pick the classification threshold when building a probe.
struct ThresholdPolicy {
    enum class Kind {
        midpoint,    // halfway between the two classes' mean scores
        fixed,       // a given cosine value
        target_fpr,  // honest-score quantile hitting a target FPR
    };
    Kind kind = Kind::midpoint;
    double fixed_value = 0.0;
    double target_fpr = 0.01;
};

struct PatternScanResult {
    bool flagged = false;
    std::string category;  // most concentrated category
    double concentration = 0.0;  // category rate / overall rate
};

/// Gaussian mixture stand-in for real activations: class means plus
/// spherical noise, with optional per-category mean offsets.
struct SyntheticGeneratorSpec {
    std::size_t dimension = 2;
    std::vector<double> scheming_mean;
    std::vector<double> honest_mean;
    double noise_sd = 1.0;
    std::uint64_t n_per_class = 1000;
    std::uint64_t seed = 0;
    std::vector<std::string> categories;  // round-robin over samples
    std::map<std::string, std::vector<double>> category_offsets;
};

}  // namespace caseval::probe
