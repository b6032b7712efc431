#pragma once

#include "errp/config.hpp"
#include "errp/dsp.hpp"
#include "errp/features.hpp"
#include "errp/types.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace errp::classifier {

// Two-class linear discriminant. Positive score favors the error class.
struct LdaModel {
  Eigen::VectorXd weights;
  double bias{0.0};
  double shrinkage{0.0};  // gamma in [0, 1]

  double score(const Eigen::Ref<const Eigen::VectorXd>& z) const {
    return weights.dot(z) + bias;
  }
};

struct LdaOptions {
  // When set, bypasses the analytic shrinkage estimate.
  std::optional<double> shrinkage_override;
};

// Shrinkage-regularized LDA: w = ((1-g) S + g nu I)^-1 (mu_err - mu_corr),
// nu = trace(S)/k, S the pooled within-class covariance. The bias centers the
// decision boundary at the midpoint of the class means. gamma comes from the
// analytic (Ledoit-Wolf style) estimator on within-class centered samples,
// clipped to [0, 1].
LdaModel train_shrinkage_lda(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                             const std::vector<Label>& labels,
                             const LdaOptions& options = {});

// Numerically stable logistic.
double logistic(double score);

// The transferable classifier: filter + PCA + LDA + decision threshold.
struct GenericModel {
  dsp::FilterSpec filter;
  double window_seconds{0.450};
  double leap_seconds{0.018};
  int channels{61};
  features::PcaModel pca;
  LdaModel lda;
  double tau{0.7};

  int window_samples() const;
  int leap_samples() const;

  double score_window(const Eigen::Ref<const Eigen::MatrixXd>& window) const;
  // (p_correct, p_error); the two-class softmax of the linear score is the
  // logistic of the score, so the pair always sums to 1 exactly.
  std::pair<double, double> predict_probability(const Eigen::Ref<const Eigen::MatrixXd>& window) const;

  // Collapsed scorer: score = template . flat(window) + offset, algebraically
  // identical to project-then-score but a single dot product per window.
  struct Collapsed {
    Eigen::VectorXd spatiotemporal;  // pca.components * lda.weights
    double offset;
  };
  Collapsed collapse() const;
};

struct TrainingSummary {
  int epochs_total{0};
  int epochs_kept{0};
  int rejected_correct{0};
  int rejected_error{0};
  int pca_components{0};
  double shrinkage{0.0};
};

// The full feature + classifier fit: preliminary PCA for per-class outlier
// rejection, PCA refit on the kept epochs, then shrinkage LDA in that space.
GenericModel train_generic_model(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                 const std::vector<Label>& labels,
                                 const Config& cfg,
                                 TrainingSummary* summary = nullptr);

struct ActivationPattern {
  Eigen::VectorXd pattern;  // length k, forward-model transform of the weights
  Eigen::MatrixXd map;      // channels x samples back-projection
};

// Forward-model (activation) pattern a = S_x w / (w' S_x w) of a trained
// discriminant over its training features, back-projected through the PCA
// basis to a channel x time map for inspection.
ActivationPattern activation_pattern(const LdaModel& lda,
                                     const features::PcaModel& pca,
                                     const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                     int channels, int samples);

}  // namespace errp::classifier
