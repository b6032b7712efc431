#pragma once

#include "errp/types.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace errp::features {

// Onset around which an epoch is cut.
struct OnsetSpec {
  double time_s;
  Label label;
  int trial_id{-1};
  int participant_id{-1};
};

struct EpochWindow {
  double offset_s{0.300};  // epoch starts offset_s after the onset
  double length_s{0.450};
};

struct ExtractedEpochs {
  std::vector<Epoch> epochs;
  int skipped{0};  // onsets whose epoch fell outside the recording
};

// Cuts one epoch per onset from a (channels x frames) recording. Epochs that
// would run past either end of the recording are skipped and counted.
ExtractedEpochs extract_epochs(const Eigen::Ref<const Eigen::MatrixXd>& signal,
                               double sample_rate_hz,
                               const std::vector<OnsetSpec>& onsets,
                               const EpochWindow& window = {});

// Stacks flattened epochs into the n x p feature matrix (canonical
// channel-major order, see flatten_epoch).
Eigen::MatrixXd epoch_matrix(const std::vector<Epoch>& epochs);
std::vector<Label> epoch_labels(const std::vector<Epoch>& epochs);

struct PcaModel {
  Eigen::VectorXd mean;                       // p
  Eigen::MatrixXd components;                 // p x k, orthonormal columns
  Eigen::VectorXd explained_variance;         // k, sample variance per component
  Eigen::VectorXd explained_variance_ratio;   // k, fraction of total variance

  int k() const { return static_cast<int>(components.cols()); }
  int dim() const { return static_cast<int>(mean.size()); }

  Eigen::VectorXd project(const Eigen::Ref<const Eigen::VectorXd>& flat) const;
  Eigen::VectorXd project_epoch(const Epoch& epoch) const;
  // Rows of X are flattened epochs; returns n x k.
  Eigen::MatrixXd project_rows(const Eigen::Ref<const Eigen::MatrixXd>& X) const;
};

// PCA of the rows of X (n x p), retaining the smallest k whose cumulative
// explained-variance ratio reaches variance_target. Centered on the global
// mean; computed on the thin side (Gram matrix when n <= p), so the feature
// dimension can far exceed the epoch count. Component signs are canonical:
// the largest-magnitude coordinate of each component is positive.
PcaModel fit_pca(const Eigen::Ref<const Eigen::MatrixXd>& X, double variance_target);

struct OutlierRejection {
  std::vector<int> kept;               // ascending original indices
  std::vector<int> rejected;           // ascending original indices
  std::vector<double> distances;       // squared Mahalanobis distance per epoch
  int rejected_correct{0};
  int rejected_error{0};
};

// Removes, per class, the ceil(fraction * class size) epochs with largest
// Mahalanobis distance to their class mean, measured in the PCA space of a
// preliminary fit of all rows at variance_target. Near-singular class
// covariances are ridge-regularized instead of failing.
OutlierRejection reject_outliers_mahalanobis(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                             const std::vector<Label>& labels,
                                             double fraction,
                                             double variance_target);

}  // namespace errp::features
