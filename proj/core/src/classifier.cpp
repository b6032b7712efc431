#include "errp/classifier.hpp"

#include <cmath>
#include <stdexcept>

namespace errp::classifier {

namespace {

struct ClassSplit {
  Eigen::VectorXd mean_correct;
  Eigen::VectorXd mean_error;
  Eigen::Index n_correct{0};
  Eigen::Index n_error{0};
};

ClassSplit class_means(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                       const std::vector<Label>& labels) {
  ClassSplit s;
  const Eigen::Index k = Z.cols();
  s.mean_correct = Eigen::VectorXd::Zero(k);
  s.mean_error = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    if (labels[static_cast<size_t>(i)] == Label::error) {
      s.mean_error += Z.row(i).transpose();
      ++s.n_error;
    } else {
      s.mean_correct += Z.row(i).transpose();
      ++s.n_correct;
    }
  }
  if (s.n_correct > 0) s.mean_correct /= static_cast<double>(s.n_correct);
  if (s.n_error > 0) s.mean_error /= static_cast<double>(s.n_error);
  return s;
}

}  // namespace

double logistic(double score) {
  if (score >= 0.0) return 1.0 / (1.0 + std::exp(-score));
  const double e = std::exp(score);
  return e / (1.0 + e);
}

LdaModel train_shrinkage_lda(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                             const std::vector<Label>& labels,
                             const LdaOptions& options) {
  const Eigen::Index n = Z.rows();
  const Eigen::Index k = Z.cols();
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw std::invalid_argument("train_shrinkage_lda: label count mismatch");
  if (n <= 2) throw std::invalid_argument("train_shrinkage_lda: need more than 2 samples");

  const ClassSplit split = class_means(Z, labels);
  if (split.n_correct == 0 || split.n_error == 0)
    throw std::invalid_argument("train_shrinkage_lda: both classes must be present");

  // Within-class centered samples.
  Eigen::MatrixXd C(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd& mu =
        labels[static_cast<size_t>(i)] == Label::error ? split.mean_error : split.mean_correct;
    C.row(i) = Z.row(i) - mu.transpose();
  }

  const double denom_cov = static_cast<double>(n - 2);  // two estimated means
  const Eigen::MatrixXd S = (C.transpose() * C) / denom_cov;
  const double nu = S.trace() / static_cast<double>(k);

  double gamma;
  if (options.shrinkage_override) {
    gamma = *options.shrinkage_override;
    if (gamma < 0.0 || gamma > 1.0)
      throw std::invalid_argument("train_shrinkage_lda: shrinkage override out of [0, 1]");
  } else {
    // Analytic shrinkage intensity toward nu I: the ratio of the summed
    // sampling variances of the covariance entries to the squared distance
    // between the sample covariance and the target.
    const double dn = static_cast<double>(n);
    const Eigen::MatrixXd C2 = C.cwiseProduct(C);
    const Eigen::MatrixXd Q = C2.transpose() * C2;        // sum_i c^2 c^2'
    const Eigen::MatrixXd M = C.transpose() * C;          // sum_i c c'
    const double sum_var =
        (Q.array() / dn - (M.array() / dn).square()).sum() * (dn / ((dn - 1.0) * (dn - 1.0)));
    Eigen::MatrixXd D = S;
    D.diagonal().array() -= nu;
    const double dist2 = D.squaredNorm();
    gamma = dist2 > 0.0 ? sum_var / dist2 : 1.0;
    gamma = std::clamp(gamma, 0.0, 1.0);
  }

  Eigen::MatrixXd shrunk = (1.0 - gamma) * S;
  shrunk.diagonal().array() += gamma * nu;

  LdaModel model;
  const Eigen::VectorXd delta = split.mean_error - split.mean_correct;
  model.weights = shrunk.ldlt().solve(delta);
  if (!model.weights.allFinite())
    throw std::runtime_error("train_shrinkage_lda: singular shrunk covariance");
  model.bias = -model.weights.dot(0.5 * (split.mean_error + split.mean_correct));
  model.shrinkage = gamma;
  return model;
}

int GenericModel::window_samples() const {
  return static_cast<int>(std::lround(window_seconds * filter.sample_rate_hz));
}

int GenericModel::leap_samples() const {
  return static_cast<int>(std::lround(leap_seconds * filter.sample_rate_hz));
}

double GenericModel::score_window(const Eigen::Ref<const Eigen::MatrixXd>& window) const {
  if (window.rows() != channels || window.cols() != window_samples())
    throw std::invalid_argument("GenericModel: window dimension mismatch");
  return lda.score(pca.project(flatten_epoch(window)));
}

std::pair<double, double> GenericModel::predict_probability(
    const Eigen::Ref<const Eigen::MatrixXd>& window) const {
  const double p_error = logistic(score_window(window));
  return {1.0 - p_error, p_error};
}

GenericModel::Collapsed GenericModel::collapse() const {
  Collapsed c;
  c.spatiotemporal = pca.components * lda.weights;
  c.offset = lda.bias - c.spatiotemporal.dot(pca.mean);
  return c;
}

GenericModel train_generic_model(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                 const std::vector<Label>& labels,
                                 const Config& cfg,
                                 TrainingSummary* summary) {
  const auto rejection = features::reject_outliers_mahalanobis(
      X, labels, cfg.outlier_fraction, cfg.pca_variance_target);

  Eigen::MatrixXd kept(static_cast<Eigen::Index>(rejection.kept.size()), X.cols());
  std::vector<Label> kept_labels;
  kept_labels.reserve(rejection.kept.size());
  for (size_t i = 0; i < rejection.kept.size(); ++i) {
    kept.row(static_cast<Eigen::Index>(i)) = X.row(rejection.kept[i]);
    kept_labels.push_back(labels[static_cast<size_t>(rejection.kept[i])]);
  }

  GenericModel model;
  model.filter = cfg.filter_spec();
  model.window_seconds = cfg.window_length_s;
  model.leap_seconds = cfg.window_leap_s;
  model.channels = cfg.channels;
  model.tau = cfg.initial_tau;
  model.pca = features::fit_pca(kept, cfg.pca_variance_target);
  const Eigen::MatrixXd Z = model.pca.project_rows(kept);
  model.lda = train_shrinkage_lda(Z, kept_labels);

  if (summary) {
    summary->epochs_total = static_cast<int>(X.rows());
    summary->epochs_kept = static_cast<int>(kept.rows());
    summary->rejected_correct = rejection.rejected_correct;
    summary->rejected_error = rejection.rejected_error;
    summary->pca_components = model.pca.k();
    summary->shrinkage = model.lda.shrinkage;
  }
  return model;
}

ActivationPattern activation_pattern(const LdaModel& lda,
                                     const features::PcaModel& pca,
                                     const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                     int channels, int samples) {
  const Eigen::Index n = Z.rows();
  if (n < 2) throw std::invalid_argument("activation_pattern: need at least 2 samples");
  const Eigen::RowVectorXd mu = Z.colwise().mean();
  const Eigen::MatrixXd C = Z.rowwise() - mu;
  const Eigen::MatrixXd cov = (C.transpose() * C) / static_cast<double>(n - 1);
  const Eigen::VectorXd cw = cov * lda.weights;
  const double denom = lda.weights.dot(cw);
  if (!(denom > 0.0))
    throw std::runtime_error("activation_pattern: weights have non-positive projected variance");

  ActivationPattern out;
  out.pattern = cw / denom;
  out.map = unflatten_epoch(pca.components * out.pattern, channels, samples);
  return out;
}

}  // namespace errp::classifier
