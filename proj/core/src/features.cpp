#include "errp/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace errp::features {

ExtractedEpochs extract_epochs(const Eigen::Ref<const Eigen::MatrixXd>& signal,
                               double sample_rate_hz,
                               const std::vector<OnsetSpec>& onsets,
                               const EpochWindow& window) {
  if (sample_rate_hz <= 0) throw std::invalid_argument("extract_epochs: bad sample rate");
  const int n_samples = static_cast<int>(std::lround(window.length_s * sample_rate_hz));
  if (n_samples <= 0) throw std::invalid_argument("extract_epochs: bad epoch length");

  ExtractedEpochs out;
  for (const auto& onset : onsets) {
    const long start = std::lround((onset.time_s + window.offset_s) * sample_rate_hz);
    if (start < 0 || start + n_samples > signal.cols()) {
      ++out.skipped;
      continue;
    }
    Epoch e;
    e.data = signal.middleCols(start, n_samples);
    e.label = onset.label;
    e.onset_time = onset.time_s;
    e.trial_id = onset.trial_id;
    e.participant_id = onset.participant_id;
    out.epochs.push_back(std::move(e));
  }
  return out;
}

Eigen::MatrixXd epoch_matrix(const std::vector<Epoch>& epochs) {
  if (epochs.empty()) return {};
  const Eigen::Index p = epochs.front().data.size();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(epochs.size()), p);
  for (size_t i = 0; i < epochs.size(); ++i) {
    if (epochs[i].data.size() != p)
      throw std::invalid_argument("epoch_matrix: inconsistent epoch shapes");
    X.row(static_cast<Eigen::Index>(i)) = flatten_epoch(epochs[i].data).transpose();
  }
  return X;
}

std::vector<Label> epoch_labels(const std::vector<Epoch>& epochs) {
  std::vector<Label> out;
  out.reserve(epochs.size());
  for (const auto& e : epochs) out.push_back(e.label);
  return out;
}

Eigen::VectorXd PcaModel::project(const Eigen::Ref<const Eigen::VectorXd>& flat) const {
  if (flat.size() != mean.size())
    throw std::invalid_argument("PcaModel::project: dimension mismatch");
  return components.transpose() * (flat - mean);
}

Eigen::VectorXd PcaModel::project_epoch(const Epoch& epoch) const {
  return project(flatten_epoch(epoch.data));
}

Eigen::MatrixXd PcaModel::project_rows(const Eigen::Ref<const Eigen::MatrixXd>& X) const {
  if (X.cols() != mean.size())
    throw std::invalid_argument("PcaModel::project_rows: dimension mismatch");
  return (X.rowwise() - mean.transpose()) * components;
}

namespace {

void canonicalize_sign(Eigen::MatrixXd& components) {
  for (Eigen::Index c = 0; c < components.cols(); ++c) {
    Eigen::Index at = 0;
    components.col(c).cwiseAbs().maxCoeff(&at);
    if (components(at, c) < 0) components.col(c) = -components.col(c);
  }
}

// Eigenvalues below this relative floor are treated as numerical rank
// deficiency. Components beyond the floor are never retained, which also
// keeps the Gram-route back-projection orthonormal to ~1e-10.
constexpr double kRankFloor = 1e-10;

}  // namespace

PcaModel fit_pca(const Eigen::Ref<const Eigen::MatrixXd>& X, double variance_target) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n < 2) throw std::invalid_argument("fit_pca: need at least 2 epochs");
  if (!(variance_target > 0.0) || variance_target > 1.0)
    throw std::invalid_argument("fit_pca: variance target must be in (0, 1]");

  PcaModel model;
  model.mean = X.colwise().mean();
  Eigen::MatrixXd C = X.rowwise() - model.mean.transpose();

  Eigen::VectorXd eigenvalues;  // descending, of C^T C
  Eigen::MatrixXd directions;   // p x r, orthonormal
  if (n <= p) {
    const Eigen::MatrixXd G = C * C.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigensolver failed");
    const Eigen::Index r = G.rows();
    eigenvalues = es.eigenvalues().reverse();
    Eigen::MatrixXd V(n, r);
    for (Eigen::Index i = 0; i < r; ++i) V.col(i) = es.eigenvectors().col(r - 1 - i);
    const double lmax = std::max(eigenvalues(0), 0.0);
    if (lmax <= 0.0) throw std::invalid_argument("fit_pca: degenerate (constant) data");
    Eigen::Index rank = 0;
    while (rank < r && eigenvalues(rank) > lmax * kRankFloor) ++rank;
    directions.resize(p, rank);
    for (Eigen::Index i = 0; i < rank; ++i)
      directions.col(i) = (C.transpose() * V.col(i)) / std::sqrt(eigenvalues(i));
    eigenvalues.conservativeResize(rank);
  } else {
    const Eigen::MatrixXd S = C.transpose() * C;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigensolver failed");
    eigenvalues = es.eigenvalues().reverse();
    const double lmax = std::max(eigenvalues(0), 0.0);
    if (lmax <= 0.0) throw std::invalid_argument("fit_pca: degenerate (constant) data");
    Eigen::Index rank = 0;
    while (rank < p && eigenvalues(rank) > lmax * kRankFloor) ++rank;
    directions.resize(p, rank);
    for (Eigen::Index i = 0; i < rank; ++i) directions.col(i) = es.eigenvectors().col(p - 1 - i);
    eigenvalues.conservativeResize(rank);
  }

  const double total = eigenvalues.sum();
  Eigen::Index k = static_cast<Eigen::Index>(eigenvalues.size());
  if (variance_target < 1.0) {
    double cum = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
      cum += eigenvalues(i);
      if (cum / total >= variance_target - 1e-12) {
        k = i + 1;
        break;
      }
    }
  }

  model.components = directions.leftCols(k);
  canonicalize_sign(model.components);
  model.explained_variance = eigenvalues.head(k) / static_cast<double>(n - 1);
  model.explained_variance_ratio = eigenvalues.head(k) / total;
  return model;
}

OutlierRejection reject_outliers_mahalanobis(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                             const std::vector<Label>& labels,
                                             double fraction,
                                             double variance_target) {
  const Eigen::Index n = X.rows();
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw std::invalid_argument("reject_outliers: label count mismatch");
  if (fraction < 0.0 || fraction >= 0.5)
    throw std::invalid_argument("reject_outliers: fraction must be in [0, 0.5)");
  const bool has_correct = std::find(labels.begin(), labels.end(), Label::correct) != labels.end();
  const bool has_error = std::find(labels.begin(), labels.end(), Label::error) != labels.end();
  if (!has_correct || !has_error)
    throw std::invalid_argument("reject_outliers: both classes must be present");

  OutlierRejection out;
  out.distances.assign(static_cast<size_t>(n), 0.0);

  const PcaModel pca = fit_pca(X, variance_target);
  const Eigen::MatrixXd Z = pca.project_rows(X);
  const Eigen::Index k = Z.cols();

  for (const Label cls : {Label::correct, Label::error}) {
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if (labels[static_cast<size_t>(i)] == cls) idx.push_back(static_cast<int>(i));
    const Eigen::Index m = static_cast<Eigen::Index>(idx.size());

    Eigen::MatrixXd Zc(m, k);
    for (Eigen::Index i = 0; i < m; ++i) Zc.row(i) = Z.row(idx[static_cast<size_t>(i)]);
    const Eigen::RowVectorXd mu = Zc.colwise().mean();
    Zc.rowwise() -= mu;
    Eigen::MatrixXd cov = (Zc.transpose() * Zc) / std::max<double>(1.0, static_cast<double>(m - 1));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    const double lmin = lam.minCoeff();
    const double trace = lam.sum();
    if (!(lmin > 0.0) || lmax / lmin > 1e10) {
      // Ridge on the diagonal shifts every eigenvalue by the same amount.
      const double ridge = std::max(1e-8 * trace / static_cast<double>(k), 1e-300);
      lam.array() += ridge;
    }
    for (Eigen::Index j = 0; j < lam.size(); ++j)
      lam(j) = std::max(lam(j), std::max(lmax, 1.0) * 1e-15);

    const Eigen::MatrixXd W = Zc * es.eigenvectors();  // coordinates in the eigenbasis
    for (Eigen::Index i = 0; i < m; ++i) {
      double d2 = 0.0;
      for (Eigen::Index j = 0; j < k; ++j) d2 += W(i, j) * W(i, j) / lam(j);
      out.distances[static_cast<size_t>(idx[static_cast<size_t>(i)])] = d2;
    }

    const int reject_count =
        fraction > 0.0 ? static_cast<int>(std::ceil(fraction * static_cast<double>(m))) : 0;
    std::vector<int> order(idx.begin(), idx.end());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return out.distances[static_cast<size_t>(a)] > out.distances[static_cast<size_t>(b)];
    });
    for (int i = 0; i < reject_count && i < static_cast<int>(order.size()); ++i) {
      out.rejected.push_back(order[static_cast<size_t>(i)]);
      if (cls == Label::correct)
        ++out.rejected_correct;
      else
        ++out.rejected_error;
    }
  }

  std::sort(out.rejected.begin(), out.rejected.end());
  out.kept.reserve(static_cast<size_t>(n) - out.rejected.size());
  size_t r = 0;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (r < out.rejected.size() && out.rejected[r] == i) {
      ++r;
      continue;
    }
    out.kept.push_back(i);
  }
  return out;
}

}  // namespace errp::features
