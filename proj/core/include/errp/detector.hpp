#pragma once

#include "errp/classifier.hpp"
#include "errp/dsp.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace errp::detector {

// A detection: two consecutive windows exceeded tau; `time` is the end time
// of the second window, `probability` its error-class probability.
struct DetectionEvent {
  double time;
  double probability;
};

struct ProbabilitySample {
  double time;  // end time of the analyzed window
  double p_error;
};

struct DetectorOutput {
  std::vector<ProbabilitySample> probabilities;
  std::vector<DetectionEvent> events;
};

// Detection rule parameters. With single_event_per_run (the default), a
// maximal run of consecutive supra-threshold windows emits exactly one event,
// at its `consecutive`-th window; re-arming requires a sub-threshold window.
// Flipping the flag emits at every window that extends a qualifying run.
struct DetectionRule {
  double tau{0.7};
  int consecutive{2};
  bool single_event_per_run{true};
};

// Applies the rule to a whole probability sequence at once; returns the
// 0-based indices of triggering windows. Supra-threshold means p > tau,
// strictly.
std::vector<int> apply_detection_rule(std::span<const double> probabilities,
                                      const DetectionRule& rule);

// Incremental form of the same rule, fed one window at a time. The streaming
// detector uses this; apply_detection_rule is the batch equivalent.
class RuleState {
 public:
  explicit RuleState(DetectionRule rule) : rule_(rule) {}
  // Returns true if this window triggers an event.
  bool step(double p_error);
  void reset();
  const DetectionRule& rule() const { return rule_; }
  void set_tau(double tau) { rule_.tau = tau; }

 private:
  DetectionRule rule_;
  int run_length_{0};
  bool armed_{true};
};

// Scores one complete window, given in canonical flattened (channel-major)
// order. Returns the error-class probability.
using WindowScorer = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

struct DetectorParams {
  int channels{61};
  double sample_rate_hz{500.0};
  int window_samples{225};
  int leap_samples{9};
  DetectionRule rule;
  dsp::SosCascade filter;  // applied causally to incoming raw samples
};

// Asynchronous sliding-window detector. Push raw chunks in any partition;
// outputs depend only on the concatenated sample stream. One instance per
// stream; not shareable while in use.
class AsyncDetector {
 public:
  // Model-backed detector: causal filtering per the model's filter spec, then
  // the collapsed PCA+LDA score per window.
  explicit AsyncDetector(const classifier::GenericModel& model);

  // Custom scorer (e.g. a scripted stub for tests).
  AsyncDetector(DetectorParams params, WindowScorer scorer);

  DetectorOutput push(const Eigen::Ref<const Eigen::MatrixXd>& chunk);
  void reset();

  double tau() const { return rule_state_.rule().tau; }
  void set_tau(double tau) { rule_state_.set_tau(tau); }

  int channels() const { return params_.channels; }
  int window_samples() const { return params_.window_samples; }
  int leap_samples() const { return params_.leap_samples; }
  int64_t samples_consumed() const { return total_samples_; }
  int64_t windows_emitted() const { return windows_emitted_; }
  const std::vector<DetectionEvent>& emitted_events() const { return emitted_; }

 private:
  void init_buffers();
  double score_current_window();

  DetectorParams params_;
  WindowScorer scorer_;
  dsp::FilterState filter_state_;
  RuleState rule_state_;

  Eigen::MatrixXd ring_;        // channels x capacity, circular over columns
  Eigen::VectorXd scratch_;     // flattened window in canonical order
  int capacity_{0};
  int64_t total_samples_{0};
  int64_t next_window_end_{0};  // in samples
  int64_t windows_emitted_{0};
  std::vector<DetectionEvent> emitted_;
};

// Scorer wrapping a trained model: dot product with the collapsed
// spatiotemporal template, then the logistic. Numerically equivalent to
// model.predict_probability on the same window.
WindowScorer make_model_scorer(const classifier::GenericModel& model);

}  // namespace errp::detector
