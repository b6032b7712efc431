#pragma once

#include "errp/dsp.hpp"

#include <string>

namespace errp {

// Every tunable of the pipeline and simulator in one place, so experiments
// and tests pin constants from a single source. Serializable as a flat
// key = value text file (see load/save below).
struct Config {
  // Acquisition
  double sample_rate_hz{500.0};
  int channels{61};

  // Filtering (shared by the online causal path and the offline analysis path)
  double filter_low_hz{1.0};
  double filter_high_hz{10.0};
  int filter_order{4};

  // Epochs / features
  double epoch_offset_s{0.300};   // epoch starts this long after the onset
  double epoch_length_s{0.450};
  double pca_variance_target{0.99};
  double outlier_fraction{0.01};  // per-class Mahalanobis rejection rate

  // Asynchronous detection
  double window_length_s{0.450};
  double window_leap_s{0.018};
  int consecutive_windows{2};
  double initial_tau{0.7};

  // Threshold personalization
  double tau_grid_step{0.025};    // grid spans [0, 1] inclusive
  int smoothing_window{7};
  int adaptation_blocks{3};       // re-optimize tau after each of these blocks

  // Trial-based metrics
  double tp_window_s{1.5};        // detection must fall within this after onset
  double far_interval_s{1.0};

  // Protocol / simulator
  int blocks_per_session{8};
  int trials_per_block{30};
  int error_trials_per_block{9};
  int max_consecutive_errors{2};
  int max_consecutive_same_target{3};
  int eval_first_block{4};        // evaluation uses blocks [first, last]
  int eval_last_block{8};
  double robot_speed_cm_s{8.0};
  double error_distance_min_cm{6.0};
  double error_distance_max_cm{15.0};
  double marker_delay_s{0.225};   // recorded marker -> actual error onset
  double trial_timeout_s{6.0};
  double trial_extension_s{6.0};  // added to the timeout on first detection
  double correct_duration_mean_s{2.05};
  double correct_duration_sd_s{0.13};
  double correct_duration_min_s{1.5};
  double regain_duration_mean_s{1.5};  // detection -> target reached
  double regain_duration_sd_s{0.3};
  double inter_trial_gap_s{1.5};

  // Synthetic EEG
  double template_neg_peak_uv{-5.5};
  double template_neg_latency_s{0.176};
  double template_pos_peak_uv{5.8};
  double template_pos_latency_s{0.334};
  double template_lobe_sd_s{0.040};
  double template_space_constant_spacings{2.0};  // exponential falloff from FCz
  double noise_level_uv{4.0};     // per-channel background rms, raw
  double noise_white_fraction{0.03};  // share of background rms that is white
  int noise_spatial_rank{24};     // number of mixed pink background sources

  // Evaluation statistics
  int permutations_online{500};
  int permutations_cv{50};
  int cv_repetitions{10};
  int cv_folds{5};
  double erp_alpha{0.01};

  // Training corpus defaults (donor participants for the generic model)
  int training_participants{15};
  int training_blocks_per_participant{8};

  int epoch_samples() const;
  int window_samples() const;
  int leap_samples() const;
  int feature_dim() const;
  int tau_grid_size() const;   // 41 for step 0.025
  dsp::FilterSpec filter_spec() const;

  void validate() const;
};

// Flat key = value serialization. Unknown keys are rejected; '#' starts a
// comment. save() writes every key so a round-tripped file is complete.
Config load_config(const std::string& path);
void save_config(const Config& cfg, const std::string& path);
Config parse_config_text(const std::string& text);
std::string config_to_text(const Config& cfg);

}  // namespace errp
