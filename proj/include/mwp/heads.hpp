#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwp {

enum class HeadTask { NumCount, NTGround, ATPred, CATComp, NumMComp, OPred, TPred };

inline constexpr std::array<HeadTask, 7> kHeadTasks = {
    HeadTask::NumCount, HeadTask::NTGround, HeadTask::ATPred, HeadTask::CATComp,
    HeadTask::NumMComp, HeadTask::OPred,    HeadTask::TPred,
};

std::string_view to_string(HeadTask task);
HeadTask head_task_from_string(std::string_view name);

/// What a head reads: the mean row, one quantity row, or two rows
/// concatenated.
enum class HeadInput { Mean, Quantity, Pair };

HeadInput head_input(HeadTask task);
bool is_regression(HeadTask task);
/// 1 for regression heads, 2 for binary heads, 5 for the operator head.
std::size_t head_output_dim(HeadTask task);
std::size_t head_input_dim(HeadTask task, std::size_t h);

/// Two fully connected layers with a ReLU between them:
/// out = w2 * relu(w1 * x + b1) + b2. w1 is hidden x in, w2 is out x hidden.
struct HeadParams {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;

  static HeadParams zeros(std::size_t in, std::size_t hidden, std::size_t out);
  static HeadParams for_task(HeadTask task, std::size_t h, std::size_t hidden);

  std::size_t input_dim() const { return static_cast<std::size_t>(w1.cols()); }
  std::size_t hidden_dim() const { return static_cast<std::size_t>(w1.rows()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(w2.rows()); }
  std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }

  /// Row-major nested arrays: {"w1": [[..]], "b1": [..], "w2": [[..]], "b2": [..]}.
  nlohmann::json to_json() const;
  static HeadParams from_json(const nlohmann::json& j);
};

/// Token representations Z (m rows of width h) as produced by an encoder.
class EmbeddingMatrix {
 public:
  explicit EmbeddingMatrix(Eigen::MatrixXd rows);

  const Eigen::MatrixXd& rows() const { return rows_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  std::size_t m() const { return static_cast<std::size_t>(rows_.rows()); }
  std::size_t h() const { return static_cast<std::size_t>(rows_.cols()); }

 private:
  Eigen::MatrixXd rows_;
  Eigen::VectorXd mean_;
};

/// One loss term. Mean-input heads ignore i and j; quantity heads read row
/// i; pair heads read rows i and j. Classification targets are class
/// indices stored as doubles.
struct HeadInstance {
  int i = -1;
  int j = -1;
  double target = 0.0;
};

Eigen::VectorXd ffn_forward(const HeadParams& params, const Eigen::VectorXd& x);

/// Summed loss over instances (MSE for regression heads, softmax
/// cross-entropy otherwise), accumulated in ascending (i, j, target) order.
/// An empty instance set has loss 0.
double loss_forward(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                    std::span<const HeadInstance> instances);

struct LossGradients {
  double loss = 0.0;
  HeadParams d_params;
  Eigen::MatrixXd d_inputs;  // same shape as z.rows()
};

LossGradients loss_backward(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                            std::span<const HeadInstance> instances);

struct GradCheckReport {
  HeadTask task = HeadTask::NumCount;
  double max_rel_err = 0.0;
  std::string argmax_coord;  // e.g. "w1[3,0]" or "z[2,5]"
  std::size_t coordinates = 0;

  nlohmann::json to_json() const;
};

/// Central differences over every parameter and input coordinate; the
/// relative error is |analytic - numeric| / max(1, |analytic|, |numeric|).
GradCheckReport grad_check(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                           std::span<const HeadInstance> instances, double step = 1e-6);

struct HeadConfig {
  HeadParams params;
  EmbeddingMatrix z{Eigen::MatrixXd::Zero(1, 1)};
  std::vector<HeadInstance> instances;
};

/// Random parameters, embeddings and targets with every hidden
/// pre-activation at least `margin` away from the ReLU kink.
HeadConfig random_head_config(HeadTask task, std::size_t h, std::size_t hidden, std::size_t rows,
                              std::size_t instance_count, std::uint64_t seed, double margin = 1e-4);

}  // namespace mwp
