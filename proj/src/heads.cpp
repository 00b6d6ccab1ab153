#include "mwp/heads.hpp"

#include "mwp/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mwp {

using nlohmann::json;

std::string_view to_string(HeadTask task) {
  switch (task) {
    case HeadTask::NumCount: return "NumCount";
    case HeadTask::NTGround: return "NTGround";
    case HeadTask::ATPred: return "ATPred";
    case HeadTask::CATComp: return "CATComp";
    case HeadTask::NumMComp: return "NumMComp";
    case HeadTask::OPred: return "OPred";
    case HeadTask::TPred: return "TPred";
  }
  return "?";
}

HeadTask head_task_from_string(std::string_view name) {
  for (HeadTask t : kHeadTasks)
    if (to_string(t) == name) return t;
  throw Error(Errc::InvalidArgument, "unknown head task '" + std::string(name) + "'");
}

HeadInput head_input(HeadTask task) {
  switch (task) {
    case HeadTask::NumCount:
    case HeadTask::ATPred: return HeadInput::Mean;
    case HeadTask::NTGround:
    case HeadTask::CATComp:
    case HeadTask::NumMComp: return HeadInput::Quantity;
    case HeadTask::OPred:
    case HeadTask::TPred: return HeadInput::Pair;
  }
  return HeadInput::Mean;
}

bool is_regression(HeadTask task) { return task == HeadTask::NumCount || task == HeadTask::TPred; }

std::size_t head_output_dim(HeadTask task) {
  if (is_regression(task)) return 1;
  return task == HeadTask::OPred ? 5 : 2;
}

std::size_t head_input_dim(HeadTask task, std::size_t h) {
  return head_input(task) == HeadInput::Pair ? 2 * h : h;
}

// ---------------------------------------------------------------------------
// Params

HeadParams HeadParams::zeros(std::size_t in, std::size_t hidden, std::size_t out) {
  HeadParams p;
  p.w1 = Eigen::MatrixXd::Zero(hidden, in);
  p.b1 = Eigen::VectorXd::Zero(hidden);
  p.w2 = Eigen::MatrixXd::Zero(out, hidden);
  p.b2 = Eigen::VectorXd::Zero(out);
  return p;
}

HeadParams HeadParams::for_task(HeadTask task, std::size_t h, std::size_t hidden) {
  return zeros(head_input_dim(task, h), hidden, head_output_dim(task));
}

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::MatrixXd matrix_from(const json& j, const char* name) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(Errc::DimensionMismatch, std::string(name) + " must be a non-empty nested array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw Error(Errc::DimensionMismatch, std::string(name) + " has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from(const json& j, const char* name) {
  if (!j.is_array()) throw Error(Errc::DimensionMismatch, std::string(name) + " must be an array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

void validate(const HeadParams& p) {
  if (p.b1.size() != p.w1.rows() || p.w2.cols() != p.w1.rows() || p.b2.size() != p.w2.rows()) {
    throw Error(Errc::DimensionMismatch, "inconsistent head parameter shapes");
  }
  if (!p.w1.allFinite() || !p.b1.allFinite() || !p.w2.allFinite() || !p.b2.allFinite()) {
    throw Error(Errc::InvalidArgument, "head parameters must be finite");
  }
}

}  // namespace

json HeadParams::to_json() const {
  return {{"w1", matrix_json(w1)}, {"b1", vector_json(b1)}, {"w2", matrix_json(w2)}, {"b2", vector_json(b2)}};
}

HeadParams HeadParams::from_json(const json& j) {
  HeadParams p;
  p.w1 = matrix_from(j.at("w1"), "w1");
  p.b1 = vector_from(j.at("b1"), "b1");
  p.w2 = matrix_from(j.at("w2"), "w2");
  p.b2 = vector_from(j.at("b2"), "b2");
  validate(p);
  return p;
}

EmbeddingMatrix::EmbeddingMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0) throw Error(Errc::DimensionMismatch, "embedding matrix is empty");
  mean_ = rows_.colwise().mean().transpose();
}

// ---------------------------------------------------------------------------
// Forward / backward

Eigen::VectorXd ffn_forward(const HeadParams& params, const Eigen::VectorXd& x) {
  validate(params);
  if (static_cast<std::size_t>(x.size()) != params.input_dim()) {
    throw Error(Errc::DimensionMismatch, "input has dimension " + std::to_string(x.size()) + ", head expects " +
                                             std::to_string(params.input_dim()));
  }
  const Eigen::VectorXd hidden = (params.w1 * x + params.b1).cwiseMax(0.0);
  return params.w2 * hidden + params.b2;
}

namespace {

void check_shapes(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z) {
  validate(params);
  if (params.input_dim() != head_input_dim(task, z.h())) {
    throw Error(Errc::DimensionMismatch, std::string(to_string(task)) + " head expects input width " +
                                             std::to_string(head_input_dim(task, z.h())) + ", params have " +
                                             std::to_string(params.input_dim()));
  }
  if (params.output_dim() != head_output_dim(task)) {
    throw Error(Errc::DimensionMismatch, std::string(to_string(task)) + " head expects " +
                                             std::to_string(head_output_dim(task)) + " outputs");
  }
}

void check_instance(HeadTask task, const EmbeddingMatrix& z, const HeadInstance& inst) {
  const int m = static_cast<int>(z.m());
  const HeadInput input = head_input(task);
  if (input != HeadInput::Mean && (inst.i < 0 || inst.i >= m)) {
    throw Error(Errc::InvalidInstance, "row index " + std::to_string(inst.i) + " out of range");
  }
  if (input == HeadInput::Pair && (inst.j < 0 || inst.j >= m)) {
    throw Error(Errc::InvalidInstance, "row index " + std::to_string(inst.j) + " out of range");
  }
  if (!is_regression(task)) {
    const double c = inst.target;
    if (c != std::floor(c) || c < 0 || c >= static_cast<double>(head_output_dim(task))) {
      throw Error(Errc::InvalidInstance, "class target out of range");
    }
  } else if (!std::isfinite(inst.target)) {
    throw Error(Errc::InvalidInstance, "regression target must be finite");
  }
}

Eigen::VectorXd gather_input(HeadTask task, const EmbeddingMatrix& z, const HeadInstance& inst) {
  switch (head_input(task)) {
    case HeadInput::Mean: return z.mean();
    case HeadInput::Quantity: return z.rows().row(inst.i).transpose();
    case HeadInput::Pair: {
      Eigen::VectorXd x(2 * z.h());
      x << z.rows().row(inst.i).transpose(), z.rows().row(inst.j).transpose();
      return x;
    }
  }
  return {};
}

std::vector<HeadInstance> canonical_order(std::span<const HeadInstance> instances) {
  std::vector<HeadInstance> sorted(instances.begin(), instances.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const HeadInstance& a, const HeadInstance& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.target < b.target;
  });
  return sorted;
}

double log_sum_exp(const Eigen::VectorXd& v) {
  const double mx = v.maxCoeff();
  return mx + std::log((v.array() - mx).exp().sum());
}

// Loss for one instance and d(loss)/d(output).
double instance_loss(HeadTask task, const Eigen::VectorXd& out, double target, Eigen::VectorXd* d_out) {
  if (is_regression(task)) {
    const double diff = out(0) - target;
    if (d_out) *d_out = Eigen::VectorXd::Constant(1, 2.0 * diff);
    return diff * diff;
  }
  const auto cls = static_cast<Eigen::Index>(target);
  const double lse = log_sum_exp(out);
  if (d_out) {
    *d_out = (out.array() - lse).exp().matrix();
    (*d_out)(cls) -= 1.0;
  }
  return lse - out(cls);
}

}  // namespace

namespace {

// Per-instance losses in canonical order; loss_forward is their running sum.
std::vector<double> instance_losses(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                                    std::span<const HeadInstance> instances) {
  check_shapes(task, params, z);
  std::vector<double> out;
  out.reserve(instances.size());
  for (const HeadInstance& inst : canonical_order(instances)) {
    check_instance(task, z, inst);
    const Eigen::VectorXd x = gather_input(task, z, inst);
    const Eigen::VectorXd hidden = (params.w1 * x + params.b1).cwiseMax(0.0);
    const Eigen::VectorXd out_vec = params.w2 * hidden + params.b2;
    out.push_back(instance_loss(task, out_vec, inst.target, nullptr));
  }
  return out;
}

}  // namespace

double loss_forward(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                    std::span<const HeadInstance> instances) {
  double total = 0.0;
  for (double l : instance_losses(task, params, z, instances)) total += l;
  return total;
}

LossGradients loss_backward(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                            std::span<const HeadInstance> instances) {
  check_shapes(task, params, z);
  LossGradients g;
  g.d_params = HeadParams::zeros(params.input_dim(), params.hidden_dim(), params.output_dim());
  g.d_inputs = Eigen::MatrixXd::Zero(z.m(), z.h());
  const Eigen::Index h = static_cast<Eigen::Index>(z.h());

  for (const HeadInstance& inst : canonical_order(instances)) {
    check_instance(task, z, inst);
    const Eigen::VectorXd x = gather_input(task, z, inst);
    const Eigen::VectorXd pre = params.w1 * x + params.b1;
    const Eigen::VectorXd hidden = pre.cwiseMax(0.0);
    const Eigen::VectorXd out = params.w2 * hidden + params.b2;

    Eigen::VectorXd d_out;
    g.loss += instance_loss(task, out, inst.target, &d_out);

    g.d_params.w2 += d_out * hidden.transpose();
    g.d_params.b2 += d_out;
    // ReLU subgradient at 0 is 0.
    const Eigen::VectorXd d_pre =
        ((params.w2.transpose() * d_out).array() * (pre.array() > 0.0).cast<double>()).matrix();
    g.d_params.w1 += d_pre * x.transpose();
    g.d_params.b1 += d_pre;
    const Eigen::VectorXd d_x = params.w1.transpose() * d_pre;

    switch (head_input(task)) {
      case HeadInput::Mean:
        g.d_inputs.rowwise() += (d_x / static_cast<double>(z.m())).transpose();
        break;
      case HeadInput::Quantity:
        g.d_inputs.row(inst.i) += d_x.transpose();
        break;
      case HeadInput::Pair:
        g.d_inputs.row(inst.i) += d_x.head(h).transpose();
        g.d_inputs.row(inst.j) += d_x.tail(h).transpose();
        break;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Gradient check

json GradCheckReport::to_json() const {
  return {{"task", to_string(task)}, {"max_rel_err", max_rel_err}, {"argmax_coord", argmax_coord},
          {"coordinates", coordinates}};
}

GradCheckReport grad_check(HeadTask task, const HeadParams& params, const EmbeddingMatrix& z,
                           std::span<const HeadInstance> instances, double step) {
  const LossGradients analytic = loss_backward(task, params, z, instances);
  GradCheckReport report;
  report.task = task;

  // Differences are taken per instance before summing, which keeps the
  // cancellation error at the scale of one term instead of the whole loss.
  auto central = [&](const HeadParams& plus_p, const EmbeddingMatrix& plus_z, const HeadParams& minus_p,
                     const EmbeddingMatrix& minus_z) {
    const auto lp = instance_losses(task, plus_p, plus_z, instances);
    const auto lm = instance_losses(task, minus_p, minus_z, instances);
    double d = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) d += lp[i] - lm[i];
    return d / (2 * step);
  };

  auto record = [&](double a, double n, std::string coord) {
    const double err = std::abs(a - n) / std::max({1.0, std::abs(a), std::abs(n)});
    ++report.coordinates;
    if (report.argmax_coord.empty() || err > report.max_rel_err) {
      report.max_rel_err = err;
      report.argmax_coord = std::move(coord);
    }
  };

  auto probe_matrix = [&](Eigen::MatrixXd HeadParams::*member, const char* name) {
    const Eigen::MatrixXd& grad = analytic.d_params.*member;
    for (Eigen::Index r = 0; r < grad.rows(); ++r) {
      for (Eigen::Index c = 0; c < grad.cols(); ++c) {
        HeadParams plus = params, minus = params;
        (plus.*member)(r, c) += step;
        (minus.*member)(r, c) -= step;
        const double numeric = central(plus, z, minus, z);
        record(grad(r, c), numeric, std::string(name) + "[" + std::to_string(r) + "," + std::to_string(c) + "]");
      }
    }
  };
  auto probe_vector = [&](Eigen::VectorXd HeadParams::*member, const char* name) {
    const Eigen::VectorXd& grad = analytic.d_params.*member;
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      HeadParams plus = params, minus = params;
      (plus.*member)(i) += step;
      (minus.*member)(i) -= step;
      const double numeric = central(plus, z, minus, z);
      record(grad(i), numeric, std::string(name) + "[" + std::to_string(i) + "]");
    }
  };

  probe_matrix(&HeadParams::w1, "w1");
  probe_vector(&HeadParams::b1, "b1");
  probe_matrix(&HeadParams::w2, "w2");
  probe_vector(&HeadParams::b2, "b2");

  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(z.m()); ++r) {
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(z.h()); ++c) {
      Eigen::MatrixXd plus = z.rows(), minus = z.rows();
      plus(r, c) += step;
      minus(r, c) -= step;
      const double numeric = central(params, EmbeddingMatrix(plus), params, EmbeddingMatrix(minus));
      record(analytic.d_inputs(r, c), numeric, "z[" + std::to_string(r) + "," + std::to_string(c) + "]");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Random configurations

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
};

Eigen::MatrixXd random_matrix(Uniform& u, Eigen::Index rows, Eigen::Index cols, double scale) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = u(-scale, scale);
  return m;
}

}  // namespace

HeadConfig random_head_config(HeadTask task, std::size_t h, std::size_t hidden, std::size_t rows,
                              std::size_t instance_count, std::uint64_t seed, double margin) {
  if (h == 0 || hidden == 0 || rows < 2) throw Error(Errc::InvalidArgument, "degenerate head configuration");
  Uniform u(seed);
  const auto in = static_cast<Eigen::Index>(head_input_dim(task, h));
  const auto out = static_cast<Eigen::Index>(head_output_dim(task));

  HeadConfig cfg;
  cfg.instances.reserve(instance_count);
  for (std::size_t n = 0; n < instance_count; ++n) {
    HeadInstance inst;
    if (head_input(task) != HeadInput::Mean) inst.i = static_cast<int>(u.below(rows));
    if (head_input(task) == HeadInput::Pair) {
      do inst.j = static_cast<int>(u.below(rows));
      while (inst.j == inst.i);
    }
    if (task == HeadTask::NumCount) inst.target = static_cast<double>(u.below(16));
    else if (task == HeadTask::TPred) inst.target = static_cast<double>(u.below(9)) - 4.0;
    else inst.target = static_cast<double>(u.below(head_output_dim(task)));
    cfg.instances.push_back(inst);
  }

  for (int attempt = 0;; ++attempt) {
    cfg.params.w1 = random_matrix(u, hidden, in, 1.0);
    cfg.params.b1 = random_matrix(u, hidden, 1, 0.5);
    cfg.params.w2 = random_matrix(u, out, hidden, 1.0);
    cfg.params.b2 = random_matrix(u, out, 1, 0.5);
    cfg.z = EmbeddingMatrix(random_matrix(u, rows, h, 1.0));

    bool smooth = true;
    for (const auto& inst : cfg.instances) {
      const Eigen::VectorXd x = gather_input(task, cfg.z, inst);
      const Eigen::VectorXd pre = cfg.params.w1 * x + cfg.params.b1;
      if ((pre.array().abs() < margin).any()) {
        smooth = false;
        break;
      }
    }
    if (smooth) return cfg;
    if (attempt > 1000) throw Error(Errc::InvalidArgument, "could not draw a kink-free configuration");
  }
}

}  // namespace mwp
