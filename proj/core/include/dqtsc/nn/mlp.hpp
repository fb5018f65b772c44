#pragma once

#include <span>
#include <vector>

#include "dqtsc/errors.hpp"
#include "dqtsc/nn/layers.hpp"
#include "dqtsc/nn/parameters.hpp"

namespace dqtsc::nn {

// Fully connected stack; layer i feeds layer i+1.
template <typename T>
class Mlp {
 public:
  using Input = std::vector<T>;
  using Scalar = T;

  Mlp(std::vector<LayerSpec> layers, std::uint64_t seed) : params_(std::move(layers)) {
    validate();
    params_.init_glorot(seed);
  }
  explicit Mlp(Parameters<T> params) : params_(std::move(params)) { validate(); }

  Parameters<T>& params() noexcept { return params_; }
  const Parameters<T>& params() const noexcept { return params_; }
  std::size_t input_width() const { return params_.layers().front().in; }
  std::size_t output_width() const { return params_.layers().back().out; }

  std::vector<double> forward(const Input& x) const {
    std::vector<std::vector<T>> acts;
    run(x, acts);
    return std::vector<double>(acts.back().begin(), acts.back().end());
  }

  // Adds scale * d/dtheta [0.5 * (q[action] - target)^2] to `grad`.
  double accumulate_gradient(const Input& x, int action, double target, std::span<double> grad,
                             double scale = 1.0) const {
    if (grad.size() != params_.size()) throw ContractViolation("Mlp: gradient size mismatch");
    if (action < 0 || static_cast<std::size_t>(action) >= output_width()) {
      throw ContractViolation("Mlp: bad action");
    }
    std::vector<std::vector<T>> acts;
    run(x, acts);
    const double q_a = static_cast<double>(acts.back()[static_cast<std::size_t>(action)]);
    const double residual = q_a - target;
    if (residual == 0.0) return q_a;

    const auto& L = params_.layers();
    std::vector<double> d_out(output_width(), 0.0);
    d_out[static_cast<std::size_t>(action)] = residual;
    for (std::size_t l = L.size(); l-- > 0;) {
      std::vector<double> d_in(l > 0 ? L[l].in : 0, 0.0);
      dense_backward<T>(L[l], params_.weights(l), acts[l], acts[l + 1], d_out,
                        grad.subspan(params_.offset(l), L[l].weight_count()),
                        grad.subspan(params_.offset(l) + L[l].weight_count(), L[l].out), d_in,
                        scale);
      d_out = std::move(d_in);
    }
    return q_a;
  }

  Gradients backward(const Input& x, int action, double target) const {
    Gradients g(params_.size(), 0.0);
    accumulate_gradient(x, action, target, g);
    return g;
  }

 private:
  void validate() const {
    const auto& L = params_.layers();
    if (L.empty()) throw ContractViolation("Mlp: no layers");
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (L[i].kind != LayerKind::Dense) throw ContractViolation("Mlp: only dense layers");
      if (i > 0 && L[i].in != L[i - 1].out) throw ContractViolation("Mlp: layer widths disagree");
    }
  }

  // acts[0] is the input, acts[i+1] the output of layer i.
  void run(const Input& x, std::vector<std::vector<T>>& acts) const {
    if (x.size() != input_width()) throw ContractViolation("Mlp: input width mismatch");
    const auto& L = params_.layers();
    acts.assign(L.size() + 1, {});
    acts[0] = x;
    for (std::size_t l = 0; l < L.size(); ++l) {
      acts[l + 1].assign(L[l].out, T{0});
      dense_forward<T>(L[l], params_.weights(l), params_.bias(l), acts[l], acts[l + 1]);
    }
  }

  Parameters<T> params_;
};

inline constexpr std::uint32_t kStscaInputs = 8;
inline constexpr std::uint32_t kStscaHidden = 64;

inline std::vector<LayerSpec> stsca_architecture() {
  return {LayerSpec::dense(kStscaHidden, kStscaInputs, Activation::Sigmoid),
          LayerSpec::dense(4, kStscaHidden, Activation::Identity)};
}

// 8 inputs (4 queue counts + 4 phase bits) -> 64 sigmoid -> 4 linear.
template <typename T = float>
Mlp<T> build_stsca_net(std::uint64_t seed) {
  return Mlp<T>(stsca_architecture(), seed);
}

}  // namespace dqtsc::nn
