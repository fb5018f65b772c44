#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "dqtsc/dtse.hpp"
#include "dqtsc/errors.hpp"
#include "dqtsc/nn/layers.hpp"
#include "dqtsc/nn/parameters.hpp"
#include "dqtsc/signal_control.hpp"

namespace dqtsc::nn {

// Two-tower convolutional Q-network over the DTSE. Tower A reads the
// occupancy grid, tower B the speed grid; each is conv(16 @ 4x4, stride 2)
// -> conv(32 @ 2x2, stride 1), ReLU, valid padding. The flattened towers and
// the phase one-hot feed dense 128 -> 64 (ReLU) -> 4 (linear).
template <typename T>
class ConvQNet {
 public:
  using Input = Dtse;
  using Scalar = T;

  enum Layer : std::size_t { kA1 = 0, kA2, kB1, kB2, kFc1, kFc2, kOut, kLayerCount };

  static constexpr std::size_t kRows = kDtseRows;
  static constexpr std::size_t kCols = kDtseCells;

  static std::vector<LayerSpec> architecture() {
    const auto conv1 = LayerSpec::conv(16, 1, 4, 2, Activation::Relu);
    const auto conv2 = LayerSpec::conv(32, 16, 2, 1, Activation::Relu);
    return {conv1,
            conv2,
            conv1,
            conv2,
            LayerSpec::dense(128, static_cast<std::uint32_t>(trunk_width()), Activation::Relu),
            LayerSpec::dense(64, 128, Activation::Relu),
            LayerSpec::dense(kNumActions, 64, Activation::Identity)};
  }

  static ConvGeometry geometry1() {
    return ConvGeometry::of(LayerSpec::conv(16, 1, 4, 2, Activation::Relu), kRows, kCols);
  }
  static ConvGeometry geometry2() {
    const auto g1 = geometry1();
    return ConvGeometry::of(LayerSpec::conv(32, 16, 2, 1, Activation::Relu), g1.out_h, g1.out_w);
  }
  static std::size_t tower_width() {
    const auto g2 = geometry2();
    return 32 * g2.out_h * g2.out_w;
  }
  static std::size_t trunk_width() { return 2 * tower_width() + kNumActions; }

  explicit ConvQNet(std::uint64_t seed) : params_(architecture()) { params_.init_glorot(seed); }

  explicit ConvQNet(Parameters<T> params) : params_(std::move(params)) {
    if (params_.layers() != architecture()) {
      throw ContractViolation("ConvQNet: parameter layout does not match the architecture");
    }
  }

  Parameters<T>& params() noexcept { return params_; }
  const Parameters<T>& params() const noexcept { return params_; }

  struct Activations {
    std::vector<T> a_in, a1, a2, b_in, b1, b2, h1, h2, q;
    std::vector<T> trunk;  // [a2 | b2 | phase]
  };

  std::vector<double> forward(const Dtse& x) const {
    Activations act;
    return forward(x, act);
  }

  std::vector<double> forward(const Dtse& x, Activations& act) const {
    const auto g1 = geometry1();
    const auto g2 = geometry2();
    const std::size_t tw = tower_width();
    const auto& L = params_.layers();

    act.a_in.resize(kRows * kCols);
    act.b_in.resize(kRows * kCols);
    for (std::size_t r = 0; r < kRows; ++r) {
      for (std::size_t c = 0; c < kCols; ++c) {
        act.a_in[r * kCols + c] = static_cast<T>(x.occupancy[r][c]);
        act.b_in[r * kCols + c] = static_cast<T>(x.speed[r][c]);
      }
    }
    act.a1.assign(16 * g1.out_h * g1.out_w, T{0});
    act.b1.assign(act.a1.size(), T{0});
    act.trunk.assign(trunk_width(), T{0});
    const std::span<T> trunk(act.trunk);

    conv2d_forward<T>(L[kA1], g1, params_.weights(kA1), params_.bias(kA1), act.a_in, act.a1);
    conv2d_forward<T>(L[kA2], g2, params_.weights(kA2), params_.bias(kA2), act.a1,
                      trunk.subspan(0, tw));
    conv2d_forward<T>(L[kB1], g1, params_.weights(kB1), params_.bias(kB1), act.b_in, act.b1);
    conv2d_forward<T>(L[kB2], g2, params_.weights(kB2), params_.bias(kB2), act.b1,
                      trunk.subspan(tw, tw));
    for (std::size_t i = 0; i < kNumActions; ++i) {
      trunk[2 * tw + i] = static_cast<T>(x.phase_onehot[i]);
    }
    act.h1.assign(128, T{0});
    act.h2.assign(64, T{0});
    act.q.assign(kNumActions, T{0});
    dense_forward<T>(L[kFc1], params_.weights(kFc1), params_.bias(kFc1), act.trunk, act.h1);
    dense_forward<T>(L[kFc2], params_.weights(kFc2), params_.bias(kFc2), act.h1, act.h2);
    dense_forward<T>(L[kOut], params_.weights(kOut), params_.bias(kOut), act.h2, act.q);
    return std::vector<double>(act.q.begin(), act.q.end());
  }

  // Adds scale * d/dtheta [0.5 * (q[action] - target)^2] to `grad`.
  // Returns q[action] before the update.
  double accumulate_gradient(const Dtse& x, int action, double target, std::span<double> grad,
                             double scale = 1.0) const {
    if (grad.size() != params_.size()) {
      throw ContractViolation("ConvQNet: gradient buffer has the wrong size");
    }
    if (action < 0 || action >= kNumActions) throw ContractViolation("ConvQNet: bad action");
    Activations act;
    const auto q = forward(x, act);
    const double residual = q[static_cast<std::size_t>(action)] - target;
    if (residual == 0.0) return q[static_cast<std::size_t>(action)];

    const auto g1 = geometry1();
    const auto g2 = geometry2();
    const std::size_t tw = tower_width();
    const auto& L = params_.layers();
    auto slice_w = [&](std::size_t l) {
      return grad.subspan(params_.offset(l), L[l].weight_count());
    };
    auto slice_b = [&](std::size_t l) {
      return grad.subspan(params_.offset(l) + L[l].weight_count(), L[l].out);
    };

    std::vector<double> d_q(kNumActions, 0.0);
    d_q[static_cast<std::size_t>(action)] = residual;
    std::vector<double> d_h2(64, 0.0), d_h1(128, 0.0), d_trunk(trunk_width(), 0.0);
    dense_backward<T>(L[kOut], params_.weights(kOut), act.h2, act.q, d_q, slice_w(kOut),
                      slice_b(kOut), d_h2, scale);
    dense_backward<T>(L[kFc2], params_.weights(kFc2), act.h1, act.h2, d_h2, slice_w(kFc2),
                      slice_b(kFc2), d_h1, scale);
    dense_backward<T>(L[kFc1], params_.weights(kFc1), act.trunk, act.h1, d_h1, slice_w(kFc1),
                      slice_b(kFc1), d_trunk, scale);

    const std::span<const T> trunk(act.trunk);
    const std::span<double> d_trunk_span(d_trunk);
    std::vector<double> d_a1(act.a1.size(), 0.0), d_b1(act.b1.size(), 0.0);
    conv2d_backward<T>(L[kA2], g2, params_.weights(kA2), act.a1, trunk.subspan(0, tw),
                       d_trunk_span.subspan(0, tw), slice_w(kA2), slice_b(kA2), d_a1, scale);
    conv2d_backward<T>(L[kB2], g2, params_.weights(kB2), act.b1, trunk.subspan(tw, tw),
                       d_trunk_span.subspan(tw, tw), slice_w(kB2), slice_b(kB2), d_b1, scale);
    conv2d_backward<T>(L[kA1], g1, params_.weights(kA1), act.a_in, act.a1, d_a1, slice_w(kA1),
                       slice_b(kA1), {}, scale);
    conv2d_backward<T>(L[kB1], g1, params_.weights(kB1), act.b_in, act.b1, d_b1, slice_w(kB1),
                       slice_b(kB1), {}, scale);
    return q[static_cast<std::size_t>(action)];
  }

  // Gradient of the single-sample squared error; untaken actions contribute 0.
  Gradients backward(const Dtse& x, ActionId action, double target) const {
    Gradients g(params_.size(), 0.0);
    accumulate_gradient(x, action.index(), target, g);
    return g;
  }

 private:
  Parameters<T> params_;
};

}  // namespace dqtsc::nn
