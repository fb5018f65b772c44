#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dqtsc/errors.hpp"
#include "dqtsc/random.hpp"

namespace dqtsc::nn {

enum class LayerKind : std::uint32_t { Conv2d = 1, Dense = 2 };
enum class Activation : std::uint32_t { Identity = 0, Relu = 1, Sigmoid = 2 };

// Shape of one parametrized layer. Dense layers use kernel = stride = 1.
// Conv weights are laid out [out][in][kernel][kernel], dense [out][in];
// the bias vector (length `out`) follows the weights.
struct LayerSpec {
  LayerKind kind = LayerKind::Dense;
  Activation activation = Activation::Identity;
  std::uint32_t out = 0;
  std::uint32_t in = 0;
  std::uint32_t kernel = 1;
  std::uint32_t stride = 1;

  static LayerSpec conv(std::uint32_t out_ch, std::uint32_t in_ch, std::uint32_t k,
                        std::uint32_t stride, Activation act) {
    return {LayerKind::Conv2d, act, out_ch, in_ch, k, stride};
  }
  static LayerSpec dense(std::uint32_t out, std::uint32_t in, Activation act) {
    return {LayerKind::Dense, act, out, in, 1, 1};
  }

  std::size_t weight_count() const noexcept {
    return std::size_t{out} * in * kernel * kernel;
  }
  std::size_t param_count() const noexcept { return weight_count() + out; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Valid (unpadded) convolution output length along one axis.
constexpr std::size_t conv_out_dim(std::size_t in, std::size_t k, std::size_t stride) {
  if (in < k) throw ContractViolation("convolution kernel larger than its input");
  return (in - k) / stride + 1;
}

// Flat storage for every weight and bias of a network plus the RMSprop
// accumulators, in layer declaration order.
template <typename T>
class Parameters {
 public:
  Parameters() = default;
  explicit Parameters(std::vector<LayerSpec> layers) : layers_(std::move(layers)) {
    std::size_t offset = 0;
    for (const auto& l : layers_) {
      offsets_.push_back(offset);
      offset += l.param_count();
    }
    values_.assign(offset, T{0});
    rms_acc_.assign(offset, T{0});
  }

  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t offset(std::size_t layer) const { return offsets_.at(layer); }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }
  std::span<T> rms_acc() noexcept { return rms_acc_; }
  std::span<const T> rms_acc() const noexcept { return rms_acc_; }

  std::span<const T> weights(std::size_t l) const {
    return std::span<const T>(values_).subspan(offsets_.at(l), layers_[l].weight_count());
  }
  std::span<T> weights(std::size_t l) {
    return std::span<T>(values_).subspan(offsets_.at(l), layers_[l].weight_count());
  }
  std::span<const T> bias(std::size_t l) const {
    return std::span<const T>(values_).subspan(offsets_.at(l) + layers_[l].weight_count(),
                                               layers_[l].out);
  }
  std::span<T> bias(std::size_t l) {
    return std::span<T>(values_).subspan(offsets_.at(l) + layers_[l].weight_count(),
                                         layers_[l].out);
  }

  // Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases,
  // zero accumulators.
  void init_glorot(std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      const LayerSpec& s = layers_[l];
      const double k2 = static_cast<double>(s.kernel) * s.kernel;
      const double limit = std::sqrt(6.0 / (s.in * k2 + s.out * k2));
      for (T& w : weights(l)) w = static_cast<T>((2.0 * rng.uniform() - 1.0) * limit);
      for (T& b : bias(l)) b = T{0};
    }
    std::fill(rms_acc_.begin(), rms_acc_.end(), T{0});
  }

  template <typename U>
  Parameters<U> cast() const {
    Parameters<U> out(layers_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      out.values()[i] = static_cast<U>(values_[i]);
      out.rms_acc()[i] = static_cast<U>(rms_acc_[i]);
    }
    return out;
  }

  friend bool operator==(const Parameters&, const Parameters&) = default;

 private:
  std::vector<LayerSpec> layers_;
  std::vector<std::size_t> offsets_;
  std::vector<T> values_;
  std::vector<T> rms_acc_;
};

// Gradient buffer with the same flat layout as Parameters, always 64-bit.
using Gradients = std::vector<double>;

struct RmspropConfig {
  double learning_rate = 0.00025;
  double decay = 0.95;
  double epsilon = 1e-6;
};

// acc <- decay*acc + (1-decay)*g^2;  p <- p - lr*g/sqrt(acc + epsilon)
template <typename T>
void rmsprop_step(Parameters<T>& params, std::span<const double> grad, const RmspropConfig& cfg) {
  if (grad.size() != params.size()) {
    throw ContractViolation("rmsprop_step: gradient size does not match parameters");
  }
  auto values = params.values();
  auto acc = params.rms_acc();
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double g = grad[i];
    const double a = cfg.decay * static_cast<double>(acc[i]) + (1.0 - cfg.decay) * g * g;
    acc[i] = static_cast<T>(a);
    values[i] = static_cast<T>(static_cast<double>(values[i]) -
                               cfg.learning_rate * g / std::sqrt(a + cfg.epsilon));
  }
}

}  // namespace dqtsc::nn
