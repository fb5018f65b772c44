#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dqtsc/nn/conv_qnet.hpp"
#include "dqtsc/nn/mlp.hpp"
#include "dqtsc/random.hpp"
#include "reference_net.hpp"

// Central-difference gradient checks in 64-bit. Relative error is
// |analytic - numeric| / max(1, |analytic|) with step h = 1e-3.
namespace testing_support {

struct FdReport {
  std::size_t checked = 0;
  std::size_t skipped_kinks = 0;
  double worst = 0.0;
};

inline constexpr double kFdStep = 1e-3;

using ConvNet = dqtsc::nn::ConvQNet<double>;

// ReLU on/off pattern of every rectified unit.
inline std::vector<bool> relu_pattern(const ConvNet& net, const dqtsc::Dtse& x) {
  ConvNet::Activations act;
  net.forward(x, act);
  std::vector<bool> bits;
  for (const auto* v : {&act.a1, &act.trunk, &act.b1, &act.h1, &act.h2}) {
    for (double y : *v) bits.push_back(y > 0.0);
  }
  return bits;
}

// `pick` chooses a flat parameter index. Indices whose perturbation flips a
// ReLU (a kink inside [-h, h]) are skipped and redrawn.
inline FdReport check_conv_net(std::size_t count, std::uint64_t seed,
                               const std::function<std::size_t(dqtsc::Rng&, const ConvNet&)>& pick) {
  FdReport r;
  dqtsc::Rng rng(seed);
  ConvNet net(seed);
  std::size_t attempts = 0;
  while (r.checked < count && attempts++ < 20 * count) {
    const dqtsc::Dtse x = random_dtse(seed * 1000 + r.checked / 10);
    const int action = static_cast<int>(rng.below(4));
    const double target = net.forward(x)[static_cast<std::size_t>(action)] - 1.0 - rng.uniform();
    auto loss = [&](const ConvNet& n) {
      const double d = n.forward(x)[static_cast<std::size_t>(action)] - target;
      return 0.5 * d * d;
    };
    const std::size_t i = pick(rng, net);
    const auto base = relu_pattern(net, x);
    ConvNet plus = net;
    ConvNet minus = net;
    plus.params().values()[i] += kFdStep;
    minus.params().values()[i] -= kFdStep;
    if (relu_pattern(plus, x) != base || relu_pattern(minus, x) != base) {
      ++r.skipped_kinks;
      continue;
    }
    const double numeric = (loss(plus) - loss(minus)) / (2.0 * kFdStep);
    const double analytic = net.backward(x, dqtsc::ActionId(action), target)[i];
    r.worst = std::max(r.worst, std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic)));
    ++r.checked;
  }
  return r;
}

// Uniform over the weights and bias of one layer.
inline FdReport check_conv_layer(std::size_t layer, std::size_t count, std::uint64_t seed) {
  return check_conv_net(count, seed, [layer](dqtsc::Rng& rng, const ConvNet& net) {
    const auto& shape = net.params().layers()[layer];
    return net.params().offset(layer) + static_cast<std::size_t>(rng.below(shape.param_count()));
  });
}

// Rectified layers only (both towers and the two hidden dense layers).
inline FdReport check_relu_layers(std::size_t count, std::uint64_t seed) {
  return check_conv_net(count, seed, [](dqtsc::Rng& rng, const ConvNet& net) {
    const std::size_t relu_end = net.params().offset(ConvNet::kOut);
    return static_cast<std::size_t>(rng.below(relu_end));
  });
}

// First dense layer weights, drawn evenly from the columns reading tower A,
// tower B and the phase vector, so every branch of the concatenation is hit.
inline FdReport check_concat(std::size_t count, std::uint64_t seed) {
  return check_conv_net(count, seed, [](dqtsc::Rng& rng, const ConvNet& net) {
    const std::size_t tw = ConvNet::tower_width();
    const std::size_t width = ConvNet::trunk_width();
    const std::size_t row = static_cast<std::size_t>(rng.below(128));
    std::size_t col = 0;
    switch (rng.below(3)) {
      case 0: col = static_cast<std::size_t>(rng.below(tw)); break;
      case 1: col = tw + static_cast<std::size_t>(rng.below(tw)); break;
      default: col = 2 * tw + static_cast<std::size_t>(rng.below(4)); break;
    }
    return net.params().offset(ConvNet::kFc1) + row * width + col;
  });
}

// Shallow sigmoid network over random queue/phase features.
inline FdReport check_stsca(std::size_t count, std::uint64_t seed) {
  FdReport r;
  dqtsc::Rng rng(seed);
  auto net = dqtsc::nn::build_stsca_net<double>(seed);
  while (r.checked < count) {
    std::vector<double> x(8, 0.0);
    for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] = rng.uniform();
    x[4 + rng.below(4)] = 1.0;
    const int action = static_cast<int>(rng.below(4));
    const double target = net.forward(x)[static_cast<std::size_t>(action)] + 2.0 * rng.uniform() - 1.0;
    auto loss = [&](const dqtsc::nn::Mlp<double>& n) {
      const double d = n.forward(x)[static_cast<std::size_t>(action)] - target;
      return 0.5 * d * d;
    };
    const std::size_t i = static_cast<std::size_t>(rng.below(net.params().size()));
    auto plus = net;
    auto minus = net;
    plus.params().values()[i] += kFdStep;
    minus.params().values()[i] -= kFdStep;
    const double numeric = (loss(plus) - loss(minus)) / (2.0 * kFdStep);
    const double analytic = net.backward(x, action, target)[i];
    r.worst = std::max(r.worst, std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic)));
    ++r.checked;
  }
  return r;
}

}  // namespace testing_support
