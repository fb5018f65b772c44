#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "dqtsc/dtse.hpp"
#include "dqtsc/nn/parameters.hpp"
#include "dqtsc/random.hpp"

namespace testing_support {

// DTSE with roughly a third of the cells occupied and a random phase.
inline dqtsc::Dtse random_dtse(std::uint64_t seed) {
  dqtsc::Rng rng(seed * 7919 + 13);
  dqtsc::Dtse d;
  for (std::size_t r = 0; r < d.occupancy.size(); ++r) {
    for (std::size_t c = 0; c < d.occupancy[r].size(); ++c) {
      if (rng.uniform() < 0.35) {
        d.occupancy[r][c] = 1;
        d.speed[r][c] = static_cast<float>(rng.uniform());
      }
    }
  }
  d.phase_onehot[rng.below(4)] = 1;
  return d;
}

// Straight-loop forward pass of the two-tower network, written without the
// library kernels. Layer order: A1, A2, B1, B2, FC1, FC2, OUT.
inline std::array<double, 4> reference_forward(const dqtsc::nn::Parameters<double>& p,
                                               const dqtsc::Dtse& x) {
  auto relu = [](double z) { return z > 0.0 ? z : 0.0; };

  auto tower = [&](std::size_t l1, std::size_t l2, bool speed) {
    const auto w1 = p.weights(l1);
    const auto b1 = p.bias(l1);
    double in[16][15];
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 15; ++c) {
        in[r][c] = speed ? static_cast<double>(x.speed[r][c]) : x.occupancy[r][c];
      }
    }
    // conv 16 @ 4x4 stride 2: 16x15 -> 7x6
    static thread_local double a1[16][7][6];
    for (int o = 0; o < 16; ++o) {
      for (int y = 0; y < 7; ++y) {
        for (int z = 0; z < 6; ++z) {
          double s = b1[o];
          for (int ky = 0; ky < 4; ++ky) {
            for (int kx = 0; kx < 4; ++kx) s += w1[o * 16 + ky * 4 + kx] * in[2 * y + ky][2 * z + kx];
          }
          a1[o][y][z] = relu(s);
        }
      }
    }
    // conv 32 @ 2x2 stride 1: 7x6 -> 6x5
    const auto w2 = p.weights(l2);
    const auto b2 = p.bias(l2);
    std::vector<double> out;
    out.reserve(960);
    for (int o = 0; o < 32; ++o) {
      for (int y = 0; y < 6; ++y) {
        for (int z = 0; z < 5; ++z) {
          double s = b2[o];
          for (int c = 0; c < 16; ++c) {
            for (int ky = 0; ky < 2; ++ky) {
              for (int kx = 0; kx < 2; ++kx) {
                s += w2[((o * 16 + c) * 2 + ky) * 2 + kx] * a1[c][y + ky][z + kx];
              }
            }
          }
          out.push_back(relu(s));
        }
      }
    }
    return out;
  };

  std::vector<double> trunk = tower(0, 1, false);
  const auto b = tower(2, 3, true);
  trunk.insert(trunk.end(), b.begin(), b.end());
  for (auto bit : x.phase_onehot) trunk.push_back(bit);

  auto dense = [&](std::size_t l, const std::vector<double>& in, bool rectify) {
    const auto w = p.weights(l);
    const auto bias = p.bias(l);
    std::vector<double> out(bias.size());
    for (std::size_t o = 0; o < out.size(); ++o) {
      double s = bias[o];
      for (std::size_t i = 0; i < in.size(); ++i) s += w[o * in.size() + i] * in[i];
      out[o] = rectify ? relu(s) : s;
    }
    return out;
  };
  const auto h1 = dense(4, trunk, true);
  const auto h2 = dense(5, h1, true);
  const auto q = dense(6, h2, false);
  return {q[0], q[1], q[2], q[3]};
}

}  // namespace testing_support
