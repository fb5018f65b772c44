#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "dqtsc/nn/parameters.hpp"

// Forward/backward kernels for the two layer kinds. Forward writes
// post-activation outputs; backward takes dL/d(output), converts it to
// dL/d(pre-activation) in place, accumulates `scale` times the parameter
// gradient, and optionally adds dL/d(input).
namespace dqtsc::nn {

inline double activate(Activation a, double z) {
  switch (a) {
    case Activation::Relu: return z > 0.0 ? z : 0.0;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Identity: return z;
  }
  return z;
}

// Derivative expressed through the activation's output value.
inline double activation_slope(Activation a, double y) {
  switch (a) {
    case Activation::Relu: return y > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: return y * (1.0 - y);
    case Activation::Identity: return 1.0;
  }
  return 1.0;
}

struct ConvGeometry {
  std::size_t in_h, in_w, out_h, out_w;

  static ConvGeometry of(const LayerSpec& s, std::size_t in_h, std::size_t in_w) {
    return {in_h, in_w, conv_out_dim(in_h, s.kernel, s.stride),
            conv_out_dim(in_w, s.kernel, s.stride)};
  }
};

template <typename T>
void conv2d_forward(const LayerSpec& s, const ConvGeometry& g, std::span<const T> w,
                    std::span<const T> b, std::span<const T> in, std::span<T> out) {
  const std::size_t k = s.kernel;
  for (std::size_t o = 0; o < s.out; ++o) {
    for (std::size_t oy = 0; oy < g.out_h; ++oy) {
      for (std::size_t ox = 0; ox < g.out_w; ++ox) {
        double acc = b[o];
        for (std::size_t c = 0; c < s.in; ++c) {
          const T* wk = &w[((o * s.in + c) * k) * k];
          const T* plane = &in[c * g.in_h * g.in_w];
          for (std::size_t ky = 0; ky < k; ++ky) {
            const T* row = plane + (oy * s.stride + ky) * g.in_w + ox * s.stride;
            for (std::size_t kx = 0; kx < k; ++kx) {
              acc += static_cast<double>(wk[ky * k + kx]) * static_cast<double>(row[kx]);
            }
          }
        }
        out[(o * g.out_h + oy) * g.out_w + ox] = static_cast<T>(activate(s.activation, acc));
      }
    }
  }
}

template <typename T>
void conv2d_backward(const LayerSpec& s, const ConvGeometry& g, std::span<const T> w,
                     std::span<const T> in, std::span<const T> out, std::span<double> d_out,
                     std::span<double> d_w, std::span<double> d_b, std::span<double> d_in,
                     double scale) {
  const std::size_t k = s.kernel;
  for (std::size_t i = 0; i < d_out.size(); ++i) {
    d_out[i] *= activation_slope(s.activation, static_cast<double>(out[i]));
  }
  for (std::size_t o = 0; o < s.out; ++o) {
    for (std::size_t oy = 0; oy < g.out_h; ++oy) {
      for (std::size_t ox = 0; ox < g.out_w; ++ox) {
        const double dz = d_out[(o * g.out_h + oy) * g.out_w + ox];
        if (dz == 0.0) continue;
        d_b[o] += scale * dz;
        for (std::size_t c = 0; c < s.in; ++c) {
          const std::size_t wbase = ((o * s.in + c) * k) * k;
          const std::size_t ibase = c * g.in_h * g.in_w;
          for (std::size_t ky = 0; ky < k; ++ky) {
            const std::size_t irow = ibase + (oy * s.stride + ky) * g.in_w + ox * s.stride;
            for (std::size_t kx = 0; kx < k; ++kx) {
              d_w[wbase + ky * k + kx] += scale * dz * static_cast<double>(in[irow + kx]);
              if (!d_in.empty()) d_in[irow + kx] += dz * static_cast<double>(w[wbase + ky * k + kx]);
            }
          }
        }
      }
    }
  }
}

template <typename T>
void dense_forward(const LayerSpec& s, std::span<const T> w, std::span<const T> b,
                   std::span<const T> in, std::span<T> out) {
  for (std::size_t o = 0; o < s.out; ++o) {
    const T* row = &w[o * s.in];
    double acc = b[o];
    for (std::size_t i = 0; i < s.in; ++i) {
      acc += static_cast<double>(row[i]) * static_cast<double>(in[i]);
    }
    out[o] = static_cast<T>(activate(s.activation, acc));
  }
}

template <typename T>
void dense_backward(const LayerSpec& s, std::span<const T> w, std::span<const T> in,
                    std::span<const T> out, std::span<double> d_out, std::span<double> d_w,
                    std::span<double> d_b, std::span<double> d_in, double scale) {
  for (std::size_t o = 0; o < s.out; ++o) {
    const double dz = d_out[o] * activation_slope(s.activation, static_cast<double>(out[o]));
    d_out[o] = dz;
    if (dz == 0.0) continue;
    d_b[o] += scale * dz;
    double* dw_row = &d_w[o * s.in];
    const T* w_row = &w[o * s.in];
    const double sdz = scale * dz;
    for (std::size_t i = 0; i < s.in; ++i) {
      dw_row[i] += sdz * static_cast<double>(in[i]);
    }
    if (!d_in.empty()) {
      for (std::size_t i = 0; i < s.in; ++i) d_in[i] += dz * static_cast<double>(w_row[i]);
    }
  }
}

}  // namespace dqtsc::nn
