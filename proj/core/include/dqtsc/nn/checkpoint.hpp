#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqtsc/nn/parameters.hpp"

// Checkpoint layout (all integers little-endian):
//   "DQTS"                         magic
//   u16                            format version
//   u32                            layer count
//   per layer: u32 x 6             kind, activation, out, in, kernel, stride
//   u64                            parameter count P
//   f32 x P                        weights and biases, declaration order
//   f32 x P                        RMSprop accumulators, same order
//   u64                            FNV-1a 64 of the two f32 blocks
namespace dqtsc::nn {

inline constexpr std::uint16_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { Io, BadMagic, VersionMismatch, ShapeMismatch, Truncated, ChecksumMismatch };

  CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

void save_checkpoint(const Parameters<float>& params, const std::filesystem::path& path);

// Reads only the architecture descriptor.
std::vector<LayerSpec> read_checkpoint_layers(const std::filesystem::path& path);

// Throws CheckpointError(ShapeMismatch) unless the stored layers equal
// `expected`.
Parameters<float> load_checkpoint(const std::filesystem::path& path,
                                  const std::vector<LayerSpec>& expected);

}  // namespace dqtsc::nn
