#include "dqtsc/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace dqtsc::nn {
namespace {

using Kind = CheckpointError::Kind;

constexpr char kMagic[4] = {'D', 'Q', 'T', 'S'};

template <typename U>
void put_le(std::vector<unsigned char>& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<unsigned char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

std::uint64_t fnv1a(const unsigned char* data, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Reader {
 public:
  explicit Reader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

  template <typename U>
  U get() {
    need(sizeof(U));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(U);
    return static_cast<U>(v);
  }

  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw CheckpointError(Kind::Truncated, "checkpoint is truncated");
  }

  std::size_t pos() const { return pos_; }
  const unsigned char* at(std::size_t p) const { return bytes_.data() + p; }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

 private:
  std::vector<unsigned char> bytes_;
  std::size_t pos_ = 0;
};

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(Kind::Io, "cannot open checkpoint " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<LayerSpec> read_header(Reader& r) {
  r.need(4);
  if (std::memcmp(r.at(0), kMagic, 4) != 0) {
    throw CheckpointError(Kind::BadMagic, "not a checkpoint file (bad magic)");
  }
  r.skip(4);
  const auto version = r.get<std::uint16_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError(Kind::VersionMismatch,
                          "unsupported checkpoint version " + std::to_string(version));
  }
  const auto count = r.get<std::uint32_t>();
  r.need(std::size_t{count} * 24);
  std::vector<LayerSpec> layers(count);
  for (auto& l : layers) {
    l.kind = static_cast<LayerKind>(r.get<std::uint32_t>());
    l.activation = static_cast<Activation>(r.get<std::uint32_t>());
    l.out = r.get<std::uint32_t>();
    l.in = r.get<std::uint32_t>();
    l.kernel = r.get<std::uint32_t>();
    l.stride = r.get<std::uint32_t>();
  }
  return layers;
}

}  // namespace

void save_checkpoint(const Parameters<float>& params, const std::filesystem::path& path) {
  static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);
  std::vector<unsigned char> out(std::begin(kMagic), std::end(kMagic));
  put_le<std::uint16_t>(out, kCheckpointVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(params.layers().size()));
  for (const auto& l : params.layers()) {
    for (std::uint32_t v : {static_cast<std::uint32_t>(l.kind), static_cast<std::uint32_t>(l.activation),
                            l.out, l.in, l.kernel, l.stride}) {
      put_le<std::uint32_t>(out, v);
    }
  }
  put_le<std::uint64_t>(out, params.size());
  const std::size_t payload_start = out.size();
  for (auto block : {params.values(), params.rms_acc()}) {
    for (float f : block) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
  }
  put_le<std::uint64_t>(out, fnv1a(out.data() + payload_start, out.size() - payload_start));

  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  f.close();
  if (!f) throw CheckpointError(Kind::Io, "failed to write checkpoint " + path.string());
}

std::vector<LayerSpec> read_checkpoint_layers(const std::filesystem::path& path) {
  Reader r(read_file(path));
  return read_header(r);
}

Parameters<float> load_checkpoint(const std::filesystem::path& path,
                                  const std::vector<LayerSpec>& expected) {
  Reader r(read_file(path));
  const auto layers = read_header(r);
  if (layers != expected) {
    throw CheckpointError(Kind::ShapeMismatch, "checkpoint architecture does not match");
  }
  Parameters<float> params(layers);
  const auto count = r.get<std::uint64_t>();
  if (count != params.size()) {
    throw CheckpointError(Kind::ShapeMismatch, "checkpoint parameter count does not match");
  }
  const std::size_t payload_start = r.pos();
  r.need(count * 8 + 8);
  for (auto block : {params.values(), params.rms_acc()}) {
    for (float& f : block) f = std::bit_cast<float>(r.get<std::uint32_t>());
  }
  const std::uint64_t expected_sum = fnv1a(r.at(payload_start), r.pos() - payload_start);
  if (r.get<std::uint64_t>() != expected_sum) {
    throw CheckpointError(Kind::ChecksumMismatch, "checkpoint checksum mismatch");
  }
  return params;
}

}  // namespace dqtsc::nn
