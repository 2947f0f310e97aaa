#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace wpevo {

inline constexpr std::size_t kInputSize = 6;
inline constexpr std::size_t kOutputSize = 3;
inline constexpr std::size_t kMaxHidden = 6;

/// Node counts of the single-hidden-layer recurrent network. Inputs and
/// outputs are fixed so one network can be applied to every task.
struct Topology {
  std::size_t inputs = kInputSize;
  std::size_t hidden = kMaxHidden;
  std::size_t outputs = kOutputSize;

  constexpr std::size_t parameter_count() const {
    return inputs * hidden + hidden * hidden + hidden + hidden * outputs + outputs * outputs +
           outputs;
  }

  // Throws StructuralError unless inputs = 6, outputs = 3 and hidden <= 6.
  void validate() const;

  friend constexpr bool operator==(const Topology&, const Topology&) = default;
};

inline constexpr Topology kStandardTopology{kInputSize, kMaxHidden, kOutputSize};
static_assert(kStandardTopology.parameter_count() == 108);

enum class Block : std::uint8_t {
  InputHidden,
  HiddenHidden,
  HiddenBias,
  HiddenOutput,
  OutputOutput,
  OutputBias,
};

inline constexpr std::array<Block, 6> kAllBlocks{Block::InputHidden,  Block::HiddenHidden,
                                                 Block::HiddenBias,   Block::HiddenOutput,
                                                 Block::OutputOutput, Block::OutputBias};

std::string_view block_name(Block block);

/// Position of one parameter. Matrix blocks are addressed (destination, source);
/// bias blocks use col = 0.
struct Coordinate {
  Block block = Block::InputHidden;
  std::size_t row = 0;
  std::size_t col = 0;

  friend constexpr bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Canonical flat ordering of the genome: input->hidden, hidden->hidden,
/// hidden bias, hidden->output, output->output, output bias. Each matrix
/// block is row-major by destination neuron.
class ParameterLayout {
 public:
  explicit ParameterLayout(Topology topology);

  const Topology& topology() const { return topology_; }
  std::size_t size() const { return topology_.parameter_count(); }

  std::size_t offset(Block block) const { return offsets_[static_cast<std::size_t>(block)]; }
  std::size_t rows(Block block) const;
  std::size_t cols(Block block) const;
  std::size_t block_size(Block block) const { return rows(block) * cols(block); }

  // Both throw StructuralError on out-of-range input.
  std::size_t index(const Coordinate& coordinate) const;
  Coordinate coordinate(std::size_t index) const;

 private:
  Topology topology_;
  std::array<std::size_t, 6> offsets_{};
};

}  // namespace wpevo
