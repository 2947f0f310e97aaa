#include "wpevo/topology.hpp"

#include <string>

#include "wpevo/errors.hpp"

namespace wpevo {

void Topology::validate() const {
  if (inputs != kInputSize || outputs != kOutputSize || hidden > kMaxHidden) {
    throw StructuralError("topology must be 6 inputs, <= 6 hidden, 3 outputs; got " +
                          std::to_string(inputs) + " " + std::to_string(hidden) + " " +
                          std::to_string(outputs));
  }
}

std::string_view block_name(Block block) {
  switch (block) {
    case Block::InputHidden: return "input_hidden";
    case Block::HiddenHidden: return "hidden_hidden";
    case Block::HiddenBias: return "hidden_bias";
    case Block::HiddenOutput: return "hidden_output";
    case Block::OutputOutput: return "output_output";
    case Block::OutputBias: return "output_bias";
  }
  return "unknown";
}

ParameterLayout::ParameterLayout(Topology topology) : topology_(topology) {
  std::size_t running = 0;
  for (Block block : kAllBlocks) {
    offsets_[static_cast<std::size_t>(block)] = running;
    running += block_size(block);
  }
}

std::size_t ParameterLayout::rows(Block block) const {
  switch (block) {
    case Block::InputHidden:
    case Block::HiddenHidden:
    case Block::HiddenBias: return topology_.hidden;
    case Block::HiddenOutput:
    case Block::OutputOutput:
    case Block::OutputBias: return topology_.outputs;
  }
  return 0;
}

std::size_t ParameterLayout::cols(Block block) const {
  switch (block) {
    case Block::InputHidden: return topology_.inputs;
    case Block::HiddenHidden: return topology_.hidden;
    case Block::HiddenOutput: return topology_.hidden;
    case Block::OutputOutput: return topology_.outputs;
    case Block::HiddenBias:
    case Block::OutputBias: return 1;
  }
  return 0;
}

std::size_t ParameterLayout::index(const Coordinate& c) const {
  if (c.row >= rows(c.block) || c.col >= cols(c.block)) {
    throw StructuralError("coordinate (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                          ") outside block " + std::string(block_name(c.block)));
  }
  return offset(c.block) + c.row * cols(c.block) + c.col;
}

Coordinate ParameterLayout::coordinate(std::size_t index) const {
  if (index >= size()) {
    throw StructuralError("layout index " + std::to_string(index) + " >= " +
                          std::to_string(size()));
  }
  for (auto it = kAllBlocks.rbegin(); it != kAllBlocks.rend(); ++it) {
    const std::size_t start = offset(*it);
    if (index >= start && block_size(*it) > 0) {
      const std::size_t local = index - start;
      return {*it, local / cols(*it), local % cols(*it)};
    }
  }
  throw StructuralError("layout index not covered by any block");
}

}  // namespace wpevo
