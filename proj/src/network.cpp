#include "wpevo/network.hpp"

#include <cmath>
#include <string>

#include "wpevo/errors.hpp"

namespace wpevo {

RnnParameters::RnnParameters(Topology topology)
    : topology_(topology),
      layout_(topology),
      hidden_stride_(simd::padded(topology.hidden)),
      output_stride_(simd::padded(topology.outputs)),
      hidden_columns_((topology.inputs + topology.hidden) * hidden_stride_, 0.0),
      hidden_bias_(hidden_stride_, 0.0),
      output_columns_((topology.hidden + topology.outputs) * output_stride_, 0.0),
      output_bias_(output_stride_, 0.0) {
  topology_.validate();
}

double& RnnParameters::slot(const Coordinate& c) {
  layout_.index(c);  // bounds check
  switch (c.block) {
    case Block::InputHidden: return hidden_columns_[c.col * hidden_stride_ + c.row];
    case Block::HiddenHidden:
      return hidden_columns_[(topology_.inputs + c.col) * hidden_stride_ + c.row];
    case Block::HiddenBias: return hidden_bias_[c.row];
    case Block::HiddenOutput: return output_columns_[c.col * output_stride_ + c.row];
    case Block::OutputOutput:
      return output_columns_[(topology_.hidden + c.col) * output_stride_ + c.row];
    case Block::OutputBias: return output_bias_[c.row];
  }
  throw StructuralError("unknown block");
}

double RnnParameters::get(const Coordinate& c) const {
  return const_cast<RnnParameters*>(this)->slot(c);
}

void RnnParameters::set(const Coordinate& c, double value) { slot(c) = value; }

std::vector<double> RnnParameters::flatten() const {
  std::vector<double> flat(layout_.size());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = get(layout_.coordinate(i));
  return flat;
}

RnnState reset_state(const Topology& topology) {
  topology.validate();
  RnnState state;
  state.hidden_size = topology.hidden;
  state.output_size = topology.outputs;
  return state;
}

StepResult step(const RnnParameters& params, const RnnState& state, std::span<const double> input,
                const simd::KernelTable& kernels) {
  const Topology& topo = params.topology();
  if (input.size() != topo.inputs) {
    throw StructuralError("network input has " + std::to_string(input.size()) +
                          " values, expected " + std::to_string(topo.inputs));
  }
  for (double v : input) {
    if (!std::isfinite(v)) throw EvaluationError("non-finite network input");
  }

  constexpr std::size_t kHiddenSpan = kInputSize + kMaxHidden;
  std::array<double, kHiddenSpan> hidden_in{};
  for (std::size_t i = 0; i < topo.inputs; ++i) hidden_in[i] = input[i];
  for (std::size_t i = 0; i < topo.hidden; ++i) hidden_in[topo.inputs + i] = state.hidden[i];

  StepResult result;
  result.next.hidden_size = topo.hidden;
  result.next.output_size = topo.outputs;

  std::array<double, simd::padded(kMaxHidden)> hidden_pre{};
  if (topo.hidden > 0) {
    kernels.affine(params.hidden_columns(), params.hidden_stride(), hidden_in.data(),
                   topo.inputs + topo.hidden, params.hidden_bias_data(), hidden_pre.data());
  }
  for (std::size_t i = 0; i < topo.hidden; ++i) result.next.hidden[i] = std::tanh(hidden_pre[i]);

  constexpr std::size_t kOutputSpan = kMaxHidden + kOutputSize;
  std::array<double, kOutputSpan> output_in{};
  for (std::size_t i = 0; i < topo.hidden; ++i) output_in[i] = result.next.hidden[i];
  for (std::size_t i = 0; i < topo.outputs; ++i) output_in[topo.hidden + i] = state.output[i];

  std::array<double, simd::padded(kOutputSize)> output_pre{};
  kernels.affine(params.output_columns(), params.output_stride(), output_in.data(),
                 topo.hidden + topo.outputs, params.output_bias_data(), output_pre.data());
  for (std::size_t i = 0; i < topo.outputs; ++i) {
    result.next.output[i] = std::tanh(output_pre[i]);
    result.output[i] = result.next.output[i];
  }
  return result;
}

std::size_t interpret_discrete(std::span<const double> output, std::size_t n) {
  if (n == 0 || n > output.size()) {
    throw ContractViolation("discrete action count " + std::to_string(n) + " outside [1, " +
                            std::to_string(output.size()) + "]");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (output[i] > output[best]) best = i;
  }
  return best;
}

std::vector<double> interpret_box(std::span<const double> output, std::span<const Bounds> bounds) {
  if (bounds.size() > output.size()) {
    throw ContractViolation("more box signals than network outputs");
  }
  std::vector<double> scaled(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const Bounds& b = bounds[i];
    if (!std::isfinite(b.min) || !std::isfinite(b.max) || !(b.min < b.max)) {
      throw ContractViolation("box bounds must be finite with min < max");
    }
    scaled[i] = b.min + (output[i] + 1.0) / 2.0 * (b.max - b.min);
  }
  return scaled;
}

}  // namespace wpevo
