#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wpevo/simd/kernels.hpp"
#include "wpevo/topology.hpp"

namespace wpevo {

/// Decoded weights of the fully connected recurrent policy network.
///
/// Each layer is stored column-major with rows padded to the SIMD lane
/// width: the hidden layer reads the concatenation [input, previous hidden],
/// the output layer reads [current hidden, previous output].
class RnnParameters {
 public:
  explicit RnnParameters(Topology topology);

  const Topology& topology() const { return topology_; }

  double get(const Coordinate& c) const;
  void set(const Coordinate& c, double value);

  double input_hidden(std::size_t dest, std::size_t src) const {
    return get({Block::InputHidden, dest, src});
  }
  double hidden_hidden(std::size_t dest, std::size_t src) const {
    return get({Block::HiddenHidden, dest, src});
  }
  double hidden_bias(std::size_t dest) const { return get({Block::HiddenBias, dest, 0}); }
  double hidden_output(std::size_t dest, std::size_t src) const {
    return get({Block::HiddenOutput, dest, src});
  }
  double output_output(std::size_t dest, std::size_t src) const {
    return get({Block::OutputOutput, dest, src});
  }
  double output_bias(std::size_t dest) const { return get({Block::OutputBias, dest, 0}); }

  /// Re-flattens into ParameterLayout order.
  std::vector<double> flatten() const;

  std::size_t hidden_stride() const { return hidden_stride_; }
  std::size_t output_stride() const { return output_stride_; }
  const double* hidden_columns() const { return hidden_columns_.data(); }
  const double* hidden_bias_data() const { return hidden_bias_.data(); }
  const double* output_columns() const { return output_columns_.data(); }
  const double* output_bias_data() const { return output_bias_.data(); }

 private:
  double& slot(const Coordinate& c);

  Topology topology_;
  ParameterLayout layout_;
  std::size_t hidden_stride_;
  std::size_t output_stride_;
  std::vector<double> hidden_columns_;
  std::vector<double> hidden_bias_;
  std::vector<double> output_columns_;
  std::vector<double> output_bias_;
};

/// Persistent activations carried between time steps.
struct RnnState {
  std::array<double, simd::padded(kMaxHidden)> hidden{};
  std::array<double, simd::padded(kOutputSize)> output{};
  std::size_t hidden_size = 0;
  std::size_t output_size = 0;

  friend bool operator==(const RnnState&, const RnnState&) = default;
};

using NetworkOutput = std::array<double, kOutputSize>;

struct StepResult {
  NetworkOutput output{};
  RnnState next;
};

RnnState reset_state(const Topology& topology);

/// One forward pass:
///   h_t = tanh(W_in x + W_hh h_{t-1} + b_h)
///   o_t = tanh(W_ho h_t + W_oo o_{t-1} + b_o)
/// input must hold exactly topology.inputs values. Throws EvaluationError on
/// non-finite input, StructuralError on a length mismatch.
StepResult step(const RnnParameters& params, const RnnState& state, std::span<const double> input,
                const simd::KernelTable& kernels = simd::active_kernels());

/// Argmax over the first n outputs, lowest index on ties.
std::size_t interpret_discrete(std::span<const double> output, std::size_t n);

struct Bounds {
  double min = -1.0;
  double max = 1.0;
};

/// Linear map of each tanh output from (-1, 1) onto its task bounds.
std::vector<double> interpret_box(std::span<const double> output, std::span<const Bounds> bounds);

}  // namespace wpevo
