#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpevo/network.hpp"
#include "wpevo/random.hpp"
#include "wpevo/topology.hpp"

namespace wpevo {

/// Flat real weights plus a connection mask over the fixed node layout.
/// A masked-off position keeps its stored weight but decodes to 0.
class Genome {
 public:
  Genome() = default;
  /// Throws StructuralError when either sequence length differs from the
  /// topology's parameter count.
  Genome(Topology topology, std::vector<double> weights, std::vector<std::uint8_t> mask);

  /// All weights 0, all connections inactive.
  static Genome empty(Topology topology = kStandardTopology);

  const Topology& topology() const { return topology_; }
  std::size_t size() const { return weights_.size(); }

  std::span<const double> weights() const { return weights_; }
  std::span<const std::uint8_t> mask() const { return mask_; }

  bool active(std::size_t i) const { return mask_[i] != 0; }
  double weight(std::size_t i) const { return weights_[i]; }
  /// weight * mask
  double effective(std::size_t i) const { return mask_[i] ? weights_[i] : 0.0; }
  std::vector<double> effective_weights() const;

  void set_weight(std::size_t i, double w) { weights_[i] = w; }
  void set_active(std::size_t i, bool on) { mask_[i] = on ? 1 : 0; }

  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  Topology topology_{};
  std::vector<double> weights_;
  std::vector<std::uint8_t> mask_;
};

/// Activates round(init_fraction * parameter_count) positions chosen uniformly
/// without replacement; active weights ~ N(0, 1), inactive weights stored as 0.
Genome random_genome(const Topology& topology, double init_fraction, Rng& rng);

RnnParameters decode(const Genome& genome);
/// Same as decode(genome) after checking the genome was built for topology.
RnnParameters decode(const Genome& genome, const Topology& topology);

std::size_t connection_count(const Genome& genome);

/// Text form: "topology I H O", a line of weights, a line of 0|1 mask flags.
/// Weights use shortest round-trip formatting.
std::string serialize(const Genome& genome);
/// Throws ParseError naming the offending field, StructuralError on length
/// disagreement.
Genome deserialize(std::string_view text);

Genome load_genome(const std::string& path);
void save_genome(const Genome& genome, const std::string& path);

}  // namespace wpevo
