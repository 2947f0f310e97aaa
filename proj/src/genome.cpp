#include "wpevo/genome.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "wpevo/errors.hpp"

namespace wpevo {

Genome::Genome(Topology topology, std::vector<double> weights, std::vector<std::uint8_t> mask)
    : topology_(topology), weights_(std::move(weights)), mask_(std::move(mask)) {
  topology_.validate();
  const std::size_t expected = topology_.parameter_count();
  if (weights_.size() != expected || mask_.size() != expected) {
    throw StructuralError("genome has " + std::to_string(weights_.size()) + " weights and " +
                          std::to_string(mask_.size()) + " mask flags, topology needs " +
                          std::to_string(expected));
  }
  for (auto& flag : mask_) flag = flag ? 1 : 0;
}

Genome Genome::empty(Topology topology) {
  const std::size_t n = topology.parameter_count();
  return Genome(topology, std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0));
}

std::vector<double> Genome::effective_weights() const {
  std::vector<double> out(weights_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = effective(i);
  return out;
}

Genome random_genome(const Topology& topology, double init_fraction, Rng& rng) {
  if (!(init_fraction >= 0.0 && init_fraction <= 1.0)) {
    throw ContractViolation("init_fraction must lie in [0, 1]");
  }
  Genome genome = Genome::empty(topology);
  const std::size_t n = genome.size();
  const auto active =
      static_cast<std::size_t>(std::llround(init_fraction * static_cast<double>(n)));

  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  std::vector<std::size_t> chosen;
  chosen.reserve(active);
  std::sample(indices.begin(), indices.end(), std::back_inserter(chosen), active, rng);

  for (std::size_t i : chosen) {
    genome.set_active(i, true);
    genome.set_weight(i, standard_normal(rng));
  }
  return genome;
}

RnnParameters decode(const Genome& genome) {
  RnnParameters params(genome.topology());
  const ParameterLayout layout(genome.topology());
  for (std::size_t i = 0; i < genome.size(); ++i) {
    if (genome.active(i)) params.set(layout.coordinate(i), genome.weight(i));
  }
  return params;
}

RnnParameters decode(const Genome& genome, const Topology& topology) {
  if (!(genome.topology() == topology) || genome.size() != topology.parameter_count()) {
    throw StructuralError("genome length does not match topology");
  }
  return decode(genome);
}

std::size_t connection_count(const Genome& genome) {
  const auto mask = genome.mask();
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

std::string serialize(const Genome& genome) {
  const Topology& t = genome.topology();
  std::string out = "topology " + std::to_string(t.inputs) + " " + std::to_string(t.hidden) +
                    " " + std::to_string(t.outputs) + "\n";
  char buffer[64];
  for (std::size_t i = 0; i < genome.size(); ++i) {
    if (i > 0) out += ' ';
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, genome.weight(i));
    out.append(buffer, end);
  }
  out += '\n';
  for (std::size_t i = 0; i < genome.size(); ++i) {
    if (i > 0) out += ' ';
    out += genome.active(i) ? '1' : '0';
  }
  out += '\n';
  return out;
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

std::size_t parse_count(std::string_view token, const char* field) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("genome field '") + field + "': not a count: '" +
                     std::string(token) + "'");
  }
  return value;
}

}  // namespace

Genome deserialize(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!split_tokens(line).empty()) lines.push_back(line);
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError("genome field 'topology': missing header line");

  const auto header = split_tokens(lines[0]);
  if (header.size() != 4 || header[0] != "topology") {
    throw ParseError("genome field 'topology': expected 'topology I H O'");
  }
  const Topology topology{parse_count(header[1], "topology.inputs"),
                          parse_count(header[2], "topology.hidden"),
                          parse_count(header[3], "topology.outputs")};
  if (lines.size() < 2) throw ParseError("genome field 'weights': missing line");
  if (lines.size() < 3) throw ParseError("genome field 'mask': missing line");
  if (lines.size() > 3) throw ParseError("genome: unexpected trailing content");

  std::vector<double> weights;
  for (std::string_view token : split_tokens(lines[1])) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw ParseError("genome field 'weights': bad real '" + std::string(token) +
                       "' at position " + std::to_string(weights.size()));
    }
    weights.push_back(value);
  }
  std::vector<std::uint8_t> mask;
  for (std::string_view token : split_tokens(lines[2])) {
    if (token != "0" && token != "1") {
      throw ParseError("genome field 'mask': expected 0|1, got '" + std::string(token) +
                       "' at position " + std::to_string(mask.size()));
    }
    mask.push_back(token == "1" ? 1 : 0);
  }
  if (weights.size() != mask.size()) {
    throw StructuralError("genome mask length " + std::to_string(mask.size()) +
                          " differs from weight length " + std::to_string(weights.size()));
  }
  return Genome(topology, std::move(weights), std::move(mask));
}

Genome load_genome(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open genome file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

void save_genome(const Genome& genome, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write genome file " + path);
  out << serialize(genome);
}

}  // namespace wpevo
