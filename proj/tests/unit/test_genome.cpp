#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "wpevo/errors.hpp"
#include "wpevo/genome.hpp"
#include "wpevo/topology.hpp"

using namespace wpevo;

TEST_CASE("standard topology has 108 parameters") {
  CHECK(kStandardTopology.parameter_count() == 108);
  CHECK((Topology{6, 1, 3}.parameter_count() == 6 + 1 + 1 + 3 + 9 + 3));
  CHECK_NOTHROW(kStandardTopology.validate());
  CHECK_THROWS_AS((Topology{5, 6, 3}.validate()), StructuralError);
  CHECK_THROWS_AS((Topology{6, 7, 3}.validate()), StructuralError);
}

TEST_CASE("parameter layout is a bijection in canonical block order") {
  const ParameterLayout layout(kStandardTopology);
  CHECK(layout.offset(Block::InputHidden) == 0);
  CHECK(layout.offset(Block::HiddenHidden) == 36);
  CHECK(layout.offset(Block::HiddenBias) == 72);
  CHECK(layout.offset(Block::HiddenOutput) == 78);
  CHECK(layout.offset(Block::OutputOutput) == 96);
  CHECK(layout.offset(Block::OutputBias) == 105);
  // row-major by destination
  CHECK(layout.index({Block::InputHidden, 1, 0}) == 6);
  CHECK(layout.index({Block::HiddenOutput, 2, 5}) == 78 + 2 * 6 + 5);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    CHECK(layout.index(layout.coordinate(i)) == i);
  }
  CHECK_THROWS_AS(layout.coordinate(108), StructuralError);
  CHECK_THROWS_AS(layout.index({Block::OutputBias, 3, 0}), StructuralError);
}

TEST_CASE("random genome activates round(fraction * 108) positions") {
  Rng rng(7);
  for (const auto& [fraction, expected] :
       {std::pair{0.1, std::size_t{11}}, std::pair{0.0, std::size_t{0}},
        std::pair{1.0, std::size_t{108}}}) {
    const Genome g = random_genome(kStandardTopology, fraction, rng);
    CHECK(g.size() == 108);
    CHECK(connection_count(g) == expected);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.active(i)) CHECK(g.weight(i) == 0.0);
    }
  }
}

TEST_CASE("random genome is deterministic per seed") {
  Rng a(42), b(42), c(43);
  const Genome ga = random_genome(kStandardTopology, 0.1, a);
  CHECK(ga == random_genome(kStandardTopology, 0.1, b));
  CHECK_FALSE(ga == random_genome(kStandardTopology, 0.1, c));
}

TEST_CASE("decode places effective weights at their coordinates") {
  Genome g = Genome::empty();
  const ParameterLayout layout(kStandardTopology);
  const std::size_t ih = layout.index({Block::InputHidden, 2, 4});
  const std::size_t ob = layout.index({Block::OutputBias, 1, 0});
  const std::size_t off = layout.index({Block::HiddenHidden, 0, 3});
  g.set_weight(ih, 0.75);
  g.set_active(ih, true);
  g.set_weight(ob, -1.5);
  g.set_active(ob, true);
  g.set_weight(off, 9.0);  // stored but masked off
  const RnnParameters p = decode(g);
  CHECK(p.input_hidden(2, 4) == 0.75);
  CHECK(p.output_bias(1) == -1.5);
  CHECK(p.hidden_hidden(0, 3) == 0.0);
  CHECK(p.flatten() == g.effective_weights());
  CHECK_THROWS_AS(decode(g, Topology{6, 5, 3}), StructuralError);
}

TEST_CASE("genome text round trip is exact") {
  Rng rng(3);
  Genome g = random_genome(kStandardTopology, 0.5, rng);
  g.set_weight(0, 0.1);
  g.set_weight(1, -1e-300);
  g.set_weight(2, 1.0 / 3.0);
  const std::string text = serialize(g);
  CHECK(text.rfind("topology 6 6 3\n", 0) == 0);
  const Genome back = deserialize(text);
  CHECK(back == g);
  CHECK(serialize(back) == text);
}

TEST_CASE("genome parse errors") {
  const std::string good = serialize(Genome::empty());
  CHECK_THROWS_AS(deserialize("topology 6 x 3\n"), ParseError);
  CHECK_THROWS_AS(deserialize("shape 6 6 3\n"), ParseError);
  std::string bad_flag = good;
  bad_flag[bad_flag.size() - 2] = '2';
  CHECK_THROWS_AS(deserialize(bad_flag), ParseError);
  std::string short_mask = good.substr(0, good.size() - 3) + "\n";
  CHECK_THROWS_AS(deserialize(short_mask), StructuralError);
  CHECK_THROWS_AS(Genome(kStandardTopology, std::vector<double>(107), std::vector<std::uint8_t>(108)),
                  StructuralError);
  try {
    deserialize("topology 6 6 3\n1 2 nope\n0 0 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("weight") != std::string::npos);
  }
}
