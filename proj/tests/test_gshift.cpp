#include <map>

#include <gtest/gtest.h>

#include "tkft/corpus.hpp"
#include "tkft/error.hpp"
#include "tkft/gshift.hpp"
#include "tkft/random.hpp"

using namespace tkft;

namespace {

BiWord word_of(std::initializer_list<std::int64_t> ones) {
  BiWord w;
  for (auto n : ones) w.set(n, 1);
  return w;
}

// Lambda_S straight from the definition on a sparse map.
BiWord apply_by_definition(const GeneralizedShift& s, const BiWord& t) {
  std::map<std::int64_t, int> cells;
  for (auto n = t.lo(); n < t.hi(); ++n) cells[n] = t.get(n);
  auto at = [&](std::int64_t n) { return cells.count(n) ? cells[n] : 0; };
  unsigned w = 0;
  for (int i = 0; i < s.r(); ++i) w = w * 2 + static_cast<unsigned>(at(i));
  const auto g = s.G(w);
  for (int i = 0; i < s.r(); ++i) cells[i] = static_cast<int>((g >> (s.r() - 1 - i)) & 1);
  BiWord out;
  for (auto [n, v] : cells)
    if (v) out.set(n - s.F(w), 1);
  return out;
}

}  // namespace

TEST(Apply, JumpShiftExample) {
  const auto s = corpus::jump_shift();
  EXPECT_EQ(apply(s, word_of({-1, 1, 2})), word_of({-4, -3, -1}));
}

TEST(Apply, IdentityShift) {
  Rng rng(1);
  const auto s = GeneralizedShift::identity(1);
  for (int k = 0; k < 50; ++k) {
    const auto t = corpus::random_biword(rng, 6);
    EXPECT_EQ(apply(s, t), t);
  }
}

TEST(Apply, BernoulliShift) {
  EXPECT_EQ(apply(corpus::full_shift(), word_of({1, -1})), word_of({0, -2}));
}

TEST(Apply, MatchesDefinition) {
  Rng rng(2);
  std::vector<GeneralizedShift> shifts = {corpus::jump_shift(), corpus::jump_completion(),
                                          corpus::full_shift()};
  for (int k = 0; k < 10; ++k) {
    const int r = static_cast<int>(rng.between(1, 4));
    std::vector<Window> g(std::size_t{1} << r);
    std::vector<std::int64_t> f(g.size());
    for (std::size_t w = 0; w < g.size(); ++w) {
      g[w] = rng.below(g.size());
      f[w] = rng.between(-5, 5);
    }
    shifts.emplace_back(r, g, f);
  }
  for (const auto& s : shifts)
    for (int k = 0; k < 100; ++k) {
      const auto t = corpus::random_biword(rng, 8);
      EXPECT_EQ(apply(s, t), apply_by_definition(s, t));
    }
}

TEST(Encoding, SuccStandardCodes) {
  const auto m = corpus::succ1();
  const auto enc = Encoding::standard(m);
  EXPECT_EQ(enc.state_width, 2);
  EXPECT_EQ(enc.symbol_width, 1);
  EXPECT_EQ(enc.state_codes, (std::vector<Window>{0b01, 0b10}));
  EXPECT_EQ(enc.symbol_codes, (std::vector<Window>{0, 1}));
}

TEST(Encoding, BlankConfiguration) {
  const auto m = corpus::succ1();
  const auto enc = Encoding::standard(m);
  const auto w = encode_config(m, enc, Configuration{0, {}});
  // t_{-1} occupies bit 0, the state code bits 1..2.
  EXPECT_EQ(w, word_of({2}));
}

TEST(Encoding, SuccConjugacyOneStep) {
  const auto m = corpus::succ1();
  const auto enc = Encoding::standard(m);
  const auto s = compile_tm(m, enc);
  Configuration c{0, {}};
  c.tape.set(0, 1);
  const auto next = *step(m, c);
  EXPECT_EQ(decode_config(m, enc, apply(s, encode_config(m, enc, c))), next);
}

TEST(Encoding, HaltingIsFrozen) {
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto m = corpus::random_machine(rng, 4);
    const auto s = compile_tm(m);
    const auto enc = Encoding::standard(m);
    Configuration c = corpus::random_configuration(rng, m, 4);
    c.state = static_cast<StateId>(m.num_states() - 1);
    const auto w = encode_config(m, enc, c);
    EXPECT_EQ(apply(s, w), w);
  }
}

TEST(Encoding, OrbitsAgree) {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto m = corpus::random_machine(rng, 4);
    const auto enc = Encoding::standard(m);
    const auto s = compile_tm(m, enc);
    Configuration c = corpus::random_configuration(rng, m, 5);
    BiWord w = encode_config(m, enc, c);
    for (int j = 0; j < 30; ++j) {
      const auto next = step(m, c);
      if (!next) break;
      c = *next;
      w = apply(s, w);
      ASSERT_EQ(w, encode_config(m, enc, c));
    }
  }
}

TEST(Encoding, RoundTrip) {
  Rng rng(10);
  for (int k = 0; k < 100; ++k) {
    const auto m = corpus::random_machine(rng, 5);
    const auto enc = Encoding::standard(m);
    const auto c = corpus::random_configuration(rng, m, 6);
    EXPECT_EQ(decode_config(m, enc, encode_config(m, enc, c)), c);
  }
}

TEST(Encoding, AllZeroWordHasNoState) {
  const auto m = corpus::succ1();
  EXPECT_THROW(decode_config(m, Encoding::standard(m), BiWord{}), DecodeError);
}

TEST(Encoding, ValidateRejectsBadCodes) {
  const auto m = corpus::succ1();
  auto enc = Encoding::standard(m);
  enc.state_codes[1] = enc.state_codes[0];
  EXPECT_THROW(enc.validate(m), ConstructionError);
  enc = Encoding::standard(m);
  enc.state_codes[0] = 0;
  EXPECT_THROW(enc.validate(m), ConstructionError);
  enc = Encoding::standard(m);
  enc.symbol_codes = {1, 0};
  EXPECT_THROW(enc.validate(m), ConstructionError);
}

TEST(Bijective, FullShift) { EXPECT_TRUE(is_bijective(corpus::full_shift()).bijective); }

TEST(Bijective, TwoToOne) {
  const auto r = is_bijective(GeneralizedShift(1, {1, 1}, {0, 0}));
  ASSERT_FALSE(r.bijective);
  ASSERT_TRUE(r.collision);
  EXPECT_EQ(std::min(r.collision->first, r.collision->second), 0u);
  EXPECT_EQ(std::max(r.collision->first, r.collision->second), 1u);
}

TEST(Bijective, JumpShiftIsNotButCompletionIs) {
  EXPECT_FALSE(is_bijective(corpus::jump_shift()).bijective);
  EXPECT_TRUE(is_bijective(corpus::jump_completion()).bijective);
}

TEST(Bijective, CompiledReversibleMachines) {
  Rng rng(12);
  for (int k = 0; k < 10; ++k) {
    const auto m = corpus::random_reversible_machine(rng, 2 + k % 3);
    ASSERT_TRUE(is_reversible(m).reversible);
    EXPECT_TRUE(is_bijective(compile_tm(m)).bijective);
  }
}

TEST(Bijective, AgreesWithBruteForce) {
  // On words supported in [-6, 6], a non-injective shift shows a collision
  // among images; the piece test must agree on these small shifts.
  Rng rng(13);
  for (int k = 0; k < 40; ++k) {
    const int r = static_cast<int>(rng.between(1, 2));
    std::vector<Window> g(std::size_t{1} << r);
    std::vector<std::int64_t> f(g.size());
    for (std::size_t w = 0; w < g.size(); ++w) {
      g[w] = rng.below(g.size());
      f[w] = rng.between(-2, 2);
    }
    const GeneralizedShift s(r, g, f);
    std::map<std::vector<std::pair<std::int64_t, int>>, int> images;
    bool collision = false;
    for (unsigned bits = 0; bits < (1u << 13) && !collision; ++bits) {
      BiWord t;
      for (int i = 0; i < 13; ++i) t.set(i - 6, static_cast<std::uint8_t>((bits >> i) & 1));
      const auto img = apply(s, t);
      std::vector<std::pair<std::int64_t, int>> key;
      for (auto n = img.lo(); n < img.hi(); ++n) key.emplace_back(n, img.get(n));
      collision = images[key]++ > 0;
    }
    EXPECT_EQ(is_bijective(s).bijective, !collision) << format_shift(s);
  }
}

TEST(Inverse, UndoesShift) {
  Rng rng(14);
  for (const auto& s : {corpus::full_shift(), corpus::jump_completion()}) {
    const InverseShift inv(s);
    for (int k = 0; k < 100; ++k) {
      const auto t = corpus::random_biword(rng, 7);
      EXPECT_EQ(inv(apply(s, t)), t);
    }
  }
  EXPECT_THROW(InverseShift{corpus::jump_shift()}, Refused);
}

TEST(Cylinders, Overlap) {
  const std::vector<Cylinder> cs = {{{0, 1}, {}}, {{1}, {0}}, {{0}, {1}}};
  const auto hit = find_overlap(cs);
  ASSERT_TRUE(hit);
  EXPECT_EQ(std::min(hit->first, hit->second), 0u);
  EXPECT_EQ(std::max(hit->first, hit->second), 2u);
  EXPECT_FALSE(intersects({{0}, {}}, {{1}, {}}));
  EXPECT_TRUE(intersects({{0}, {1}}, {{0, 1}, {}}));
  EXPECT_EQ(format_cylinder({{0, 1}, {1}}), "(01;1)");
}

TEST(Format, TableRoundTrip) {
  for (const auto& s : {corpus::jump_shift(), corpus::full_shift(), compile_tm(corpus::succ1())}) {
    EXPECT_EQ(parse_shift(format_shift(s)), s);
    EXPECT_EQ(parse_shift_any(shift_to_json(s).dump()), s);
  }
  EXPECT_THROW(parse_shift("r: 1\n0 -> 0 0\n"), MalformedInput);
  EXPECT_EQ(parse_window("0110"), 6u);
  EXPECT_EQ(format_window(6, 4), "0110");
}
