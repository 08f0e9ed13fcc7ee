#include <gtest/gtest.h>

#include "tkft/cantor.hpp"
#include "tkft/corpus.hpp"
#include "tkft/error.hpp"
#include "tkft/random.hpp"

using namespace tkft;

namespace {

BiWord word_of(std::initializer_list<std::int64_t> ones) {
  BiWord w;
  for (auto n : ones) w.set(n, 1);
  return w;
}

Rational q(long a, long b) { return Rational(a, b); }

// The series evaluated digit by digit with 3^k built up by multiplication.
CantorPoint kappa_series(const BiWord& t) {
  CantorPoint p{0, 0};
  Rational scale(1, 3);
  for (std::int64_t n = 0; n < std::max<std::int64_t>(t.hi(), 0); ++n, scale /= 3)
    if (t.get(n)) p.x += 2 * scale;
  scale = Rational(1, 3);
  for (std::int64_t k = 1; k <= std::max<std::int64_t>(-t.lo(), 0); ++k, scale /= 3)
    if (t.get(-k)) p.y += 2 * scale;
  return p;
}

}  // namespace

TEST(Kappa, Examples) {
  EXPECT_EQ(kappa(BiWord{}), (CantorPoint{0, 0}));
  EXPECT_EQ(kappa(word_of({0})), (CantorPoint{q(2, 3), 0}));
  EXPECT_EQ(kappa(word_of({-1})), (CantorPoint{0, q(2, 3)}));
}

TEST(Kappa, SeriesAndInverse) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto t = corpus::random_biword(rng, 10);
    const auto p = kappa(t);
    EXPECT_EQ(p, kappa_series(t));
    EXPECT_EQ(kappa_inv(p), t);
  }
}

TEST(Kappa, DomainGap) {
  EXPECT_THROW(kappa_inv({q(1, 2), 0}), DomainGap);
  EXPECT_THROW(kappa_inv({q(1, 3), 0}), DomainGap);
  EXPECT_THROW(kappa_inv({0, q(7, 9)}), DomainGap);
}

TEST(Blocks, Geometry) {
  const CantorBlock b{{1, 0}, {1}};
  EXPECT_EQ(x_lo(b), q(2, 3));
  EXPECT_EQ(y_lo(b), q(2, 3));
  EXPECT_EQ(area(b), q(1, 27));
  EXPECT_TRUE(contains(b, kappa(word_of({0, -1, 5}))));
  EXPECT_FALSE(contains(b, kappa(word_of({0, 1, -1}))));
}

TEST(BlockMap, FullShiftPiece) {
  const auto f = gshift_to_blockmap(corpus::full_shift());
  ASSERT_EQ(f.pieces.size(), 2u);
  const auto& zero = f.pieces[0];
  EXPECT_EQ(zero.alpha(), 3);
  EXPECT_EQ(zero.gamma(), q(1, 3));
  EXPECT_EQ(zero.map({q(2, 9), q(2, 3)}), (CantorPoint{q(2, 3), q(2, 9)}));
  EXPECT_EQ(apply_blockmap(f, {q(2, 9), q(2, 3)}), (CantorPoint{q(2, 3), q(2, 9)}));
  EXPECT_EQ(apply_blockmap(f, {q(2, 3), 0}), kappa(word_of({-1})));
  EXPECT_EQ(apply_blockmap(f, {q(2, 3), 0}), (CantorPoint{0, q(2, 3)}));
}

TEST(BlockMap, IdentityPieces) {
  const auto f = gshift_to_blockmap(GeneralizedShift::identity(2));
  for (const auto& p : f.pieces) {
    EXPECT_EQ(p.alpha(), 1);
    EXPECT_EQ(p.gamma(), 1);
    EXPECT_EQ(p.beta(), 0);
    EXPECT_EQ(p.delta(), 0);
  }
  for (const auto& p : {CantorPoint{q(2, 9), q(8, 27)}, CantorPoint{0, 0}})
    EXPECT_EQ(apply_blockmap(f, p), p);
}

TEST(BlockMap, ConjugacyOnCorpus) {
  Rng rng(2);
  for (const auto& s : {corpus::full_shift(), corpus::jump_completion(),
                        GeneralizedShift(2, {3, 2, 0, 1}, {-2, -2, -2, -2}),
                        GeneralizedShift(2, {1, 0, 3, 2}, {5, 5, 5, 5})}) {
    const auto f = gshift_to_blockmap(s);
    for (int k = 0; k < 500; ++k) {
      const auto t = corpus::random_biword(rng, 8);
      ASSERT_EQ(apply_blockmap(f, kappa(t)), kappa_series(apply(s, t))) << format_biword(t);
    }
  }
}

TEST(BlockMap, RefusesNonBijective) {
  EXPECT_THROW(gshift_to_blockmap(corpus::jump_shift()), Refused);
}

TEST(Volume, Reports) {
  for (const auto& s : {corpus::full_shift(), corpus::jump_completion(), GeneralizedShift::identity(3)}) {
    const auto r = check_volume(gshift_to_blockmap(s));
    EXPECT_TRUE(r.ok()) << r.describe();
    EXPECT_EQ(r.source_area, r.target_area);
  }
  BlockMap bad{{BlockPiece{{{0}, {}}, {{0}, {}}, 1, 0}, BlockPiece{{{1}, {}}, {{1}, {}}, 0, 0}}};
  const auto r = check_volume(bad);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].piece, 0u);
}

TEST(Volume, AreaTotalsDiffer) {
  BlockMap bad{{BlockPiece{{{0}, {}}, {{0}, {}}, 0, 0}, BlockPiece{{{1}, {}}, {{1, 0}, {}}, 0, 0}}};
  EXPECT_FALSE(check_volume(bad).ok());
}

TEST(Disjoint, SourcesAndTargets) {
  EXPECT_TRUE(check_disjoint(gshift_to_blockmap(corpus::jump_completion())).ok());
  BlockMap twice{{BlockPiece{{{0}, {}}, {{0}, {}}, 0, 0}, BlockPiece{{{0, 1}, {}}, {{1}, {}}, 0, 0}}};
  const auto r = check_disjoint(twice);
  EXPECT_TRUE(r.sources);
  EXPECT_FALSE(r.targets);
}

TEST(Format, RoundTrip) {
  const auto f = gshift_to_blockmap(corpus::jump_completion());
  const auto text = format_blockmap(f);
  EXPECT_EQ(format_blockmap(parse_blockmap(text)), text);
  EXPECT_EQ(format_blockmap(parse_blockmap_any(blockmap_to_json(f).dump())), text);
  EXPECT_NE(text.find("source(000;) -> target(;000) scale(3^3, 3^-3)"), std::string::npos);
  EXPECT_THROW(parse_blockmap("source(0;) -> nowhere"), MalformedInput);
}

TEST(Svg, OneRectanglePairPerPiece) {
  const auto count = [](const std::string& s) {
    std::size_t n = 0;
    for (auto i = s.find("<rect"); i != std::string::npos; i = s.find("<rect", i + 1)) ++n;
    return n;
  };
  const auto f = gshift_to_blockmap(corpus::jump_completion());
  const auto blank_frame = count(blockmap_svg(BlockMap{}));
  EXPECT_EQ(count(blockmap_svg(f)) - blank_frame, 2 * f.pieces.size());
  const auto id = gshift_to_blockmap(GeneralizedShift::identity(1));
  EXPECT_EQ(count(blockmap_svg(id)) - blank_frame, 2 * id.pieces.size());
}
