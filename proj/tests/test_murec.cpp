#include <gtest/gtest.h>

#include "tkft/corpus.hpp"
#include "tkft/error.hpp"
#include "tkft/murec.hpp"

using namespace tkft;

namespace {

std::vector<Natural> nat(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

Natural value_of(const ExprPtr& e, std::vector<Natural> args, std::uint64_t fuel = 100000) {
  const auto r = eval(e, args, fuel);
  EXPECT_EQ(r.outcome, EvalResult::Outcome::Value);
  EXPECT_EQ(r.values.size(), 1u);
  return r.values.empty() ? Natural(-1) : r.values[0];
}

}  // namespace

TEST(Eval, Succ) { EXPECT_EQ(value_of(Expr::succ(), nat({3})), 4); }

TEST(Eval, AddFromFactories) {
  const auto add = Expr::primrec(Expr::proj(1, 1), Expr::compose(Expr::succ(), Expr::proj(2, 3)));
  EXPECT_EQ(value_of(add, nat({2, 3})), 5);
  EXPECT_EQ(add->arity(), 2);
}

TEST(Eval, CorpusAgainstArithmetic) {
  for (int x = 0; x <= 8; ++x) {
    EXPECT_EQ(value_of(corpus::program("succ"), nat({x})), x + 1);
    EXPECT_EQ(value_of(corpus::program("pred"), nat({x})), std::max(x - 1, 0));
    EXPECT_EQ(value_of(corpus::program("mu"), nat({x})), x);
    EXPECT_EQ(value_of(corpus::program("sign"), nat({x})), x > 0 ? 1 : 0);
    for (int y = 0; y <= 8; ++y) {
      EXPECT_EQ(value_of(corpus::program("add"), nat({y, x})), x + y);
      EXPECT_EQ(value_of(corpus::program("mul"), nat({y, x})), x * y);
      EXPECT_EQ(value_of(corpus::program("tsub"), nat({x, y})), std::max(x - y, 0));
    }
  }
}

TEST(Eval, MuOfTruncatedSubtraction) {
  EXPECT_EQ(value_of(corpus::program("mu"), nat({3})), 3);
}

TEST(Eval, NoZeroRunsOutOfFuel) {
  const auto nozero = Expr::mu(Expr::constant(1, 2));
  const auto r = eval(nozero, nat({7}), 10000);
  EXPECT_EQ(r.outcome, EvalResult::Outcome::OutOfFuel);
  EXPECT_EQ(r.fuel_used, 10000u);
}

TEST(Eval, Tuple) {
  const auto swap = Expr::tuple({Expr::proj(2, 2), Expr::proj(1, 2)});
  const auto r = eval(swap, nat({4, 9}), 100);
  EXPECT_EQ(r.values, nat({9, 4}));
}

TEST(Eval, ArityErrors) {
  EXPECT_THROW(eval(Expr::succ(), nat({1, 2}), 10), MalformedInput);
  EXPECT_THROW(Expr::compose(Expr::succ(), Expr::tuple({Expr::proj(1, 2), Expr::proj(2, 2)})), Error);
  EXPECT_NO_THROW(Expr::compose(Expr::succ(), Expr::proj(1, 2))->arity());
  EXPECT_THROW(Expr::proj(3, 2), Error);
  EXPECT_THROW(Expr::primrec(Expr::proj(1, 1), Expr::succ()), Error);
  EXPECT_THROW(Expr::mu(Expr::tuple({Expr::proj(1, 2), Expr::proj(2, 2)})), Error);
}

TEST(Pairing, Examples) {
  EXPECT_EQ(pair_encode(nat({2, 1})), 12);
  EXPECT_EQ(pair_encode(nat({})), 1);
  EXPECT_EQ(pair_decode(12, 2), nat({2, 1}));
  EXPECT_EQ(pair_decode(1, 3), nat({0, 0, 0}));
  EXPECT_THROW(pair_decode(0, 1), MalformedInput);
  EXPECT_THROW(pair_decode(5, 2), MalformedInput);
}

TEST(Pairing, RoundTrip) {
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 4; ++c) EXPECT_EQ(pair_decode(pair_encode(nat({a, b, c})), 3), nat({a, b, c}));
}

TEST(Parse, RoundTripAndLet) {
  for (const auto& p : corpus::programs()) {
    const auto e = parse_program(p.source);
    EXPECT_EQ(format_expr(parse_program(format_expr(e))), format_expr(e)) << p.name;
  }
  const auto e = parse_program("let s = succ;  # one more\ncomp(s, s)");
  EXPECT_EQ(value_of(e, nat({1})), 3);
  EXPECT_THROW(parse_program("comp(succ"), MalformedInput);
  EXPECT_THROW(parse_program("nothing"), MalformedInput);
}

TEST(Structure, LoopNodesAndReads) {
  EXPECT_EQ(loop_nodes(corpus::program("succ")), 0u);
  EXPECT_EQ(loop_nodes(corpus::program("add")), 1u);
  EXPECT_EQ(loop_nodes(corpus::program("mu")), 3u);
  EXPECT_EQ(reads_of(Expr::proj(1, 2), 1), 1);
  EXPECT_EQ(reads_of(Expr::proj(1, 2), 2), 0);
  EXPECT_EQ(reads_of(Expr::tuple({Expr::proj(1, 1), Expr::proj(1, 1)}), 1), 2);
}
