#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "factorization.hpp"
#include "partial.hpp"

#include <cstdint>

using namespace feq;

namespace {

SetPtr half_grid() {
  return FiniteSet::make(
      {Element::integer(0), Element::rational(Rational(1, 2)), Element::integer(1)}, "A");
}

SetPtr quarter_values() {
  std::vector<Element> u;
  for (int i = 0; i <= 4; ++i) u.push_back(Element::rational(Rational(i, 4)));
  return FiniteSet::make(u, "U");
}

// J(x,y) = (x+y)/2 on the half grid; index arithmetic works in half-steps
TabulatedFn mean_total(const SetPtr& A, const SetPtr& U) {
  return TabulatedFn::tabulate({A, A}, U,
                               [](const std::vector<int>& i) { return i[0] + i[1]; });
}

TabulatedFn mean_low(const SetPtr& A, const SetPtr& U) {
  return TabulatedFn::tabulate_partial({A, A}, U, [](const std::vector<int>& i) {
    return i[0] + i[1] <= 2 ? i[0] + i[1] : -1;
  });
}

TabulatedFn mean_high(const SetPtr& A, const SetPtr& U) {
  return TabulatedFn::tabulate_partial({A, A}, U, [](const std::vector<int>& i) {
    return i[0] + i[1] >= 2 ? i[0] + i[1] : -1;
  });
}

// a member of every mean instance: the index of x+y+z in half-steps
TabulatedFn sum_member(const SetPtr& A) {
  SetPtr s = FiniteSet::integers(7, "S");
  return TabulatedFn::tabulate({A, A, A}, s, [](const std::vector<int>& i) {
    return i[0] + i[1] + i[2];
  });
}

std::uint64_t rng_state = 0xc3a5c85c97cb3127ull;
int rnd(int m) {
  rng_state = rng_state * 6364136223846793005ull + 1442695040888963407ull;
  return static_cast<int>((rng_state >> 33) % static_cast<std::uint64_t>(m));
}

Rational rat_div(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den, a.den * b.num);
}

} // namespace

TEST_CASE("the unrestricted mean instance fails every base point") {
  SetPtr A = half_grid(), U = quarter_values();
  PartialInstance base("mean", A, A, A, mean_total(A, U), mean_total(A, U));
  for (int a = 0; a < 3; ++a)
    CHECK_FALSE(partial_range_condition(base, Side::K, A->at(a)));
  TabulatedFn F = sum_member(A);
  try {
    partial_reduce(base, F, Side::K, Element::integer(0));
    CHECK(false);
  } catch (const hypothesis_error& e) {
    CHECK(std::string(e.what()).find("consider restricting D_K") != std::string::npos);
  }
}

TEST_CASE("both mean restrictions reduce on their qualifying sets") {
  SetPtr A = half_grid(), U = quarter_values();
  TabulatedFn J = mean_total(A, U);
  PartialInstance low("mean-low", A, A, A, J, mean_low(A, U));
  PartialInstance high("mean-high", A, A, A, J, mean_high(A, U));
  TabulatedFn F = sum_member(A);

  CHECK(partial_range_condition(low, Side::K, Element::integer(0)));
  CHECK_FALSE(partial_range_condition(high, Side::K, Element::integer(0)));
  CHECK(partial_range_condition(high, Side::K, Element::integer(1)));

  PartialReduction pl = partial_reduce(low, F, Side::K, Element::integer(0));
  CHECK(pl.domain.size() == 18);
  CHECK(pl.qualifying.size() == 18);
  CHECK(pl.note.empty());
  // k doubles: 0,1/4,1/2 go to 0,1/2,1
  for (int u = 0; u < 3; ++u) CHECK(pl.qinv.g().element_at(u) == A->at(u));
  // map is (x+y+z)/2 and f reads off the half-step sum
  for (std::int64_t t : pl.qualifying) {
    std::vector<int> i = pl.map.decode(t);
    CHECK(pl.map.element_at(t) == Element::rational(Rational(i[0] + i[1] + i[2], 4)));
  }
  for (int u = 0; u < 5; ++u) CHECK(pl.f.value_at(u) == u);

  PartialReduction ph = partial_reduce(high, F, Side::K, Element::integer(1));
  CHECK(ph.qualifying.size() == 18);
  for (std::int64_t t : ph.qualifying) {
    std::vector<int> i = ph.map.decode(t);
    CHECK(ph.map.element_at(t) == Element::rational(Rational(i[0] + i[1] + i[2] - 2, 4)));
  }
  for (int u = 0; u < 5; ++u) CHECK(ph.f.value_at(u) == u + 2);
}

TEST_CASE("the two mean pieces merge into one total factor on sum classes") {
  SetPtr A = half_grid(), U = quarter_values();
  TabulatedFn J = mean_total(A, U);
  PartialInstance base("mean", A, A, A, J, mean_total(A, U));
  PartialInstance low("mean-low", A, A, A, J, mean_low(A, U));
  PartialInstance high("mean-high", A, A, A, J, mean_high(A, U));
  TabulatedFn F = sum_member(A);

  PartialReduction pl = partial_reduce(low, F, Side::K, Element::integer(0));
  PartialReduction ph = partial_reduce(high, F, Side::K, Element::integer(1));
  MergeReport m = merge_partial_reductions(base, {pl, ph});

  CHECK(m.status == "merged");
  CHECK(m.conflicts.empty());
  CHECK(m.uncovered.empty());
  CHECK(m.covered == 27);
  CHECK(m.domain_size == 27);
  REQUIRE(m.classes.size() == 7);
  // the middle classes glue one key from each piece
  CHECK(m.classes[2].keys.size() == 2);
  CHECK(m.classes[2].keys[0] == std::pair<int, int>(0, 2));
  CHECK(m.classes[2].keys[1] == std::pair<int, int>(1, 0));
  CHECK(m.classes[0].keys.size() == 1);
  CHECK(m.classes[6].keys.size() == 1);

  REQUIRE(m.f.has_value());
  REQUIRE(m.key_map.has_value());
  for (int c = 0; c < 7; ++c) CHECK(m.f->value_at(c) == c);
  // the pieced-together factorization reproduces F everywhere
  TabulatedFn glued = compose(*m.f, *m.key_map);
  CHECK(TabulatedFn::eq_pointwise(glued, F));
}

TEST_CASE("merging factors of different members reports the conflicts") {
  SetPtr A = half_grid(), U = quarter_values();
  TabulatedFn J = mean_total(A, U);
  PartialInstance base("mean", A, A, A, J, mean_total(A, U));
  PartialInstance low("mean-low", A, A, A, J, mean_low(A, U));
  PartialInstance high("mean-high", A, A, A, J, mean_high(A, U));

  SetPtr s = FiniteSet::integers(7, "S");
  TabulatedFn F = sum_member(A);
  TabulatedFn F2 = TabulatedFn::tabulate({A, A, A}, s, [](const std::vector<int>& i) {
    return 6 - (i[0] + i[1] + i[2]);
  });

  PartialReduction pl = partial_reduce(low, F, Side::K, Element::integer(0));
  PartialReduction ph = partial_reduce(high, F2, Side::K, Element::integer(1));
  MergeReport m = merge_partial_reductions(base, {pl, ph});

  CHECK(m.status == "conflict");
  CHECK_FALSE(m.f.has_value());
  // sums 2 and 4 disagree (1 and 3 collide at the same value 3 by symmetry)
  REQUIRE(m.conflicts.size() == 2);
  CHECK(m.conflicts[0].find("class c2") != std::string::npos);
  CHECK(m.conflicts[1].find("class c4") != std::string::npos);
  CHECK(m.classes[2].value == -1);
  CHECK(m.classes[3].value == 3);
}

TEST_CASE("a single all-covering part merges to itself") {
  SetPtr z3 = FiniteSet::integers(3, "Z3");
  TabulatedFn d = TabulatedFn::tabulate(
      {z3, z3}, z3, [](const std::vector<int>& i) { return ((i[0] - i[1]) % 3 + 3) % 3; });
  PartialInstance p("diff", z3, z3, z3, d, d);
  TabulatedFn F = TabulatedFn::tabulate({z3, z3, z3}, z3, [](const std::vector<int>& i) {
    return ((i[0] - i[1] + i[2]) % 3 + 3) % 3;
  });
  PartialReduction pr = partial_reduce(p, F, Side::K, Element::integer(0));
  CHECK(pr.qualifying.size() == 27);

  MergeReport m = merge_partial_reductions(p, {pr});
  CHECK(m.status == "merged");
  REQUIRE(m.classes.size() == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(m.classes[c].keys.size() == 1);
    CHECK(m.f->value_at(c) == pr.f.value_at(m.classes[c].keys[0].second));
  }
  CHECK(TabulatedFn::eq_pointwise(compose(*m.f, *m.key_map), F));
}

TEST_CASE("full-domain partial reduction matches the total-instance reduction") {
  SetPtr z3 = FiniteSet::integers(3, "Z3");
  TabulatedFn d = TabulatedFn::tabulate(
      {z3, z3}, z3, [](const std::vector<int>& i) { return ((i[0] - i[1]) % 3 + 3) % 3; });
  TripleInstance tins("diff", z3, z3, z3, d, d);
  PartialInstance pins("diff", z3, z3, z3, d, d);
  TabulatedFn F = TabulatedFn::tabulate({z3, z3, z3}, z3, [](const std::vector<int>& i) {
    int u = ((i[0] - i[1] + i[2]) % 3 + 3) % 3;
    return (u * u) % 3;
  });
  ReducedMember rm = reduce_member(tins, F, Side::K, Element::integer(0));
  PartialReduction pr = partial_reduce(pins, F, Side::K, Element::integer(0));
  CHECK(TabulatedFn::eq_pointwise(rm.f, pr.f));
  CHECK(TabulatedFn::eq_pointwise(rm.reduction.map, pr.map));
  CHECK(solution_partition(pins).partition == solution_partition(tins).partition);
}

TEST_CASE("a punched hole in D_J shrinks the qualifying set") {
  SetPtr z3 = FiniteSet::integers(3, "Z3");
  TabulatedFn J = TabulatedFn::tabulate_partial({z3, z3}, z3, [](const std::vector<int>& i) {
    return (i[0] == 0 && i[1] == 2) ? -1 : (i[0] + i[1]) % 3;
  });
  TabulatedFn K = TabulatedFn::tabulate(
      {z3, z3}, z3, [](const std::vector<int>& i) { return (i[0] + i[1]) % 3; });
  PartialInstance p("holed", z3, z3, z3, J, K);

  SolutionClass sc = solution_partition(p);
  PartialReduction pr = partial_reduce(p, sc.generator, Side::K, Element::integer(0));
  CHECK(pr.domain.size() == 24);
  CHECK(pr.qualifying.size() == 22);
  CHECK(pr.note == "22 of 24 joint-domain triples qualify");
  for (std::int64_t t : pr.qualifying)
    CHECK(pr.f.value_at(pr.map.value_at(t)) == sc.generator.value_at(t));

  MergeReport m = merge_partial_reductions(p, {pr});
  CHECK(m.status == "merged-partial");
  CHECK(m.covered == 22);
  REQUIRE(m.uncovered.size() == 2);
  CHECK(m.uncovered[0] == 2); // (0,0,2)
  CHECK(m.uncovered[1] == 4); // (0,1,1)
}

TEST_CASE("qualifying kernels refine the solution partition on random instances") {
  int reduced = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int nx = 1 + rnd(3), ny = 1 + rnd(3), nz = 1 + rnd(3);
    int uj = 1 + rnd(3), uk = 1 + rnd(3);
    SetPtr X = FiniteSet::integers(nx, "X"), Y = FiniteSet::integers(ny, "Y"),
           Z = FiniteSet::integers(nz, "Z");
    SetPtr UJ = FiniteSet::integers(uj, "UJ"), UK = FiniteSet::integers(uk, "UK");
    TabulatedFn J = TabulatedFn::tabulate_partial(
        {X, Y}, UJ, [&](const std::vector<int>&) { return rnd(4) == 0 ? -1 : rnd(uj); });
    TabulatedFn K = TabulatedFn::tabulate_partial(
        {Y, Z}, UK, [&](const std::vector<int>&) { return rnd(4) == 0 ? -1 : rnd(uk); });
    if (!J.defined_count() || !K.defined_count()) continue;
    PartialInstance p("rnd", X, Y, Z, J, K);
    try {
      compute_domain(p);
    } catch (const invalid_input&) {
      continue;
    }
    SolutionClass sc = solution_partition(p);
    for (Side side : {Side::K, Side::J}) {
      const SetPtr& bases = side == Side::K ? Z : X;
      for (int a = 0; a < bases->size(); ++a) {
        if (!partial_range_condition(p, side, bases->at(a))) continue;
        PartialReduction pr = partial_reduce(p, sc.generator, side, bases->at(a));
        ++reduced;
        for (std::size_t s = 0; s < pr.qualifying.size(); ++s)
          for (std::size_t t = s + 1; t < pr.qualifying.size(); ++t)
            if (pr.map.value_at(pr.qualifying[s]) == pr.map.value_at(pr.qualifying[t]))
              CHECK(sc.partition.block_of(pr.qualifying[s]) ==
                    sc.partition.block_of(pr.qualifying[t]));
      }
    }
  }
  CHECK(reduced > 0);
}

TEST_CASE("exact point identities for the rational-map reductions") {
  // J(x,y) = K(x,y) = (x+y)/(2(x-y+1)) away from y = x+1; the two closed
  // forms are checked as exact rational identities on integer points
  std::vector<std::int64_t> pts = {-2, -1, 0, 1, 2, 3};
  int checked_k = 0, checked_j = 0;
  for (std::int64_t xi : pts)
    for (std::int64_t yi : pts)
      for (std::int64_t zi : pts) {
        Rational x(xi), y(yi), z(zi);
        if (yi == xi + 1 || zi == yi + 1) continue;
        Rational two(2), one(1);

        // K side: k(t) = 2t/(1-2t), base a = 0
        Rational kv = rat_div(y + z, two * (y - z + one));
        if (one - two * kv != Rational(0)) {
          Rational w = rat_div(two * kv, one - two * kv);
          if (w != x + one) {
            Rational r = rat_div(x + w, two * (x - w + one));
            Rational den = two + two * x - two * y - Rational(6) * z -
                           Rational(4) * x * z;
            REQUIRE(den != Rational(0));
            CHECK(r == rat_div(x + y + z - two * x * z, den));
            ++checked_k;
          }
        }

        // J side: j(t) = 2t/(1+2t), base b = 0
        Rational jv = rat_div(x + y, two * (x - y + one));
        if (one + two * jv != Rational(0)) {
          Rational w = rat_div(two * jv, one + two * jv);
          if (w != z - one) {
            Rational s = rat_div(w + z, two * (w - z + one));
            Rational den = two + Rational(6) * x + two * y - two * z -
                           Rational(4) * x * z;
            REQUIRE(den != Rational(0));
            CHECK(s == rat_div(x + y + z + two * x * z, den));
            ++checked_j;
          }
        }
      }
  CHECK(checked_k > 100);
  CHECK(checked_j > 100);
}
