#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "quasi_inverse.hpp"

using namespace feq;

namespace {

SetPtr abc_dom() {
  return FiniteSet::make({Element::integer(1), Element::integer(2), Element::integer(3)}, "D");
}
SetPtr ab_cod() {
  return FiniteSet::make({Element::symbol("a"), Element::symbol("b")}, "C");
}

// f(1)=a, f(2)=a, f(3)=b
TabulatedFn two_fiber_fn() {
  return TabulatedFn(
      {abc_dom()}, ab_cod(),
      {0, 0, 1});
}

} // namespace

TEST_CASE("canonical picks smallest preimages") {
  TabulatedFn f = two_fiber_fn();
  QuasiInverse q = QuasiInverse::canonical(f);
  CHECK(q.range_set()->size() == 2);
  TabulatedFn g = q.g();
  CHECK(g.element_at(0) == Element::integer(1)); // g(a)=1
  CHECK(g.element_at(1) == Element::integer(3)); // g(b)=3
  CHECK(q.describe() == "a -> 1, b -> 3");

  QuasiInverse ql = QuasiInverse::canonical(f, true);
  CHECK(ql.g().element_at(0) == Element::integer(2)); // largest preimage of a
  CHECK(ql.g().element_at(1) == Element::integer(3));
}

TEST_CASE("identity is its own quasi-inverse") {
  SetPtr z4 = FiniteSet::integers(4, "Z4");
  TabulatedFn id = identity_fn(z4);
  QuasiInverse q = QuasiInverse::canonical(id);
  CHECK(TabulatedFn::eq_pointwise(q.g(), id));
  CHECK(is_quasi_inverse(id, id).ok);
}

TEST_CASE("enumeration matches fiber-size product") {
  TabulatedFn f = two_fiber_fn();
  auto all = QuasiInverse::enumerate(f, 100);
  CHECK(all.size() == 2);
  CHECK(QuasiInverse::count_str(f) == "2");
  // lexicographic: smallest representative tuple first
  CHECK(all[0].g().element_at(0) == Element::integer(1));
  CHECK(all[1].g().element_at(0) == Element::integer(2));

  SetPtr z4 = FiniteSet::integers(4, "Z4");
  SetPtr z1 = FiniteSet::integers(1, "Z1");
  TabulatedFn cst = constant_fn({z4}, z1, 0);
  CHECK(QuasiInverse::enumerate(cst, 10).size() == 4);
  CHECK(QuasiInverse::enumerate(identity_fn(z4), 10).size() == 1);
  CHECK_THROWS_AS(QuasiInverse::enumerate(cst, 3), invalid_input);
  try {
    QuasiInverse::enumerate(cst, 3);
  } catch (const invalid_input& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
}

TEST_CASE("verification rejects a bad candidate with a witness") {
  TabulatedFn f = two_fiber_fn();
  // g(a)=3, g(b)=3: f(g(a)) = b != a
  TabulatedFn bad({ab_cod()}, abc_dom(), {2, 2});
  QinvCheck c = is_quasi_inverse(f, bad);
  CHECK_FALSE(c.ok);
  CHECK(c.witness.find("a") != std::string::npos);
  CHECK(is_quasi_inverse(f, QuasiInverse::canonical(f).g()).ok);
}

TEST_CASE("second defining condition can fail alone") {
  // f constant a on {1,2}; g on {a,b}: g(a)=1, g(b)=2.
  SetPtr d = FiniteSet::make({Element::integer(1), Element::integer(2)}, "D");
  TabulatedFn f = constant_fn({d}, ab_cod(), 0);
  TabulatedFn g({ab_cod()}, d, {0, 1});
  QinvCheck c = is_quasi_inverse(f, g);
  CHECK_FALSE(c.ok); // 2 = g(b) is never taken on ran(f) = {a}
  CHECK(c.witness.find("2") != std::string::npos);
}

TEST_CASE("from_choice validates fibers") {
  TabulatedFn f = two_fiber_fn();
  QuasiInverse q = QuasiInverse::from_choice(f, {1, 2});
  CHECK(q.g().element_at(0) == Element::integer(2));
  CHECK_THROWS_AS(QuasiInverse::from_choice(f, {2, 2}), invalid_input);
  CHECK_THROWS_AS(QuasiInverse::from_choice(f, {0}), invalid_input);
}

TEST_CASE("quasi-inverse of a binary function picks pair preimages") {
  SetPtr z2 = FiniteSet::integers(2, "Z2");
  TabulatedFn add = TabulatedFn::tabulate(
      {z2, z2}, z2, [](const std::vector<int>& i) { return (i[0] + i[1]) % 2; });
  QuasiInverse q = QuasiInverse::canonical(add);
  CHECK(q.choice_at(0) == 0); // (0,0) -> 0
  CHECK(q.choice_at(1) == 1); // (0,1) -> 1
  CHECK(q.describe() == "0 -> (0,0), 1 -> (0,1)");
  CHECK(q.preimage_of_value(1) == 1);
  CHECK_THROWS_AS(q.g(), internal_error);
}

TEST_CASE("laws hold exhaustively on small universes") {
  for (int dsz = 1; dsz <= 3; ++dsz) {
    SetPtr dom = FiniteSet::integers(dsz, "D");
    for (int csz = 1; csz <= 2; ++csz) {
      SetPtr cod = FiniteSet::integers(csz, "C");
      std::int64_t total = 1;
      for (int i = 0; i < dsz; ++i) total *= csz;
      for (std::int64_t code = 0; code < total; ++code) {
        std::vector<std::int32_t> vals(static_cast<std::size_t>(dsz));
        std::int64_t c = code;
        for (int i = 0; i < dsz; ++i) {
          vals[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(c % csz);
          c /= csz;
        }
        TabulatedFn f({dom}, cod, vals);
        auto all = QuasiInverse::enumerate(f, 1 << 20);
        std::int64_t expect = 1;
        for (const auto& fb : fibers(f)) expect *= static_cast<std::int64_t>(fb.size());
        REQUIRE(static_cast<std::int64_t>(all.size()) == expect);
        for (const QuasiInverse& q : all) {
          TabulatedFn g = q.g();
          REQUIRE(is_quasi_inverse(f, g).ok);
          REQUIRE(is_quasi_inverse(g, f).ok); // symmetry
          // sandwich laws
          REQUIRE(TabulatedFn::eq_pointwise(compose(f, compose(g, f)), f));
          REQUIRE(TabulatedFn::eq_pointwise(compose(g, compose(f, g)), g));
          // f∘g∘h = h whenever ran(h) ⊆ ran(f), h on a 2-point domain
          SetPtr hdom = FiniteSet::integers(2, "T");
          const std::vector<int>& rng = f.range();
          for (std::size_t u = 0; u < rng.size(); ++u)
            for (std::size_t v = 0; v < rng.size(); ++v) {
              TabulatedFn h({hdom}, cod,
                            {static_cast<std::int32_t>(rng[u]),
                             static_cast<std::int32_t>(rng[v])});
              REQUIRE(TabulatedFn::eq_pointwise(compose(f, compose(g, h)), h));
            }
        }
      }
    }
  }
}
