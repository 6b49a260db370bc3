#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "factorization.hpp"
#include "quasi_inverse.hpp"

#include <cstdint>
#include <queue>

using namespace feq;

namespace {

TripleInstance mod_instance(int n, int which) {
  // which: 0 = difference, 1 = sum
  SetPtr zn = FiniteSet::integers(n, "Z" + std::to_string(n));
  std::function<int(const std::vector<int>&)> fn;
  if (which)
    fn = [n](const std::vector<int>& i) { return (i[0] + i[1]) % n; };
  else
    fn = [n](const std::vector<int>& i) { return ((i[0] - i[1]) % n + n) % n; };
  TabulatedFn J = TabulatedFn::tabulate({zn, zn}, zn, fn);
  TabulatedFn K = TabulatedFn::tabulate({zn, zn}, zn, fn);
  return TripleInstance("m", zn, zn, zn, std::move(J), std::move(K));
}

// Independent oracle: raw pairwise gluing relations + BFS closure.
std::vector<int> closure_components(const TripleInstance& ins) {
  const int nx = ins.X->size(), ny = ins.Y->size(), nz = ins.Z->size();
  const int N = nx * ny * nz;
  auto flat = [&](int x, int y, int z) { return (x * ny + y) * nz + z; };
  std::vector<std::vector<int>> adj(N);
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int x2 = 0; x2 < nx; ++x2)
        for (int y2 = 0; y2 < ny; ++y2) {
          if (ins.J.value_at(x * ny + y) != ins.J.value_at(x2 * ny + y2)) continue;
          for (int z = 0; z < nz; ++z) link(flat(x, y, z), flat(x2, y2, z));
        }
  for (int y = 0; y < ny; ++y)
    for (int z = 0; z < nz; ++z)
      for (int y2 = 0; y2 < ny; ++y2)
        for (int z2 = 0; z2 < nz; ++z2) {
          if (ins.K.value_at(y * nz + z) != ins.K.value_at(y2 * nz + z2)) continue;
          for (int x = 0; x < nx; ++x) link(flat(x, y, z), flat(x, y2, z2));
        }
  std::vector<int> comp(N, -1);
  int next = 0;
  for (int s = 0; s < N; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj[a])
        if (comp[b] < 0) {
          comp[b] = next;
          q.push(b);
        }
    }
    ++next;
  }
  return comp;
}

bool same_equivalence(const SolutionClass& sc, const std::vector<int>& comp) {
  const std::int64_t N = static_cast<std::int64_t>(comp.size());
  for (std::int64_t s = 0; s < N; ++s)
    for (std::int64_t t = s + 1; t < N; ++t)
      if ((sc.partition.block_of(s) == sc.partition.block_of(t)) !=
          (comp[static_cast<std::size_t>(s)] == comp[static_cast<std::size_t>(t)]))
        return false;
  return true;
}

bool constant_on_blocks(const SolutionClass& sc, const TabulatedFn& F) {
  for (const auto& blk : sc.partition.blocks()) {
    for (std::int64_t t : blk)
      if (F.value_at(t) != F.value_at(blk.front())) return false;
  }
  return true;
}

std::uint64_t rng_state = 0x9e3779b97f4a7c15ull;
int rnd(int m) {
  rng_state = rng_state * 6364136223846793005ull + 1442695040888963407ull;
  return static_cast<int>((rng_state >> 33) % static_cast<std::uint64_t>(m));
}

TripleInstance random_instance() {
  int nx = 1 + rnd(3), ny = 1 + rnd(3), nz = 1 + rnd(3);
  int uj = 1 + rnd(4), uk = 1 + rnd(4);
  SetPtr X = FiniteSet::integers(nx, "X"), Y = FiniteSet::integers(ny, "Y"),
         Z = FiniteSet::integers(nz, "Z");
  SetPtr UJ = FiniteSet::integers(uj, "UJ"), UK = FiniteSet::integers(uk, "UK");
  TabulatedFn J = TabulatedFn::tabulate({X, Y}, UJ,
                                        [&](const std::vector<int>&) { return rnd(uj); });
  TabulatedFn K = TabulatedFn::tabulate({Y, Z}, UK,
                                        [&](const std::vector<int>&) { return rnd(uk); });
  return TripleInstance("rnd", X, Y, Z, std::move(J), std::move(K));
}

} // namespace

TEST_CASE("difference instance on Z2: two blocks, level sets of x-y+z") {
  TripleInstance ins = mod_instance(2, 0);
  SolutionClass sc = solution_partition(ins);
  CHECK(sc.block_count == 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        CHECK(sc.generator.value_at(ins.triple_flat(x, y, z)) ==
              sc.generator.value_at(ins.triple_flat(((x - y + z) % 2 + 2) % 2, 0, 0)));
  CHECK(same_equivalence(sc, closure_components(ins)));
}

TEST_CASE("constant J and K glue everything; injective J and K glue nothing") {
  SetPtr z2 = FiniteSet::integers(2, "Z2");
  SetPtr z1 = FiniteSet::integers(1, "Z1");
  TripleInstance allglue("c", z2, z2, z2, constant_fn({z2, z2}, z1, 0),
                         constant_fn({z2, z2}, z1, 0));
  CHECK(solution_partition(allglue).block_count == 1);

  SetPtr z4 = FiniteSet::integers(4, "Z4");
  TabulatedFn pairJ = TabulatedFn::tabulate(
      {z2, z2}, z4, [](const std::vector<int>& i) { return 2 * i[0] + i[1]; });
  TripleInstance singl("s", z2, z2, z2, pairJ, pairJ);
  SolutionClass sc = solution_partition(singl);
  CHECK(sc.block_count == 8);
  // every F admitted
  TabulatedFn any = TabulatedFn::tabulate(
      {z2, z2, z2}, z4, [](const std::vector<int>& i) { return (3 * i[0] + i[1] + 2 * i[2]) % 4; });
  CHECK(is_member(singl, any).ok);
}

TEST_CASE("membership on the Z2 difference instance") {
  TripleInstance ins = mod_instance(2, 0);
  SetPtr z2 = ins.X;
  TabulatedFn good = TabulatedFn::tabulate(
      {z2, z2, z2}, z2, [](const std::vector<int>& i) { return (i[0] + i[1] + i[2]) % 2; });
  CHECK(is_member(ins, good).ok);
  TabulatedFn cst = constant_fn({z2, z2, z2}, z2, 1);
  CHECK(is_member(ins, cst).ok);
  TabulatedFn bad = TabulatedFn::tabulate(
      {z2, z2, z2}, z2, [](const std::vector<int>& i) { return i[0]; });
  MemberCheck mc = is_member(ins, bad);
  CHECK_FALSE(mc.ok);
  CHECK(mc.witness.find("J") != std::string::npos);
  CHECK(mc.witness.find("!=") != std::string::npos);
}

TEST_CASE("generator is itself a member and has the partition as kernel") {
  for (int n = 2; n <= 4; ++n) {
    TripleInstance ins = mod_instance(n, 0);
    SolutionClass sc = solution_partition(ins);
    CHECK(sc.block_count == n);
    CHECK(is_member(ins, sc.generator).ok);
    CHECK(kernel_partition(sc.generator) == sc.partition);
  }
}

TEST_CASE("oracle equivalence on randomized instances") {
  for (int trial = 0; trial < 25; ++trial) {
    TripleInstance ins = random_instance();
    SolutionClass sc = solution_partition(ins);
    CHECK(same_equivalence(sc, closure_components(ins)));
    int c = 1 + rnd(3);
    SetPtr cod = FiniteSet::integers(c, "C");
    for (int k = 0; k < 20; ++k) {
      TabulatedFn F = TabulatedFn::tabulate(ins.xyz(), cod,
                                            [&](const std::vector<int>&) { return rnd(c); });
      CHECK(is_member(ins, F).ok == constant_on_blocks(sc, F));
    }
  }
}

TEST_CASE("post-composition keeps membership") {
  TripleInstance ins = mod_instance(3, 0);
  SolutionClass sc = solution_partition(ins);
  SetPtr blocks = sc.generator.codomain();
  SetPtr z2 = FiniteSet::integers(2, "C");
  const int b = blocks->size();
  std::int64_t total = 1;
  for (int i = 0; i < b; ++i) total *= 2;
  for (std::int64_t code = 0; code < total; ++code) {
    std::vector<std::int32_t> vals(static_cast<std::size_t>(b));
    std::int64_t c = code;
    for (int i = 0; i < b; ++i) {
      vals[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(c % 2);
      c /= 2;
    }
    TabulatedFn f({blocks}, z2, vals);
    CHECK(is_member(ins, compose(f, sc.generator)).ok);
  }
}

TEST_CASE("outer functions recovered from a member") {
  TripleInstance ins = mod_instance(2, 0);
  SetPtr z2 = ins.X;
  TabulatedFn F = TabulatedFn::tabulate(
      {z2, z2, z2}, z2, [](const std::vector<int>& i) { return (i[0] + i[1] + i[2]) % 2; });
  OuterPair gh = recover_outer(ins, F);
  // φ(0) = (0,0), φ(1) = (0,1): G(u,z) = F(φ(u),z)
  CHECK(gh.G.element_at(0) == Element::integer(0)); // G(0,0)
  CHECK(gh.G.element_at(1) == Element::integer(1)); // G(0,1)
  CHECK(gh.G.element_at(2) == Element::integer(1)); // G(1,0)
  CHECK(gh.G.element_at(3) == Element::integer(0)); // G(1,1)
  // ψ(0) = (0,0), ψ(1) = (1,0): H(x,v) = F(x,ψ(v))
  CHECK(gh.H.element_at(0) == Element::integer(0)); // H(0,0)
  CHECK(gh.H.element_at(1) == Element::integer(1)); // H(0,1)
  CHECK(gh.H.element_at(2) == Element::integer(1)); // H(1,0)
  CHECK(gh.H.element_at(3) == Element::integer(0)); // H(1,1)

  TabulatedFn cst = constant_fn({z2, z2, z2}, z2, 1);
  OuterPair gh2 = recover_outer(ins, cst);
  CHECK(gh2.G.range() == std::vector<int>{1});
  CHECK(gh2.H.range() == std::vector<int>{1});

  // the generator itself round-trips
  SolutionClass sc = solution_partition(ins);
  CHECK_NOTHROW(recover_outer(ins, sc.generator));

  TabulatedFn bad = TabulatedFn::tabulate(
      {z2, z2, z2}, z2, [](const std::vector<int>& i) { return i[0]; });
  CHECK_THROWS_AS(recover_outer(ins, bad), hypothesis_error);
}

TEST_CASE("class size is c^blocks and matches exhaustive filtering") {
  SetPtr z2 = FiniteSet::integers(2, "Z2");
  SetPtr z1 = FiniteSet::integers(1, "Z1");
  TripleInstance allglue("c", z2, z2, z2, constant_fn({z2, z2}, z1, 0),
                         constant_fn({z2, z2}, z1, 0));
  CHECK(count_class(solution_partition(allglue), 3) == "3");

  TripleInstance ins = mod_instance(2, 0);
  SolutionClass sc = solution_partition(ins);
  CHECK(count_class(sc, 2) == "4");
  int members = 0;
  for (int code = 0; code < 256; ++code) {
    std::vector<std::int32_t> vals(8);
    for (int i = 0; i < 8; ++i) vals[static_cast<std::size_t>(i)] = (code >> i) & 1;
    TabulatedFn F({z2, z2, z2}, z2, vals);
    if (is_member(ins, F).ok) ++members;
  }
  CHECK(members == 4);

  SetPtr z4 = FiniteSet::integers(4, "Z4");
  TabulatedFn pairJ = TabulatedFn::tabulate(
      {z2, z2}, z4, [](const std::vector<int>& i) { return 2 * i[0] + i[1]; });
  TripleInstance singl("s", z2, z2, z2, pairJ, pairJ);
  CHECK(count_class(solution_partition(singl), 2) == "256");
}

TEST_CASE("partial instance: domain computation and restricted gluing") {
  // grid {0, 1/2, 1}, K restricted to y+z <= 1, J full mean
  std::vector<Element> g = {Element::integer(0), Element::rational(Rational(1, 2)),
                            Element::integer(1)};
  SetPtr A = FiniteSet::make(g, "A");
  std::vector<Element> vals5 = {Element::integer(0), Element::rational(Rational(1, 4)),
                                Element::rational(Rational(1, 2)),
                                Element::rational(Rational(3, 4)), Element::integer(1)};
  SetPtr U = FiniteSet::make(vals5, "U");
  TabulatedFn J = TabulatedFn::tabulate(
      {A, A}, U, [](const std::vector<int>& i) { return i[0] + i[1]; });
  TabulatedFn K = TabulatedFn::tabulate_partial(
      {A, A}, U, [](const std::vector<int>& i) { return i[0] + i[1] <= 2 ? i[0] + i[1] : -1; });
  PartialInstance p("mean-low", A, A, A, J, K);
  std::vector<std::int64_t> dom = compute_domain(p);
  CHECK(dom.size() == 18); // 3 x-values times 6 admissible (y,z) pairs
  SolutionClass sc = solution_partition(p);
  CHECK(is_member(p, sc.generator).ok);
  // generator undefined off-domain: (0,1,1) has y+z = 2 > 1
  CHECK_FALSE(sc.generator.defined_at((0 * 3 + 2) * 3 + 2));
  CHECK(sc.generator.defined_count() == 18);
}

TEST_CASE("empty joint domain is rejected") {
  SetPtr z2 = FiniteSet::integers(2, "Z2");
  SetPtr z1 = FiniteSet::integers(1, "Z1");
  // J defined only on column y=0, K only on row y=1: no shared y
  TabulatedFn J = TabulatedFn::tabulate_partial(
      {z2, z2}, z1, [](const std::vector<int>& i) { return i[1] == 0 ? 0 : -1; });
  TabulatedFn K = TabulatedFn::tabulate_partial(
      {z2, z2}, z1, [](const std::vector<int>& i) { return i[0] == 1 ? 0 : -1; });
  PartialInstance p("gap", z2, z2, z2, J, K);
  CHECK_THROWS_AS(compute_domain(p), invalid_input);
  CHECK_THROWS_AS(solution_partition(p), invalid_input);
}
