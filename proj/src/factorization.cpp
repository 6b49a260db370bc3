#include "factorization.hpp"

#include "bigcount.hpp"
#include "errors.hpp"
#include "quasi_inverse.hpp"

namespace feq {

namespace {

// Shared core for total and partial instances: gluing happens only where both
// J and K are defined; every other triple stays a singleton off-domain point.
SolutionClass solve_core(const SetPtr& X, const SetPtr& Y, const SetPtr& Z,
                         const TabulatedFn& J, const TabulatedFn& K) {
  const int nx = X->size(), ny = Y->size(), nz = Z->size();
  const std::int64_t N = static_cast<std::int64_t>(nx) * ny * nz;
  PartitionBuilder b(N);

  // J(x,y) = J(x',y') glues (x,y,z) ~ (x',y',z): bucket on (J-value, z)
  std::vector<std::int64_t> first_jz(static_cast<std::size_t>(J.codomain()->size()) * nz, -1);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const std::int64_t xy = static_cast<std::int64_t>(x) * ny + y;
      if (!J.defined_at(xy)) continue;
      const std::int32_t jv = J.value_at(xy);
      for (int z = 0; z < nz; ++z) {
        const std::int64_t yz = static_cast<std::int64_t>(y) * nz + z;
        if (!K.defined_at(yz)) continue;
        const std::int64_t t = xy * nz + z;
        std::int64_t& f = first_jz[static_cast<std::size_t>(jv) * nz + z];
        if (f < 0) f = t; else b.merge(f, t);
      }
    }

  // K(y,z) = K(y',z') glues (x,y,z) ~ (x,y',z'): bucket on (x, K-value)
  std::vector<std::int64_t> first_xk(static_cast<std::size_t>(nx) * K.codomain()->size(), -1);
  for (int y = 0; y < ny; ++y)
    for (int z = 0; z < nz; ++z) {
      const std::int64_t yz = static_cast<std::int64_t>(y) * nz + z;
      if (!K.defined_at(yz)) continue;
      const std::int32_t kv = K.value_at(yz);
      for (int x = 0; x < nx; ++x) {
        const std::int64_t xy = static_cast<std::int64_t>(x) * ny + y;
        if (!J.defined_at(xy)) continue;
        const std::int64_t t = xy * nz + z;
        std::int64_t& f = first_xk[static_cast<std::size_t>(x) * K.codomain()->size() + kv];
        if (f < 0) f = t; else b.merge(f, t);
      }
    }

  Partition p(b);

  std::vector<std::int64_t> domain;
  std::vector<std::int32_t> bvals(static_cast<std::size_t>(N), -1);
  std::vector<std::int32_t> renum(static_cast<std::size_t>(p.block_count()), -1);
  std::int32_t next = 0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const std::int64_t xy = static_cast<std::int64_t>(x) * ny + y;
      if (!J.defined_at(xy)) continue;
      for (int z = 0; z < nz; ++z) {
        if (!K.defined_at(static_cast<std::int64_t>(y) * nz + z)) continue;
        const std::int64_t t = xy * nz + z;
        domain.push_back(t);
        std::int32_t& r = renum[static_cast<std::size_t>(p.block_of(t))];
        if (r < 0) r = next++;
        bvals[static_cast<std::size_t>(t)] = r;
      }
    }
  if (domain.empty()) throw invalid_input("empty joint domain");

  SetPtr blocks = FiniteSet::integers(next, "blocks");
  TabulatedFn B({X, Y, Z}, blocks, std::move(bvals));
  return SolutionClass{std::move(p), std::move(B), std::move(domain), next};
}

MemberCheck member_core(const SetPtr& X, const SetPtr& Y, const SetPtr& Z, const TabulatedFn& J,
                        const TabulatedFn& K, const TabulatedFn& F) {
  if (F.arity() != 3 || !F.domain(0)->same_elements(*X) || !F.domain(1)->same_elements(*Y) ||
      !F.domain(2)->same_elements(*Z))
    throw invalid_input("F is not defined on X x Y x Z");
  const int nx = X->size(), ny = Y->size(), nz = Z->size();

  auto fval = [&](std::int64_t t) {
    if (!F.defined_at(t))
      throw invalid_input("F is undefined at " + triple_label(X, Y, Z, t) +
                          " inside the joint domain");
    return F.value_at(t);
  };
  auto pair_str = [](const SetPtr& a, const SetPtr& b, std::int64_t af, std::int64_t bf) {
    return "(" + a->at(static_cast<int>(af)).str() + "," + b->at(static_cast<int>(bf)).str() +
           ")";
  };

  // J(x,y) = J(x',y')  ⇒  F(x,y,z) = F(x',y',z)
  std::vector<std::int64_t> first_jz(static_cast<std::size_t>(J.codomain()->size()) * nz, -1);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const std::int64_t xy = static_cast<std::int64_t>(x) * ny + y;
      if (!J.defined_at(xy)) continue;
      const std::int32_t jv = J.value_at(xy);
      for (int z = 0; z < nz; ++z) {
        if (!K.defined_at(static_cast<std::int64_t>(y) * nz + z)) continue;
        const std::int64_t t = xy * nz + z;
        std::int64_t& f = first_jz[static_cast<std::size_t>(jv) * nz + z];
        if (f < 0) {
          f = t;
        } else if (fval(f) != fval(t)) {
          const std::int64_t xy0 = f / nz;
          return {false, "J" + pair_str(X, Y, xy0 / ny, xy0 % ny) + " = J" +
                             pair_str(X, Y, x, y) + " = " + J.element_at(xy).str() + " but F" +
                             triple_label(X, Y, Z, f) + " = " + F.element_at(f).str() +
                             " != " + F.element_at(t).str() + " = F" +
                             triple_label(X, Y, Z, t)};
        }
      }
    }

  // K(y,z) = K(y',z')  ⇒  F(x,y,z) = F(x,y',z')
  std::vector<std::int64_t> first_xk(static_cast<std::size_t>(nx) * K.codomain()->size(), -1);
  for (int y = 0; y < ny; ++y)
    for (int z = 0; z < nz; ++z) {
      const std::int64_t yz = static_cast<std::int64_t>(y) * nz + z;
      if (!K.defined_at(yz)) continue;
      const std::int32_t kv = K.value_at(yz);
      for (int x = 0; x < nx; ++x) {
        const std::int64_t xy = static_cast<std::int64_t>(x) * ny + y;
        if (!J.defined_at(xy)) continue;
        const std::int64_t t = xy * nz + z;
        std::int64_t& f = first_xk[static_cast<std::size_t>(x) * K.codomain()->size() + kv];
        if (f < 0) {
          f = t;
        } else if (fval(f) != fval(t)) {
          return {false, "K" + pair_str(Y, Z, (f / nz) % ny, f % nz) + " = K" +
                             pair_str(Y, Z, y, z) + " = " + K.element_at(yz).str() +
                             " but F" + triple_label(X, Y, Z, f) + " = " +
                             F.element_at(f).str() + " != " + F.element_at(t).str() + " = F" +
                             triple_label(X, Y, Z, t)};
        }
      }
    }
  return {true, ""};
}

} // namespace

SolutionClass solution_partition(const TripleInstance& ins) {
  return solve_core(ins.X, ins.Y, ins.Z, ins.J, ins.K);
}

SolutionClass solution_partition(const PartialInstance& ins) {
  return solve_core(ins.X, ins.Y, ins.Z, ins.J, ins.K);
}

MemberCheck is_member(const TripleInstance& ins, const TabulatedFn& F) {
  if (!F.is_total()) throw invalid_input("F must be total on X x Y x Z");
  return member_core(ins.X, ins.Y, ins.Z, ins.J, ins.K, F);
}

MemberCheck is_member(const PartialInstance& ins, const TabulatedFn& F) {
  return member_core(ins.X, ins.Y, ins.Z, ins.J, ins.K, F);
}

OuterPair recover_outer(const TripleInstance& ins, const TabulatedFn& F) {
  MemberCheck mc = is_member(ins, F);
  if (!mc.ok) throw hypothesis_error("F is not a member: " + mc.witness);
  const int ny = ins.Y->size(), nz = ins.Z->size();

  QuasiInverse phi = QuasiInverse::canonical(ins.J);
  TabulatedFn G = TabulatedFn::tabulate(
      {phi.range_set(), ins.Z}, F.codomain(), [&](const std::vector<int>& i) {
        const std::int64_t xy = phi.choice_at(i[0]);
        return static_cast<int>(F.value_at(xy * nz + i[1]));
      });

  QuasiInverse psi = QuasiInverse::canonical(ins.K);
  TabulatedFn H = TabulatedFn::tabulate(
      {ins.X, psi.range_set()}, F.codomain(), [&](const std::vector<int>& i) {
        const std::int64_t yz = psi.choice_at(i[1]);
        return static_cast<int>(F.value_at(static_cast<std::int64_t>(i[0]) * ny * nz + yz));
      });

  // G(J(x,y),z) = F(x,y,z) = H(x,K(y,z)) everywhere
  for (std::int64_t t = 0; t < F.domain_size(); ++t) {
    const std::int64_t xy = t / nz;
    const int z = static_cast<int>(t % nz);
    const int x = static_cast<int>(xy / ny);
    const Element& ju = ins.J.element_at(xy);
    const int u = *phi.range_set()->index_of(ju);
    if (G.value_at(static_cast<std::int64_t>(u) * nz + z) != F.value_at(t))
      throw internal_error("recovered G disagrees with F at " + ins.triple_str(t));
    const Element& kv = ins.K.element_at(t % (static_cast<std::int64_t>(ny) * nz));
    const int v = *psi.range_set()->index_of(kv);
    if (H.value_at(static_cast<std::int64_t>(x) * psi.range_set()->size() + v) != F.value_at(t))
      throw internal_error("recovered H disagrees with F at " + ins.triple_str(t));
  }
  return {std::move(G), std::move(H)};
}

std::string count_class(const SolutionClass& sc, std::int64_t c) {
  if (c < 1) throw invalid_input("codomain size must be at least 1");
  BigCount n(1);
  for (std::int64_t i = 0; i < sc.block_count; ++i) n.mul(static_cast<std::uint64_t>(c));
  return n.str();
}

} // namespace feq
