#include "reductions.hpp"

#include "bigcount.hpp"
#include "errors.hpp"
#include "partition.hpp"

#include <algorithm>

namespace feq {

TabulatedFn section_at(const TabulatedFn& f, int position, const Element& a) {
  return section(f, position, a);
}

std::string range_condition_witness(const TabulatedFn& full, const TabulatedFn& sec) {
  for (int i : full.range()) {
    const Element& v = full.codomain()->at(i);
    bool found = false;
    for (int j : sec.range())
      if (sec.codomain()->at(j) == v) {
        found = true;
        break;
      }
    if (!found) return v.str();
  }
  return "";
}

bool range_condition(const TripleInstance& ins, Side side, const Element& base) {
  if (side == Side::K)
    return TabulatedFn::same_range(ins.K, section(ins.K, 1, base));
  return TabulatedFn::same_range(ins.J, section(ins.J, 0, base));
}

TabulatedFn reduction_map(const SetPtr& X, const SetPtr& Y, const SetPtr& Z,
                          const TabulatedFn& J, const TabulatedFn& K, Side side,
                          const TabulatedFn& qg) {
  const int ny = Y->size(), nz = Z->size();
  if (side == Side::K) {
    return TabulatedFn::tabulate_partial(
        {X, Y, Z}, J.codomain(), [&](const std::vector<int>& i) {
          const std::int64_t yz = static_cast<std::int64_t>(i[1]) * nz + i[2];
          if (!K.defined_at(yz)) return -1;
          auto pos = qg.domain(0)->index_of(K.element_at(yz));
          if (!pos) throw internal_error("section range does not cover a K value");
          const int y2 = qg.value_at(*pos);
          const std::int64_t xy2 = static_cast<std::int64_t>(i[0]) * ny + y2;
          return J.defined_at(xy2) ? static_cast<int>(J.value_at(xy2)) : -1;
        });
  }
  return TabulatedFn::tabulate_partial(
      {X, Y, Z}, K.codomain(), [&](const std::vector<int>& i) {
        const std::int64_t xy = static_cast<std::int64_t>(i[0]) * ny + i[1];
        if (!J.defined_at(xy)) return -1;
        auto pos = qg.domain(0)->index_of(J.element_at(xy));
        if (!pos) throw internal_error("section range does not cover a J value");
        const int x2 = qg.value_at(*pos);
        const std::int64_t x2z = static_cast<std::int64_t>(x2) * nz + i[2];
        return K.defined_at(x2z) ? static_cast<int>(K.value_at(x2z)) : -1;
      });
}

namespace {

TabulatedFn take_section(const TripleInstance& ins, Side side, const Element& base) {
  if (side == Side::K) {
    if (!ins.Z->contains(base))
      throw invalid_input("base " + base.str() + " is not an element of Z");
    return section(ins.K, 1, base);
  }
  if (!ins.X->contains(base))
    throw invalid_input("base " + base.str() + " is not an element of X");
  return section(ins.J, 0, base);
}

} // namespace

Reduction build_reduction(const TripleInstance& ins, Side side, const Element& base,
                          bool tie_last) {
  TabulatedFn sec = take_section(ins, side, base);
  const TabulatedFn& full = side == Side::K ? ins.K : ins.J;
  if (!TabulatedFn::same_range(full, sec)) {
    const char* names = side == Side::K ? "ran(K) != ran(K_2^a)" : "ran(J) != ran(J_1^b)";
    throw hypothesis_error(std::string("range condition fails at base ") + base.str() + ": " +
                           names + "; value " + range_condition_witness(full, sec) +
                           " is not attained by the section");
  }
  QuasiInverse q = QuasiInverse::canonical(sec, tie_last);
  TabulatedFn map = reduction_map(ins.X, ins.Y, ins.Z, ins.J, ins.K, side, q.g());
  return Reduction{side, base, std::move(q), std::move(map)};
}

ReducedMember reduce_member(const TripleInstance& ins, const TabulatedFn& F, Side side,
                            const Element& base, bool tie_last, std::int64_t enumerate_limit) {
  MemberCheck mc = is_member(ins, F);
  if (!mc.ok) throw hypothesis_error("F is not a member: " + mc.witness);
  Reduction red = build_reduction(ins, side, base, tie_last);

  const SetPtr& U = red.map.codomain();
  std::vector<std::int32_t> fvals(static_cast<std::size_t>(U->size()), -1);
  for (std::int64_t t = 0; t < red.map.domain_size(); ++t) {
    const std::int32_t u = red.map.value_at(t);
    std::int32_t& slot = fvals[static_cast<std::size_t>(u)];
    if (slot < 0)
      slot = F.value_at(t);
    else if (slot != F.value_at(t))
      throw internal_error("representative evaluation is inconsistent at " +
                           ins.triple_str(t));
  }
  TabulatedFn f({U}, F.codomain(), std::move(fvals));
  if (!TabulatedFn::eq_pointwise(compose(f, red.map), F))
    throw internal_error("reduced map does not reproduce F");

  // the factor f is independent of the chosen quasi-inverse
  ReducedMember out{std::move(red), std::move(f), 0, true, ""};
  const TabulatedFn sec = take_section(ins, side, base);
  BigCount count(1);
  for (const auto& fib : fibers(sec)) count.mul(fib.size());
  if (!count.fits_u64(static_cast<std::uint64_t>(enumerate_limit))) {
    out.all_k_verified = false;
    out.note = "section has " + count.str() + " quasi-inverses, above the limit of " +
               std::to_string(enumerate_limit) + "; verified the constructed one only";
    out.k_checked = 1;
    return out;
  }
  for (const QuasiInverse& q : QuasiInverse::enumerate(sec, enumerate_limit)) {
    TabulatedFn map2 = reduction_map(ins.X, ins.Y, ins.Z, ins.J, ins.K, side, q.g());
    if (!TabulatedFn::eq_pointwise(compose(out.f, map2), F))
      throw internal_error("factor is not independent of the quasi-inverse at base " +
                           base.str());
    ++out.k_checked;
  }
  return out;
}

CharacterizationReport characterize(const TripleInstance& ins, bool tie_last) {
  SolutionClass sc = solution_partition(ins);
  CharacterizationReport rep;
  rep.block_count = sc.block_count;

  std::vector<std::optional<Reduction>> built;
  auto try_base = [&](Side side, const Element& base) {
    BaseTrial trial;
    trial.side = side;
    trial.base = base;
    TabulatedFn sec = take_section(ins, side, base);
    const TabulatedFn& full = side == Side::K ? ins.K : ins.J;
    trial.range_ok = TabulatedFn::same_range(full, sec);
    if (!trial.range_ok) {
      trial.range_witness = range_condition_witness(full, sec);
      built.emplace_back();
    } else {
      Reduction red = build_reduction(ins, side, base, tie_last);
      MemberCheck mc = is_member(ins, red.map);
      trial.member = mc.ok;
      trial.member_witness = mc.witness;
      trial.kernel_matches = kernel_partition(red.map) == sc.partition;
      if (trial.member != trial.kernel_matches)
        throw internal_error("membership and kernel agreement disagree at base " + base.str());
      built.emplace_back(std::move(red));
    }
    rep.trials.push_back(std::move(trial));
  };

  for (int a = 0; a < ins.Z->size(); ++a) try_base(Side::K, ins.Z->at(a));
  for (int b = 0; b < ins.X->size(); ++b) try_base(Side::J, ins.X->at(b));

  // two-sided pointwise agreement forces membership
  for (std::size_t i = 0; i < built.size(); ++i) {
    if (!built[i] || built[i]->side != Side::K) continue;
    for (std::size_t j = 0; j < built.size(); ++j) {
      if (!built[j] || built[j]->side != Side::J) continue;
      if (TabulatedFn::eq_pointwise(built[i]->map, built[j]->map)) {
        rep.prop11 = true;
        if (!rep.trials[i].member || !rep.trials[j].member)
          throw internal_error("two-sided agreement without membership");
      }
    }
  }

  bool any_range = false;
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    if (!rep.trials[i].range_ok) continue;
    any_range = true;
    if (!rep.trials[i].member) continue;
    if (!rep.reduction) {
      rep.reduction = built[i];
      rep.generator_agreement = rep.trials[i].kernel_matches;
    } else {
      rep.also_characterizing.emplace_back(rep.trials[i].side, rep.trials[i].base);
    }
  }

  if (rep.reduction)
    rep.status = "characterized";
  else if (rep.block_count == 1)
    rep.status = "characterized-as-constants";
  else if (any_range)
    rep.status = "necessary-only";
  else
    rep.status = "no-range-condition";
  return rep;
}

} // namespace feq
