#include "partial.hpp"

#include "errors.hpp"
#include "factorization.hpp"
#include "partition.hpp"

#include <algorithm>

namespace feq {

namespace {

TabulatedFn partial_section(const PartialInstance& p, Side side, const Element& base) {
  if (side == Side::K) {
    if (!p.Z->contains(base))
      throw invalid_input("base " + base.str() + " is not an element of Z");
    return section(p.K, 1, base);
  }
  if (!p.X->contains(base))
    throw invalid_input("base " + base.str() + " is not an element of X");
  return section(p.J, 0, base);
}

} // namespace

bool partial_range_condition(const PartialInstance& p, Side side, const Element& base) {
  TabulatedFn sec = partial_section(p, side, base);
  const TabulatedFn& full = side == Side::K ? p.K : p.J;
  return sec.range().size() == full.range().size();
}

PartialReduction partial_reduce(const PartialInstance& p, const TabulatedFn& F, Side side,
                                const Element& base, bool tie_last) {
  TabulatedFn sec = partial_section(p, side, base);
  const TabulatedFn& full = side == Side::K ? p.K : p.J;
  if (sec.range().size() != full.range().size()) {
    std::string missing = range_condition_witness(full, sec);
    throw hypothesis_error(
        std::string("range condition fails at base ") + base.str() + ": " +
        (side == Side::K ? "ran(K) != ran(K_2^a)" : "ran(J) != ran(J_1^b)") +
        " inside the declared domain; value " + missing +
        " is not attained by the section; consider restricting " +
        (side == Side::K ? "D_K" : "D_J"));
  }
  MemberCheck mc = is_member(p, F);
  if (!mc.ok) throw hypothesis_error("F is not a member: " + mc.witness);

  QuasiInverse q = QuasiInverse::canonical(sec, tie_last);
  TabulatedFn map = reduction_map(p.X, p.Y, p.Z, p.J, p.K, side, q.g());
  std::vector<std::int64_t> dom = compute_domain(p);
  std::vector<std::int64_t> qual;
  for (std::int64_t t : dom)
    if (map.defined_at(t)) qual.push_back(t);

  std::vector<std::int32_t> fvals(static_cast<std::size_t>(map.codomain()->size()), -1);
  for (std::int64_t t : qual) {
    const std::size_t u = static_cast<std::size_t>(map.value_at(t));
    const std::int32_t v = F.value_at(t);
    if (fvals[u] >= 0 && fvals[u] != v)
      throw internal_error("representative evaluation is inconsistent at " + p.triple_str(t));
    fvals[u] = v;
  }
  TabulatedFn f({map.codomain()}, F.codomain(), std::move(fvals));

  std::string note;
  if (qual.size() < dom.size())
    note = std::to_string(qual.size()) + " of " + std::to_string(dom.size()) +
           " joint-domain triples qualify";
  return PartialReduction{side, base, q, map, dom, qual, f, note};
}

MergeReport merge_partial_reductions(const PartialInstance& p,
                                     const std::vector<PartialReduction>& parts) {
  if (parts.empty()) throw invalid_input("merge needs at least one part");
  for (const PartialReduction& pr : parts) {
    if (!pr.map.domain(0)->same_elements(*p.X) || !pr.map.domain(1)->same_elements(*p.Y) ||
        !pr.map.domain(2)->same_elements(*p.Z))
      throw invalid_input("a part does not live on the instance universe");
    if (!pr.f.codomain()->same_elements(*parts[0].f.codomain()))
      throw invalid_input("the parts factor into different value universes");
  }

  // key = one value of one part's factor; shared triples glue keys together
  std::vector<int> offset(parts.size() + 1, 0);
  for (std::size_t i = 0; i < parts.size(); ++i)
    offset[i + 1] = offset[i] + parts[i].f.domain(0)->size();
  PartitionBuilder pb(offset.back());
  std::vector<std::int64_t> key_at(static_cast<std::size_t>(p.universe_size()), -1);
  std::vector<char> used(static_cast<std::size_t>(offset.back()), 0);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::int64_t t : parts[i].qualifying) {
      const std::int64_t key = offset[i] + parts[i].map.value_at(t);
      used[static_cast<std::size_t>(key)] = 1;
      if (key_at[static_cast<std::size_t>(t)] < 0)
        key_at[static_cast<std::size_t>(t)] = key;
      else
        pb.merge(key_at[static_cast<std::size_t>(t)], key);
    }

  MergeReport out;
  out.domain_size = static_cast<std::int64_t>(compute_domain(p).size());

  // classes in order of their smallest key: part order, then value order
  std::vector<int> class_of_root(static_cast<std::size_t>(offset.back()), -1);
  for (std::int64_t key = 0; key < offset.back(); ++key) {
    if (!used[static_cast<std::size_t>(key)]) continue;
    const std::int64_t root = pb.find(key);
    const std::size_t part =
        static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(),
                                                  static_cast<int>(key)) -
                                 offset.begin()) -
        1;
    const int u = static_cast<int>(key) - offset[part];
    const std::int32_t v = parts[part].f.value_at(u);
    int& cls = class_of_root[static_cast<std::size_t>(root)];
    if (cls < 0) {
      cls = static_cast<int>(out.classes.size());
      out.classes.push_back(MergedClass{cls, {}, v, -1});
    } else if (out.classes[static_cast<std::size_t>(cls)].value != v &&
               out.classes[static_cast<std::size_t>(cls)].value >= 0) {
      MergedClass& c = out.classes[static_cast<std::size_t>(cls)];
      const auto& first = c.keys.front();
      out.conflicts.push_back(
          "class c" + std::to_string(cls) + ": part " + std::to_string(part) + " maps " +
          parts[part].f.domain(0)->at(u).str() + " to " + parts[part].f.element_at(u).str() +
          " while part " + std::to_string(first.first) + " maps " +
          parts[first.first].f.domain(0)->at(first.second).str() + " to " +
          parts[first.first].f.element_at(first.second).str());
      c.value = -1;
    }
    out.classes[static_cast<std::size_t>(cls)].keys.emplace_back(static_cast<int>(part), u);
  }

  for (std::int64_t t = 0; t < p.universe_size(); ++t)
    if (key_at[static_cast<std::size_t>(t)] >= 0) {
      ++out.covered;
      const int cls = class_of_root[static_cast<std::size_t>(pb.find(key_at[static_cast<std::size_t>(t)]))];
      MergedClass& c = out.classes[static_cast<std::size_t>(cls)];
      if (c.first_flat < 0) c.first_flat = t;
    }
  for (std::int64_t t : compute_domain(p))
    if (key_at[static_cast<std::size_t>(t)] < 0) out.uncovered.push_back(t);

  std::vector<Element> labels;
  labels.reserve(out.classes.size());
  for (const MergedClass& c : out.classes)
    labels.push_back(Element::symbol("c" + std::to_string(c.id)));
  SetPtr cls_set = FiniteSet::make(std::move(labels), "classes");
  std::vector<std::int32_t> km(static_cast<std::size_t>(p.universe_size()), -1);
  for (std::int64_t t = 0; t < p.universe_size(); ++t)
    if (key_at[static_cast<std::size_t>(t)] >= 0)
      km[static_cast<std::size_t>(t)] = class_of_root[static_cast<std::size_t>(
          pb.find(key_at[static_cast<std::size_t>(t)]))];
  out.key_map = TabulatedFn({p.X, p.Y, p.Z}, cls_set, std::move(km));

  if (out.conflicts.empty()) {
    std::vector<std::int32_t> fv;
    fv.reserve(out.classes.size());
    for (const MergedClass& c : out.classes) fv.push_back(c.value);
    out.f = TabulatedFn({cls_set}, parts[0].f.codomain(), std::move(fv));
    out.status = out.uncovered.empty() ? "merged" : "merged-partial";
  } else {
    out.status = "conflict";
  }
  return out;
}

} // namespace feq
