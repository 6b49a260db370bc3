#include "diagonal.hpp"

#include "errors.hpp"
#include "factorization.hpp"
#include "partition.hpp"

#include <algorithm>

namespace feq {

namespace {

bool is_identity_diagonal(const TabulatedFn& delta, const SetPtr& A) {
  if (!delta.is_total()) return false;
  for (int i = 0; i < A->size(); ++i)
    if (delta.element_at(i) != A->at(i)) return false;
  return true;
}

// ranges live in one codomain, and the diagonal's range is always contained
// in the full range; reports the first value attained off the diagonal only
std::string range_gap(const TabulatedFn& full, const TabulatedFn& diag) {
  const std::vector<int>& fr = full.range();
  const std::vector<int>& dr = diag.range();
  if (fr.size() == dr.size()) return "";
  for (int v : fr)
    if (std::find(dr.begin(), dr.end(), v) == dr.end()) return full.codomain()->at(v).str();
  return "";
}

} // namespace

TabulatedFn diagonal_of(const TabulatedFn& F) {
  if (F.arity() < 1) throw invalid_input("diagonal needs at least one argument");
  const SetPtr& A = F.domain(0);
  for (int i = 1; i < F.arity(); ++i)
    if (!F.domain(i)->same_elements(*A))
      throw invalid_input("diagonal needs every argument in the same universe");
  std::vector<std::int32_t> vals(static_cast<std::size_t>(A->size()), -1);
  std::vector<int> point(static_cast<std::size_t>(F.arity()));
  for (int i = 0; i < A->size(); ++i) {
    std::fill(point.begin(), point.end(), i);
    vals[static_cast<std::size_t>(i)] = F.value_at(F.encode(point));
  }
  return TabulatedFn({A}, F.codomain(), std::move(vals));
}

TabulatedFn power_form(const PowerInstance& p, const TabulatedFn& f3) {
  if (f3.arity() != 3) throw invalid_input("power form expects a three-argument table");
  std::int64_t mid = 1;
  for (int i = 0; i < p.n - 2; ++i) mid *= p.A->size();
  if (!f3.domain(0)->same_elements(*p.A) || !f3.domain(2)->same_elements(*p.A) ||
      f3.domain(1)->size() != mid)
    throw invalid_input("table does not live on the instance's power domain");
  std::vector<SetPtr> domains(static_cast<std::size_t>(p.n), p.A);
  return TabulatedFn(std::move(domains), f3.codomain(), f3.values());
}

DiagonalReport diagonal_section(const TabulatedFn& F) {
  if (!F.is_total()) throw invalid_input("diagonal section needs a total function");
  DiagonalReport rep{diagonal_of(F), false, false, ""};
  const SetPtr& A = F.domain(0);
  rep.idempotent = is_identity_diagonal(rep.delta, A);
  rep.range_idempotent = true;
  for (std::int64_t t = 0; t < F.domain_size() && rep.range_idempotent; ++t) {
    const Element& v = F.element_at(t);
    auto pos = A->index_of(v);
    if (!pos) {
      rep.range_idempotent = false;
      rep.note = "value " + v.str() + " lies outside the argument universe";
    } else if (rep.delta.element_at(*pos) != v) {
      rep.range_idempotent = false;
    }
  }
  return rep;
}

DiagonalLemmaReport verify_diagonal_lemma(const TabulatedFn& R, const TabulatedFn& f,
                                          const QuasiInverse& r, const TabulatedFn* fprime) {
  if (!R.is_total()) throw invalid_input("the inner function must be total");
  TabulatedFn dR = diagonal_of(R);
  std::string gap = range_gap(R, dR);
  if (!gap.empty())
    throw hypothesis_error("hypothesis fails: ran(R) != ran(delta_R); value " + gap +
                           " is attained off the diagonal only");
  if (!TabulatedFn::eq_pointwise(r.of(), dR))
    throw invalid_input("r must be a quasi-inverse of the diagonal of R");

  const SetPtr& A = R.domain(0);
  TabulatedFn F = compose(f, R);
  TabulatedFn rg = r.g();
  TabulatedFn rR = compose(rg, R);
  TabulatedFn dF = diagonal_of(F);

  DiagonalLemmaReport rep{dR, rR, dF, false, false, false, false, false,
                          false, false, false, false, false, ""};
  rep.a = TabulatedFn::eq_pointwise(F, compose(dF, rR));

  TabulatedFn fp = fprime ? *fprime : compose(dF, rg);
  TabulatedFn F2 = compose(fp, R);
  rep.b_applicable = TabulatedFn::eq_pointwise(dF, diagonal_of(F2));
  rep.b = rep.b_applicable ? TabulatedFn::eq_pointwise(F, F2) : true;
  if (!rep.b_applicable) rep.note = "the supplied f' has a different diagonal";

  rep.f_idempotent = is_identity_diagonal(dF, A);
  rep.c = rep.f_idempotent ? TabulatedFn::eq_pointwise(F, rR) : true;

  rep.r_R_idempotent = is_identity_diagonal(diagonal_of(rR), A);
  rep.d = rep.r_R_idempotent ? true : !rep.f_idempotent;

  rep.e_range_idempotent = TabulatedFn::eq_pointwise(compose(rg, compose(dR, rR)), rR);
  rep.delta_R_injective = dR.range().size() == static_cast<std::size_t>(A->size());
  rep.e_idempotence_iff = rep.r_R_idempotent == rep.delta_R_injective;
  return rep;
}

DiagonalCharacterization diagonal_characterize(const PowerInstance& p, Side side,
                                               std::optional<Element> base, bool tie_last) {
  TripleInstance t = p.derive();
  SolutionClass sc = solution_partition(t);

  std::vector<Element> bases;
  if (base)
    bases.push_back(*base);
  else
    for (int i = 0; i < p.A->size(); ++i) bases.push_back(p.A->at(i));

  DiagonalCharacterization out;
  out.side = side;
  out.block_count = sc.block_count;
  std::string range_witness, diag_witness;
  bool have_candidate = false;

  for (const Element& a : bases) {
    if (!range_condition(t, side, a)) {
      if (range_witness.empty()) {
        const TabulatedFn& full = side == Side::K ? t.K : t.J;
        TabulatedFn sec = side == Side::K ? section(t.K, 1, a) : section(t.J, 0, a);
        range_witness = range_condition_witness(full, sec);
      }
      continue;
    }
    Reduction red = build_reduction(t, side, a, tie_last);
    TabulatedFn Rn = power_form(p, red.map);
    TabulatedFn dR = diagonal_of(Rn);
    std::string gap = range_gap(Rn, dR);
    if (!gap.empty()) {
      if (diag_witness.empty()) diag_witness = gap;
      continue;
    }
    QuasiInverse r = QuasiInverse::canonical(dR, tie_last);
    TabulatedFn rR3 = compose(r.g(), red.map);
    MemberCheck mc = is_member(t, rR3);
    bool kernel_eq = kernel_partition(rR3) == sc.partition;
    if (mc.ok != kernel_eq)
      throw internal_error("membership of the composed map disagrees with the class-equality criterion");
    if (mc.ok || !have_candidate) {
      have_candidate = true;
      out.reduction = red;
      out.r_R = power_form(p, rR3);
      out.r_R_diagonal = diagonal_section(*out.r_R);
      out.member = mc.ok;
      out.member_witness = mc.witness;
    }
    if (mc.ok) {
      out.status = "characterized";
      return out;
    }
  }

  if (have_candidate) {
    out.status = "not-member";
  } else if (!diag_witness.empty()) {
    out.status = "hypothesis-failed:diagonal-range";
    out.witness = diag_witness;
  } else {
    out.status = "hypothesis-failed:range-condition";
    out.witness = range_witness;
  }
  return out;
}

EquivalenceReport diagonal_equivalences(const PowerInstance& p, const Element& k_base,
                                        const Element& j_base, bool tie_last) {
  TripleInstance t = p.derive();
  SolutionClass sc = solution_partition(t);

  Reduction rk = build_reduction(t, Side::K, k_base, tie_last);
  Reduction sj = build_reduction(t, Side::J, j_base, tie_last);
  TabulatedFn Rn = power_form(p, rk.map);
  TabulatedFn Sn = power_form(p, sj.map);
  TabulatedFn dR = diagonal_of(Rn);
  TabulatedFn dS = diagonal_of(Sn);
  std::string gap = range_gap(Rn, dR);
  if (!gap.empty())
    throw hypothesis_error("hypothesis fails: ran(R) != ran(delta_R); value " + gap +
                           " is attained off the diagonal only");
  gap = range_gap(Sn, dS);
  if (!gap.empty())
    throw hypothesis_error("hypothesis fails: ran(S) != ran(delta_S); value " + gap +
                           " is attained off the diagonal only");

  QuasiInverse r = QuasiInverse::canonical(dR, tie_last);
  QuasiInverse s = QuasiInverse::canonical(dS, tie_last);
  TabulatedFn rR3 = compose(r.g(), rk.map);
  TabulatedFn sS3 = compose(s.g(), sj.map);

  EquivalenceReport rep{false, false, false, false, false, false,
                        false, false, false, false, false,
                        power_form(p, rR3), power_form(p, sS3)};
  rep.maps_equal = TabulatedFn::eq_pointwise(rep.r_R, rep.s_S);
  rep.r_R_idempotent = is_identity_diagonal(diagonal_of(rep.r_R), p.A);
  rep.s_S_idempotent = is_identity_diagonal(diagonal_of(rep.s_S), p.A);
  rep.r_R_member = is_member(t, rR3).ok;
  rep.s_S_member = is_member(t, sS3).ok;

  TabulatedFn dB = diagonal_of(power_form(p, sc.generator));
  rep.delta_B_injective = dB.range().size() == static_cast<std::size_t>(p.A->size());

  rep.i = rep.delta_B_injective;
  rep.ii = rep.maps_equal && rep.r_R_idempotent;
  rep.iii = rep.r_R_idempotent && rep.r_R_member;
  rep.iv = rep.s_S_idempotent && rep.s_S_member;
  rep.verdict = rep.i == rep.ii && rep.ii == rep.iii && rep.iii == rep.iv;
  return rep;
}

ProjectionLemmaReport verify_projection_lemma(const TabulatedFn& R, const TabulatedFn& f,
                                              const TabulatedFn& Pi, const QuasiInverse& r,
                                              const TabulatedFn* fprime) {
  if (R.arity() != 1 || Pi.arity() != 1)
    throw invalid_input("the projection form works on unary tables");
  if (!R.is_total() || !Pi.is_total())
    throw invalid_input("R and the projection must be total");
  if (!Pi.domain(0)->same_elements(*R.domain(0)) ||
      !Pi.codomain()->same_elements(*R.domain(0)))
    throw invalid_input("the projection must map the universe of R into itself");

  TabulatedFn RPi = compose(R, Pi);
  const std::vector<int>& fr = R.range();
  const std::vector<int>& pr = RPi.range();
  if (fr.size() != pr.size()) {
    for (int v : fr)
      if (std::find(pr.begin(), pr.end(), v) == pr.end())
        throw hypothesis_error("hypothesis fails: ran(R) != ran(R after the projection); value " +
                               R.codomain()->at(v).str() + " is missed by the projection");
  }
  if (!TabulatedFn::eq_pointwise(r.of(), RPi))
    throw invalid_input("r must be a quasi-inverse of R composed with the projection");

  TabulatedFn F = compose(f, R);
  TabulatedFn g = r.g();
  TabulatedFn rR = compose(g, R);
  TabulatedFn Tr = compose(Pi, rR);

  ProjectionLemmaReport rep{false, false, false, false, false, false,
                            false, false, false, false, Tr, ""};
  rep.a = TabulatedFn::eq_pointwise(F, compose(F, Tr));

  TabulatedFn FPi = compose(F, Pi);
  TabulatedFn fp = fprime ? *fprime : compose(FPi, g);
  TabulatedFn F2 = compose(fp, R);
  rep.b_applicable = TabulatedFn::eq_pointwise(FPi, compose(F2, Pi));
  rep.b = rep.b_applicable ? TabulatedFn::eq_pointwise(F, F2) : true;
  if (!rep.b_applicable) rep.note = "the supplied f' changes the projected composite";

  rep.c_applicable = TabulatedFn::eq_pointwise(FPi, Pi);
  rep.c = rep.c_applicable ? TabulatedFn::eq_pointwise(F, Tr) : true;

  TabulatedFn TrPi = compose(Tr, Pi);
  rep.d_applicable = !TabulatedFn::eq_pointwise(TrPi, Pi);
  rep.d = rep.d_applicable ? !TabulatedFn::eq_pointwise(FPi, Pi) : true;

  rep.pi_idempotent = TabulatedFn::eq_pointwise(compose(Pi, Pi), Pi);
  if (rep.pi_idempotent) {
    rep.e_sandwich = TabulatedFn::eq_pointwise(compose(Tr, compose(Pi, Tr)), Tr);
    bool fixes = TabulatedFn::eq_pointwise(TrPi, Pi);
    bool kernels = kernel_partition(TrPi) == kernel_partition(Pi);
    rep.e_kernel_iff = fixes == kernels;
  } else {
    rep.e_sandwich = true;
    rep.e_kernel_iff = true;
  }
  return rep;
}

} // namespace feq
