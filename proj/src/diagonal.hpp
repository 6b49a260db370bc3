#pragma once

#include "instance.hpp"
#include "quasi_inverse.hpp"
#include "reductions.hpp"

#include <optional>
#include <string>

namespace feq {

// δ_F(x) = F(x,…,x); every argument set of F must be the same universe
TabulatedFn diagonal_of(const TabulatedFn& F);

// reshape a table on X×Y×Z (X = Z = A, Y = A^{n-2}) to arity n over A; the
// row-major flat layouts coincide, so values carry over unchanged
TabulatedFn power_form(const PowerInstance& p, const TabulatedFn& f3);

struct DiagonalReport {
  TabulatedFn delta;
  bool idempotent = false;
  bool range_idempotent = false;
  std::string note;
};

// δ_F plus the idempotence flags; range-idempotence needs ran(F) inside the
// argument universe and is reported false with a note otherwise
DiagonalReport diagonal_section(const TabulatedFn& F);

struct DiagonalLemmaReport {
  TabulatedFn delta_R;
  TabulatedFn r_R;
  TabulatedFn delta_F;
  bool a = false;               // F = δ_F∘r∘R
  bool b = false;               // δ_F = δ_{F'} ⇒ F = F'
  bool b_applicable = false;    // the diagonals actually coincide
  bool c = false;               // F idempotent ⇒ F = r∘R
  bool d = false;               // r∘R not idempotent ⇒ F not idempotent
  bool e_range_idempotent = false; // r∘δ_R∘r∘R = r∘R
  bool e_idempotence_iff = false;  // r∘R idempotent ⇔ δ_R one-to-one
  bool f_idempotent = false;
  bool r_R_idempotent = false;
  bool delta_R_injective = false;
  std::string note;
  bool all() const { return a && b && c && d && e_range_idempotent && e_idempotence_iff; }
};

// checks the five assertions for F = f∘R; R total with every argument in the
// same universe, r a quasi-inverse of δ_R, f defined on ran(R); an optional
// f' feeds the uniqueness assertion, else f' = δ_F∘r is used
DiagonalLemmaReport verify_diagonal_lemma(const TabulatedFn& R, const TabulatedFn& f,
                                          const QuasiInverse& r,
                                          const TabulatedFn* fprime = nullptr);

struct DiagonalCharacterization {
  std::string status;  // characterized | not-member |
                       // hypothesis-failed:range-condition |
                       // hypothesis-failed:diagonal-range
  std::string witness; // value behind a failed hypothesis
  std::optional<Reduction> reduction;
  std::optional<TabulatedFn> r_R;       // arity n over A
  std::optional<DiagonalReport> r_R_diagonal;
  bool member = false;
  std::string member_witness;
  std::int64_t block_count = 0;
  Side side = Side::K;
};

// builds R at the base (every base of A in order when none is given), takes
// the canonical quasi-inverse r of δ_R, and decides whether r∘R generates the
// whole solution class; member ⇔ the class equals {f∘r∘R} is asserted via
// the kernel criterion
DiagonalCharacterization diagonal_characterize(const PowerInstance& p, Side side,
                                               std::optional<Element> base = std::nullopt,
                                               bool tie_last = false);

struct EquivalenceReport {
  bool delta_B_injective = false; // some member has a one-to-one diagonal
  bool maps_equal = false;        // r∘R = s∘S pointwise
  bool r_R_idempotent = false;
  bool s_S_idempotent = false;
  bool r_R_member = false;
  bool s_S_member = false;
  bool i = false, ii = false, iii = false, iv = false;
  bool verdict = false; // all four assertions agree
  TabulatedFn r_R, s_S; // arity n over A
};

// the four equivalent assertions, built from the K-side reduction at k_base
// and the J-side reduction at j_base; throws when a hypothesis fails
EquivalenceReport diagonal_equivalences(const PowerInstance& p, const Element& k_base,
                                        const Element& j_base, bool tie_last = false);

struct ProjectionLemmaReport {
  bool a = false;            // F = F∘Π∘r∘R
  bool b = false;            // F∘Π = F'∘Π ⇒ F = F'
  bool b_applicable = false;
  bool c = false;            // F∘Π = Π ⇒ F = Π∘r∘R
  bool c_applicable = false;
  bool d = false;            // T_r∘Π ≠ Π ⇒ F∘Π ≠ Π
  bool d_applicable = false;
  bool e_sandwich = false;   // Π idempotent ⇒ T_r∘Π∘T_r = T_r
  bool e_kernel_iff = false; // … and T_r∘Π = Π ⇔ ker(T_r∘Π) = ker(Π)
  bool pi_idempotent = false;
  TabulatedFn T_r;
  std::string note;
  bool all() const { return a && b && c && d && e_sandwich && e_kernel_iff; }
};

// the kernel-based generalization over a plain universe: R: X→U, Π: X→X,
// r a quasi-inverse of R∘Π, F = f∘R; vacuous implications count as true
ProjectionLemmaReport verify_projection_lemma(const TabulatedFn& R, const TabulatedFn& f,
                                              const TabulatedFn& Pi, const QuasiInverse& r,
                                              const TabulatedFn* fprime = nullptr);

} // namespace feq
