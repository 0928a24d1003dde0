#pragma once

#include "maxlf/field.hpp"
#include "maxlf/static_solver.hpp"

namespace maxlf {

enum class Domain { exterior_ball, whole_space };

struct HarmonicOpts {
  int gl_order = 64;
  double rhs_tail_tol = 1e-12;  // rhs must effectively vanish past the last break
};

// Radiating solution of (M + i omega)(E, H) = (F, G) at the rank pair (1, 2);
// exterior case imposes a vanishing tangential trace of E at r = a, the
// whole-space case regularity at the origin. Outgoing branch at infinity.
template <class R>
FieldPair<R> solve_timeharmonic(const FieldPair<R>& rhs, const Cx<R>& omega, Domain domain,
                                const HarmonicOpts& opt = {});

// Residual (M + i omega )(E,H) - (F,G) evaluated on a sample grid, relative
// to the solution scale; development/verification helper.
template <class R>
R harmonic_residual(const FieldPair<R>& sol, const FieldPair<R>& rhs, const Cx<R>& omega,
                    const std::vector<R>& rs);

// -------------------------------------------------- free-space Taylor split

// Per-mode realization of the low-frequency splitting of the whole-space
// solution operator:
//   L_omega(F,G) = sum_j (-i omega)^j Phi_j(F,G)
//                  + (-i omega)^{-1} [trivial part + Psi-series(div F, rot G)]
// computed through the scalar kernel expansion; coefficients up to order
// J-1 plus an exact evaluator for the remainder test.
template <class R> struct FreespaceTaylor {
  int J = 1;
  // coefficient of (-i omega)^{-1} (acts on the rot-free/div-free content)
  FieldPair<R> singular;
  // coefficients of (-i omega)^j, j = 0..J-1
  std::vector<FieldPair<R>> orders;
  bool psi_trivial = false;  // true when div F = 0 and rot G = 0
};

template <class R>
FreespaceTaylor<R> mode_taylor_freespace(const FieldPair<R>& rhs, int J,
                                         const HarmonicOpts& opt = {});

// Evaluate the truncated expansion at a frequency.
template <class R>
FieldPair<R> freespace_expansion_value(const FreespaceTaylor<R>& t, const Cx<R>& omega);

}  // namespace maxlf
