#pragma once

#include <functional>

#include "relsmooth/objectives.hpp"
#include "relsmooth/oracles.hpp"
#include "relsmooth/trace.hpp"

namespace relsmooth {

/// A solver aborted mid-run (subproblem failure, persistent singularity).
/// Carries the iterates recorded so far.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& msg, IterateTrace partial_trace)
      : Error(msg), partial(std::move(partial_trace)) {}
  IterateTrace partial;
};

/// Fixed-step scheme: x_{i+1} = argmin_x { <grad f(x_i), x> + L D_h(x, x_i) },
/// realized as one reference subproblem with c = (1/L) grad f(x_i) - grad h(x_i).
/// The objective value decreases monotonically.
IterateTrace primal_gradient(const RelSmoothPair& pair, const Vector& x0,
                             const SolverConfig& cfg);

/// Weighted model-accumulation scheme started at the h-center of Q (with h
/// shifted so h(x0) = 0), weights a_{k+1} = (1/(L-mu)) (L/(L-mu))^k.  The
/// accumulated model collapses to a single linear coefficient vector divided
/// by the h-coefficient 1 + mu A_k, so memory is O(n) independent of k.
/// Requires L > mu strictly.  The gap column tracks the running best f.
IterateTrace dual_averaging(const RelSmoothPair& pair, const SolverConfig& cfg);

/// Nonsmooth additive term P folded into the subproblem.  The solver calls
/// `subproblem(c, p_scale)` with p_scale = 1/L, which must return
/// argmin_{x in Q} <c,x> + p_scale * P(x) + h(x); with the model divided by
/// L this keeps the reference coefficient at exactly 1.  No subgradient of
/// P is ever computed.
struct CompositePiece {
  std::function<double(const Vector&)> value;
  std::function<SubproblemSolve(const Vector& c, double p_scale)> subproblem;
};

/// Composite variant of primal_gradient; the trace f column records f + P.
/// With P identically zero the iterates are bit-identical to primal_gradient.
IterateTrace composite_primal_gradient(const RelSmoothPair& pair,
                                       const CompositePiece& piece,
                                       const Vector& x0, const SolverConfig& cfg);

/// Vertex-direction baseline for the log-det design objective: moves toward
/// the column j maximizing kappa_j = h_j^T M^{-1} h_j with the exact
/// line-search step lambda = (kappa - m) / (m (kappa - 1)) from the matrix
/// determinant lemma.  M^{-1} and kappa are maintained by rank-1 updates
/// with a full refactorization every 50 steps.  Stops early once
/// max_j kappa_j - m <= stationarity_target (a duality-style gap estimate
/// that upper-bounds f(x) - f*); the last measured value is stored in the
/// trace as fw_stationarity.
IterateTrace frank_wolfe_dopt(
    const DOptimalDesign& objective, const Vector& x0, const SolverConfig& cfg,
    double stationarity_target = std::numeric_limits<double>::quiet_NaN());

/// Closed-form step weights of the dual averaging scheme, exposed so the
/// running sums can be validated against the closed forms.
struct DualAveragingWeights {
  double L;
  double mu;

  /// a_{k+1} for k >= 0 (the weight added at iteration k).
  double weight(int k) const;

  /// A_k = sum_{i=1..k} a_i; equals k/L when mu = 0 and
  /// ((1 + mu/(L-mu))^k - 1) / mu otherwise.
  double weight_sum(int k) const;
};

}  // namespace relsmooth
